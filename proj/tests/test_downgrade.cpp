#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

#include <ihpoly/downgrade.hpp>

using namespace ihpoly;
using testutil::v;
using testutil::vq;

namespace {

/// Collect the nontrivial coefficient at a point across all divisors of a fan.
std::vector<Polyhedron> coefficients_at(const DivisorialFan& fan, const std::string& y)
{
    std::vector<Polyhedron> out;
    std::set<std::string> seen;
    for (const auto& d : fan.divisors()) {
        auto it = d.nontrivial_coefficients().find(y);
        if (it == d.nontrivial_coefficients().end()) continue;
        if (seen.insert(it->second.key()).second) out.push_back(it->second);
    }
    return out;
}

}  // namespace

TEST_CASE("downgrade of the affine threefold example")
{
    PolyDivisor d = testutil::aff3fold_divisor();
    Curve p1 = testutil::p1_curve();
    DivisorialFan down = downgrade(d, p1, v({1, 1}));
    CHECK(down.rank() == 1);
    CHECK(down.support() == std::set<std::string>{"inf"});

    // the three listed coefficients at infinity: [-1,1], [1,oo), (-oo,-1]
    // (up to the orientation of the chosen complement)
    auto coeffs = coefficients_at(down, "inf");
    int segments = 0, right = 0, left = 0, points = 0;
    for (const auto& c : coeffs) {
        if (c.dim() == 0) {
            ++points;  // faces synthesized by intersection closure
            continue;
        }
        if (c.rays().empty()) {
            ++segments;
            CHECK(c.vertices() == std::vector<Vec>{v({-1}), v({1})});
        } else if (c.rays()[0] == v({1})) {
            ++right;
            CHECK((c.vertices()[0] == v({1}) || c.vertices()[0] == v({-1})));
        } else {
            ++left;
        }
    }
    CHECK(segments == 1);
    CHECK(right == 1);
    CHECK(left == 1);

    SECTION("all charts of the pentagon are affine")
    {
        for (const auto& dd : down.divisors()) CHECK(!dd.complete_locus());
    }
    SECTION("output is validated and complete")
    {
        auto [closed, report] = validate_and_close(down);
        CHECK(report.ok());
        CHECK(closed.is_complete_variety());
        CHECK(down.fiber_fan("inf").ray_count() == 5);
    }
}

TEST_CASE("downgrade marks elliptic charts by facets meeting the degree")
{
    // d = (1,0)+sigma at 0 over P^1: the cone over P^2 with one elliptic chart
    Cone sigma = Cone::from_generators(2, {v({1, 0}), v({0, 1})});
    PolyDivisor d = PolyDivisor::make(sigma, {{"0", testutil::shifted(sigma, v({1, 0}))}}, true);
    Curve p1 = testutil::p1_curve();
    DivisorialFan down = downgrade(d, p1, v({1, 1}));
    int complete = 0;
    for (const auto& dd : down.divisors())
        if (dd.complete_locus()) ++complete;
    CHECK(complete == 1);
    auto [closed, report] = validate_and_close(down);
    CHECK(report.ok());
    CHECK(closed.is_complete_variety());
}

TEST_CASE("downgrade of a surface divisor gives the curve")
{
    Cone plus = Cone::from_generators(1, {v({1})});
    PolyDivisor d = PolyDivisor::make(plus, {{"0", testutil::shifted(plus, v({1}))}}, true);
    DivisorialFan down = downgrade(d, testutil::p1_curve(), v({1}));
    CHECK(down.rank() == 0);
}

TEST_CASE("downgrade rejects bad directions")
{
    PolyDivisor d = testutil::aff3fold_divisor();
    Curve p1 = testutil::p1_curve();
    CHECK_THROWS_AS(downgrade(d, p1, v({1, 0})), EngineError);   // on a facet
    CHECK_THROWS_AS(downgrade(d, p1, v({2, 2})), EngineError);   // not primitive
    CHECK_THROWS_AS(downgrade(d, p1, v({-1, -1})), EngineError); // outside
}

TEST_CASE("downgrade combinatorics do not depend on the complement choice")
{
    PolyDivisor d = testutil::aff3fold_divisor();
    Curve p1 = testutil::p1_curve();
    Vec u = v({1, 1});
    auto basis1 = lattice_complement(u, 2);
    std::vector<Vec> basis2 = {add(basis1[0], u)};  // another lattice complement
    auto cells1 = lower_hull_cells(d.coefficient("inf"), u, basis1);
    auto cells2 = lower_hull_cells(d.coefficient("inf"), u, basis2);
    CHECK(cells1.size() == cells2.size());
    // cell dimensions and boundedness patterns agree
    auto signature = [](const std::vector<LowerHullCell>& cells) {
        std::multiset<std::pair<int, bool>> sig;
        for (const auto& c : cells) sig.insert({c.cell.dim(), c.cell.rays().empty()});
        return sig;
    };
    CHECK(signature(cells1) == signature(cells2));
}

TEST_CASE("pointed reduction")
{
    Curve p1 = testutil::p1_curve();
    SECTION("conterex1 is not decomposable before refining")
    {
        CHECK_THROWS_AS(pointed_reduction(testutil::conterex1_divisor(), p1), EngineError);
    }
    SECTION("after refining the lattice it splits with corank 1")
    {
        auto [refined, k] = refine_lattice(testutil::conterex1_divisor(), p1);
        CHECK(k == 2);
        PointedReduction pr = pointed_reduction(refined, p1);
        CHECK(pr.corank == 1);
        CHECK(pr.pointed.ambient() == 1);
        CHECK(pr.pointed.tail().dim() == 1);
        CHECK(pr.pointed.support().size() == 1);
    }
    SECTION("full-dimensional tails are already pointed")
    {
        PolyDivisor d = testutil::aff3fold_divisor();
        auto [refined, k] = refine_lattice(d, p1);
        CHECK(k == 2);
        PointedReduction pr = pointed_reduction(refined, p1);
        CHECK(pr.corank == 0);
        CHECK(pr.pointed == refined);
    }
    SECTION("generic policy forces untranslated coefficients")
    {
        Curve g1 = testutil::genus_curve(1);
        Cone sigma = Cone::from_generators(2, {v({1, 0})});
        // coefficients inside the span of the tail: decomposable with zero shifts
        PolyDivisor d = PolyDivisor::make(sigma,
                                          {{"0", testutil::shifted(sigma, v({1, 0}))}},
                                          true);
        PointedReduction pr = pointed_reduction(d, g1);
        CHECK(pr.corank == 1);
        CHECK(pr.pointed.ambient() == 1);
    }
}

TEST_CASE("lattice refinement")
{
    Curve p1 = testutil::p1_curve();
    SECTION("integral data is untouched")
    {
        Cone plus = Cone::from_generators(1, {v({1})});
        PolyDivisor d = PolyDivisor::make(plus, {{"0", testutil::shifted(plus, v({1}))}}, true);
        auto [refined, k] = refine_lattice(d, p1);
        CHECK(k == 1);
        CHECK(refined == d);
    }
    SECTION("half-integral data scales by two")
    {
        auto [refined, k] = refine_lattice(testutil::aff3fold_divisor(), p1);
        CHECK(k == 2);
        CHECK(refined.coefficient("0").vertices() == std::vector<Vec>{v({1, 1})});
    }
    SECTION("fan-level refinement of the quadric")
    {
        auto [closed, report] = validate_and_close(testutil::quadric_fan());
        REQUIRE(report.ok());
        auto [refined, k] = refine_lattice(closed);
        CHECK(k == 2);
        // every hyperface divisor of the refined fan is decomposable
        for (const auto& e : hf_poset(refined).elements) {
            CHECK_NOTHROW(pointed_reduction(hyperface_divisor(e), refined.curve()));
        }
    }
}
