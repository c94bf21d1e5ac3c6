#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace ihpoly;
using testutil::v;
using testutil::vq;

TEST_CASE("divisor degrees")
{
    SECTION("conterex1 degree is (1,0)+sigma")
    {
        PolyDivisor d = testutil::conterex1_divisor();
        auto deg = d.degree();
        REQUIRE(deg.has_value());
        CHECK(deg->vertices() == std::vector<Vec>{v({1, 0})});
        CHECK(deg->rays() == std::vector<Vec>{v({1, 0})});
    }
    SECTION("affine locus has empty degree")
    {
        Cone plus = Cone::from_generators(1, {v({1})});
        PolyDivisor d = PolyDivisor::make(plus, {}, false, {"inf"});
        CHECK(!d.degree().has_value());
    }
    SECTION("all-trivial complete divisor has degree equal to the tail and is improper")
    {
        Cone plus = Cone::from_generators(1, {v({1})});
        PolyDivisor d = PolyDivisor::make(plus, {}, true);
        auto deg = d.degree();
        REQUIRE(deg.has_value());
        CHECK(*deg == cone_as_polyhedron(plus));
        CHECK(!is_proper(d, testutil::p1_curve()).ok());
    }
}

TEST_CASE("divisor evaluation")
{
    PolyDivisor d = testutil::conterex1_divisor();
    SECTION("m = (1,0)")
    {
        QDivisor q = d.evaluate(v({1, 0}));
        QDivisor expect;
        expect.add("0", Rat(1));
        CHECK(q == expect);
    }
    SECTION("m = 0 gives the zero divisor")
    {
        CHECK(d.evaluate(v({0, 0})).is_zero());
    }
    SECTION("m = (0,2)")
    {
        QDivisor q = d.evaluate(v({0, 2}));
        QDivisor expect;
        expect.add("0", Rat(1));
        expect.add("inf", Rat(-1));
        CHECK(q == expect);
    }
    SECTION("m outside the dual tail errors")
    {
        CHECK_THROWS_AS(d.evaluate(v({-1, 0})), GeometryError);
    }
}

TEST_CASE("principality policies")
{
    SECTION("genus zero")
    {
        Curve c = testutil::p1_curve();
        QDivisor d;
        d.add("0", Rat(1));
        d.add("inf", Rat(-1));
        CHECK(is_principal(d, c) == Tri::Yes);
        CHECK(is_principal(QDivisor::zero(), c) == Tri::Yes);
        QDivisor half;
        half.add("0", Rat(1, 2));
        half.add("inf", Rat(-1, 2));
        CHECK(is_principal(half, c) == Tri::No);
        CHECK(is_principal_multiple(half, c) == Tri::Yes);
    }
    SECTION("generic positive genus")
    {
        Curve c = testutil::genus_curve(1);
        QDivisor d;
        d.add("0", Rat(1));
        d.add("1", Rat(-1));
        CHECK(is_principal(d, c) == Tri::No);
        CHECK(is_principal(QDivisor::zero(), c) == Tri::Yes);
    }
    SECTION("table policy")
    {
        Curve c;
        c.genus = 1;
        c.points = {"p", "q", "r"};
        c.policy = Principality::Table;
        QDivisor gen;
        gen.add("p", Rat(2));
        gen.add("q", Rat(-2));
        c.table = {gen};
        QDivisor twice;
        twice.add("p", Rat(4));
        twice.add("q", Rat(-4));
        CHECK(is_principal(twice, c) == Tri::Yes);
        QDivisor odd;
        odd.add("p", Rat(1));
        odd.add("q", Rat(-1));
        CHECK(is_principal(odd, c) == Tri::Unknown);
        CHECK(is_principal_multiple(odd, c) == Tri::Yes);
        QDivisor other;
        other.add("p", Rat(1));
        other.add("r", Rat(-1));
        CHECK(is_principal_multiple(other, c) == Tri::Unknown);
    }
}

TEST_CASE("properness")
{
    Curve p1 = testutil::p1_curve();
    CHECK(is_proper(testutil::conterex1_divisor(), p1).ok());
    CHECK(is_proper(testutil::aff3fold_divisor(), p1).ok());
    SECTION("generic policy can reject translated divisors")
    {
        Curve g1 = testutil::genus_curve(1);
        Cone sigma = Cone::from_generators(2, {v({1, 0})});
        PolyDivisor d = PolyDivisor::make(sigma,
                                          {{"0", testutil::shifted(sigma, v({1, 1}))},
                                           {"inf", testutil::shifted(sigma, v({0, -1}))}},
                                          true);
        CHECK(is_proper(d, g1).verdict == Tri::No);
    }
}

TEST_CASE("fan validation")
{
    SECTION("surface example is valid")
    {
        auto [closed, report] = validate_and_close(testutil::surface_p2_fan());
        CHECK(report.ok());
        CHECK(closed.divisors().size() >= 3);
    }
    SECTION("quadric example is valid")
    {
        auto [closed, report] = validate_and_close(testutil::quadric_fan());
        CHECK(report.ok());
    }
    SECTION("overlapping coefficients violate the face axiom")
    {
        Cone plus = Cone::from_generators(1, {v({1})});
        Cone minus = Cone::from_generators(1, {v({-1})});
        PolyDivisor a = PolyDivisor::make(plus, {{"0", testutil::shifted(plus, v({-2}))}},
                                          false, {"inf"});
        PolyDivisor b = PolyDivisor::make(minus, {{"0", testutil::shifted(minus, v({2}))}},
                                          false, {"inf"});
        DivisorialFan bad(testutil::p1_curve(), 1, {a, b});
        auto [closed, report] = validate_and_close(bad);
        CHECK(!report.ok());
    }
}

TEST_CASE("support and tail fans")
{
    SECTION("quadric")
    {
        DivisorialFan q = testutil::quadric_fan();
        CHECK(q.support() == std::set<std::string>{"0", "1", "inf"});
        CHECK(q.tail_fan().ray_count() == 4);
        CHECK(q.tail_fan().is_complete());
    }
    SECTION("contraction-free surface")
    {
        DivisorialFan cf = testutil::contraction_free_surface();
        CHECK(cf.support() == std::set<std::string>{"0"});
        CHECK(cf.tail_fan().ray_count() == 2);
    }
    SECTION("surface example")
    {
        DivisorialFan s = testutil::surface_p2_fan();
        CHECK(s.support() == std::set<std::string>{"0", "inf"});
        CHECK(s.tail_fan().is_complete());
        CHECK(s.tail_fan().ray_count() == 2);
    }
}

TEST_CASE("fiber fans")
{
    SECTION("quadric ray counts match the worked example")
    {
        DivisorialFan q = testutil::quadric_fan();
        CHECK(q.fiber_fan("0").ray_count() == 7);
        CHECK(q.fiber_fan("1").ray_count() == 7);
        CHECK(q.fiber_fan("inf").ray_count() == 6);
        CHECK(q.generic_fiber_fan().ray_count() == 6);
        CHECK(q.tail_fan().ray_count() == 4);
    }
    SECTION("surface example ray counts")
    {
        DivisorialFan s = testutil::surface_p2_fan();
        CHECK(s.fiber_fan("0").ray_count() == 5);
        CHECK(s.fiber_fan("inf").ray_count() == 4);
    }
    SECTION("fiber fans never have fewer rays than the tail fan")
    {
        for (const DivisorialFan& f :
             {testutil::quadric_fan(), testutil::surface_p2_fan(),
              testutil::contraction_free_surface()}) {
            int tail_rays = f.tail_fan().ray_count();
            for (const auto& p : f.special_points())
                CHECK(f.fiber_fan(p).ray_count() >= tail_rays);
            CHECK(f.generic_fiber_fan().ray_count() >= tail_rays);
        }
    }
    SECTION("completeness of all fibers == complete variety, and covers agree")
    {
        for (const DivisorialFan& f :
             {testutil::quadric_fan(), testutil::surface_p2_fan(),
              testutil::contraction_free_surface()}) {
            CHECK(f.is_complete_variety());
            for (const auto& p : f.special_points())
                CHECK(f.coefficients_cover(p) == f.fiber_fan(p).is_complete());
        }
        Cone plus = Cone::from_generators(1, {v({1})});
        PolyDivisor lonely = PolyDivisor::make(plus, {{"0", testutil::shifted(plus, v({1}))}},
                                               true);
        DivisorialFan half(testutil::p1_curve(), 1, {lonely});
        CHECK(!half.is_complete_variety());
        CHECK(!half.coefficients_cover("0"));
    }
}

TEST_CASE("hyperface posets")
{
    SECTION("quadric has four codimension-two orbits and four fixed points")
    {
        auto [closed, report] = validate_and_close(testutil::quadric_fan());
        REQUIRE(report.ok());
        HFPoset hf = hf_poset(closed);
        int dim0 = 0, dim1 = 0;
        for (const auto& e : hf.elements) {
            if (e.orbit_dim == 0) ++dim0;
            if (e.orbit_dim == 1) ++dim1;
        }
        CHECK(dim0 == 4);
        CHECK(dim1 == 4);
        CHECK(hf.size() == 8);
    }
    SECTION("surface example has two elements")
    {
        auto [closed, report] = validate_and_close(testutil::surface_p2_fan());
        REQUIRE(report.ok());
        HFPoset hf = hf_poset(closed);
        CHECK(hf.size() == 2);
        for (const auto& e : hf.elements) CHECK(e.orbit_dim == 0);
    }
    SECTION("contraction-free fans have empty posets")
    {
        auto [closed, report] = validate_and_close(testutil::contraction_free_surface());
        REQUIRE(report.ok());
        CHECK(hf_poset(closed).size() == 0);
    }
    SECTION("a fixed-point element keeps the full coefficient data")
    {
        auto [closed, report] = validate_and_close(testutil::quadric_fan());
        REQUIRE(report.ok());
        HFPoset hf = hf_poset(closed);
        bool found = false;
        Cone s1 = Cone::from_generators(2, {v({1, 1}), v({1, -1})});
        for (const auto& e : hf.elements) {
            if (e.orbit_dim != 0 || e.tail_face != s1) continue;
            found = true;
            PolyDivisor d = hyperface_divisor(e);
            CHECK(d.coefficient("1") ==
                  testutil::hull_plus(s1, {v({0, 0}), v({0, -1})}));
            CHECK(d.coefficient("inf") == testutil::shifted(s1, vq({"1/2", "1/2"})));
            CHECK(d.coefficient("0") == cone_as_polyhedron(s1));
        }
        CHECK(found);
    }
    SECTION("grading and hyperface divisors")
    {
        auto [closed, report] = validate_and_close(testutil::quadric_fan());
        REQUIRE(report.ok());
        HFPoset hf = hf_poset(closed);
        for (int i = 0; i < hf.size(); ++i) {
            const auto& e = hf.elements[static_cast<std::size_t>(i)];
            CHECK(e.orbit_dim == closed.rank() - e.tail_face.dim());
            PolyDivisor d = hyperface_divisor(e);
            CHECK(is_proper(d, closed.curve()).ok());
            auto deg = d.degree();
            REQUIRE(deg.has_value());
            CHECK(deg->intersect(cone_as_polyhedron(e.tail_face)).has_value());
            for (int j = 0; j < hf.size(); ++j) {
                if (i == j) continue;
                if (hf.leq(i, j)) {
                    CHECK(hf.elements[static_cast<std::size_t>(i)].tail_face.dim() <
                          hf.elements[static_cast<std::size_t>(j)].tail_face.dim());
                }
            }
        }
    }
    SECTION("invariance under point relabeling and unimodular change")
    {
        auto [closed, report] = validate_and_close(testutil::quadric_fan());
        REQUIRE(report.ok());
        int before = hf_poset(closed).size();

        auto relabel = [](const std::string& p) -> std::string {
            if (p == "0") return "1";
            if (p == "1") return "0";
            return p;
        };
        std::vector<PolyDivisor> moved;
        for (const auto& d : closed.divisors()) {
            std::map<std::string, Polyhedron> coeffs;
            for (const auto& [p, c] : d.nontrivial_coefficients()) coeffs.emplace(relabel(p), c);
            std::set<std::string> excl;
            for (const auto& p : d.excluded()) excl.insert(relabel(p));
            moved.push_back(PolyDivisor::make(d.tail(), coeffs, d.complete_locus(), excl));
        }
        DivisorialFan relabeled(closed.curve(), closed.rank(), moved);
        CHECK(hf_poset(relabeled).size() == before);

        std::mt19937 rng(5);
        Mat m = testutil::random_unimodular(2, rng);
        std::vector<PolyDivisor> trans;
        for (const auto& d : closed.divisors()) {
            std::map<std::string, Polyhedron> coeffs;
            for (const auto& [p, c] : d.nontrivial_coefficients())
                coeffs.emplace(p, testutil::apply_polyhedron(m, c));
            trans.push_back(PolyDivisor::make(testutil::apply_cone(m, d.tail()), coeffs,
                                              d.complete_locus(), d.excluded()));
        }
        DivisorialFan transformed(closed.curve(), closed.rank(), trans);
        CHECK(hf_poset(transformed).size() == before);
        CHECK(transformed.support() == closed.support());
        CHECK(transformed.fiber_fan("0").ray_count() == closed.fiber_fan("0").ray_count());
    }
}
