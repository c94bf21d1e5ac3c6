#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace ihpoly;
using testutil::v;
using testutil::vq;

namespace {

Fan p1_fan() { return Fan::from_cones(1, {Cone::from_generators(1, {v({1})}), Cone::from_generators(1, {v({-1})})}); }

Fan p2_fan()
{
    auto c = [](Vec a, Vec b) { return Cone::from_generators(2, {a, b}); };
    return Fan::from_cones(2, {c(v({1, 0}), v({0, 1})), c(v({0, 1}), v({-1, -1})),
                               c(v({-1, -1}), v({1, 0}))});
}

Fan p1xp1_fan()
{
    auto c = [](Vec a, Vec b) { return Cone::from_generators(2, {a, b}); };
    return Fan::from_cones(2, {c(v({1, 0}), v({0, 1})), c(v({0, 1}), v({-1, 0})),
                               c(v({-1, 0}), v({0, -1})), c(v({0, -1}), v({1, 0}))});
}

}  // namespace

TEST_CASE("fan completeness")
{
    CHECK(p1_fan().is_complete());
    CHECK(p2_fan().is_complete());
    CHECK(p1xp1_fan().is_complete());
    Fan orthant_only = Fan::from_cones(2, {Cone::from_generators(2, {v({1, 0}), v({0, 1})})});
    CHECK(!orthant_only.is_complete());
}

TEST_CASE("fan axiom violations are reported")
{
    Cone a = Cone::from_generators(2, {v({1, 0}), v({0, 1})});
    Cone b = Cone::from_generators(2, {v({1, 1}), v({-1, 1})});
    CHECK_THROWS_AS(Fan::from_cones(2, {a, b}), FanError);
}

TEST_CASE("ray counts")
{
    CHECK(p2_fan().ray_count() == 3);
    CHECK(p1xp1_fan().ray_count() == 4);
    CHECK(p1_fan().ray_count() == 2);
}

TEST_CASE("completeness is invariant under unimodular transforms")
{
    std::mt19937 rng(11);
    Fan p2 = p2_fan();
    for (int trial = 0; trial < 8; ++trial) {
        Mat m = testutil::random_unimodular(2, rng);
        std::vector<Cone> moved;
        for (const auto& c : p2.maximal_cones()) moved.push_back(testutil::apply_cone(m, c));
        CHECK(Fan::from_cones(2, moved).is_complete());
    }
}

TEST_CASE("cayley cones")
{
    Cone orthant = Cone::from_generators(2, {v({1, 0}), v({0, 1})});
    SECTION("trivial coefficient gives orthant slab")
    {
        Cone c = cayley_cone(orthant, cone_as_polyhedron(orthant));
        Cone expect = Cone::from_generators(3, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})});
        CHECK(c == expect);
    }
    SECTION("zero tail with segment coefficient")
    {
        Cone zero1 = Cone::zero(1);
        Polyhedron seg = Polyhedron::from_vertices_rays(1, {v({-1}), v({1})}, {});
        Cone c = cayley_cone(zero1, seg);
        CHECK(c == Cone::from_generators(2, {v({-1, 1}), v({1, 1})}));
    }
    SECTION("half-integral vertex primitivizes")
    {
        Cone ray = Cone::from_generators(1, {v({1})});
        Polyhedron half = Polyhedron::from_vertices_rays(1, {vq({"1/2"})}, {v({1})});
        Cone c = cayley_cone(ray, half);
        CHECK(c == Cone::from_generators(2, {v({1, 0}), v({1, 2})}));
    }
}

TEST_CASE("star quotients")
{
    Cone orthant = Cone::from_generators(2, {v({1, 0}), v({0, 1})});
    SECTION("quotient by itself is the zero cone")
    {
        Cone q = star_quotient(orthant, orthant);
        CHECK(q.ambient() == 0);
        CHECK(q.dim() == 0);
    }
    SECTION("quotient of the orthant by a ray is a ray")
    {
        Cone ray = Cone::from_generators(2, {v({1, 0})});
        Cone q = star_quotient(orthant, ray);
        CHECK(q.ambient() == 1);
        CHECK(q.dim() == 1);
        CHECK(q.strictly_convex());
    }
    SECTION("quotient by the zero face is the cone itself")
    {
        Cone q = star_quotient(orthant, Cone::zero(2));
        CHECK(q == orthant);
    }
    SECTION("non-face input is rejected")
    {
        Cone ray = Cone::from_generators(2, {v({1, 1})});
        CHECK_THROWS_AS(star_quotient(orthant, ray), GeometryError);
    }
}

TEST_CASE("downward cones")
{
    Cone ray = Cone::from_generators(1, {v({1})});
    Cone d = downward_cone(ray);
    CHECK(d == Cone::from_generators(2, {v({1, 0}), v({0, -1})}));
}
