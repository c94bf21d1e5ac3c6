#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace ihpoly;
using testutil::v;

namespace {

Cone simplicial_cone(int d)
{
    std::vector<Vec> gens;
    for (int i = 0; i < d; ++i) {
        Vec e = zero_vec(d);
        e[static_cast<std::size_t>(i)] = 1;
        gens.push_back(e);
    }
    return Cone::from_generators(d, gens);
}

Cone square_cone()
{
    return Cone::from_generators(3, {v({1, 1, 1}), v({1, -1, 1}), v({-1, -1, 1}), v({-1, 1, 1})});
}

Cone cube_cone()
{
    std::vector<Vec> gens;
    for (int a : {0, 1})
        for (int b : {0, 1})
            for (int c : {0, 1}) gens.push_back(v({a, b, c, 1}));
    return Cone::from_generators(4, gens);
}

/// 3-dimensional cone over m points in convex position (on a parabola).
Cone mgon_cone(int m)
{
    std::vector<Vec> gens;
    for (int i = 0; i < m; ++i) gens.push_back(v({i, static_cast<long>(i) * i, 1}));
    return Cone::from_generators(3, gens);
}

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

int face_index_of(const FaceLattice& fl, const Cone& big, const Cone& want)
{
    for (int i = 0; i < fl.size(); ++i)
        if (face_cone(big, fl.faces[static_cast<std::size_t>(i)]) == want) return i;
    throw std::runtime_error("face not found");
}

}  // namespace

TEST_CASE("g of simplicial cones is 1")
{
    for (int d = 1; d <= 5; ++d) CHECK(g_cone(simplicial_cone(d)) == Poly::one());
    std::mt19937 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        Mat m = testutil::random_unimodular(4, rng);
        CHECK(g_cone(testutil::apply_cone(m, simplicial_cone(4))) == Poly::one());
    }
}

TEST_CASE("g of standard non-simplicial cones")
{
    CHECK(g_cone(square_cone()) == Poly({1, 0, 1}));
    CHECK(g_cone(cube_cone()) == Poly({1, 0, 4}));
    for (int m = 4; m <= 8; ++m) {
        Poly expect({1, 0, m - 3});
        CHECK(g_cone(mgon_cone(m)) == expect);
    }
}

TEST_CASE("g depends only on the combinatorics")
{
    std::mt19937 rng(17);
    for (const Cone& c : {square_cone(), cube_cone(), mgon_cone(6)}) {
        for (int trial = 0; trial < 4; ++trial) {
            Mat m = testutil::random_unimodular(c.ambient(), rng);
            CHECK(g_cone(testutil::apply_cone(m, c)) == g_cone(c));
        }
    }
}

TEST_CASE("g rejects cones with lineality")
{
    Cone half = Cone::from_generators(2, {v({1, 0}), v({-1, 0}), v({0, 1})});
    CHECK_THROWS_AS(g_cone(half), GeometryError);
}

TEST_CASE("projection oracle agrees with the poset recursion")
{
    std::vector<Cone> corpus = {simplicial_cone(3), simplicial_cone(4), square_cone(),
                                cube_cone(),        mgon_cone(5),       mgon_cone(7)};
    for (const auto& c : corpus) CHECK(testutil::g_cone_projection_oracle(c) == g_cone(c));
}

TEST_CASE("h polynomials of complete fans")
{
    Fan p1 = Fan::from_cones(1, {Cone::from_generators(1, {v({1})}),
                                 Cone::from_generators(1, {v({-1})})});
    CHECK(h_fan(p1) == Poly({1, 0, 1}));
    CHECK(h_fan(p2_fan()) == Poly({1, 0, 1, 0, 1}));
    CHECK(h_fan(p1xp1_fan()) == Poly({1, 0, 2, 0, 1}));
    SECTION("h is palindromic with constant term one and nonnegative")
    {
        for (const Fan& f : {p2_fan(), p1xp1_fan()}) {
            Poly h = h_fan(f);
            CHECK(h.coeff(0) == 1);
            CHECK(h.is_palindromic(2 * f.ambient()));
            CHECK(h.nonnegative());
        }
    }
    SECTION("incomplete fans are rejected")
    {
        Fan orthant_only = Fan::from_cones(2, {simplicial_cone(2)});
        CHECK_THROWS_AS(h_fan(orthant_only), FanError);
    }
}

TEST_CASE("relative g")
{
    SECTION("top against itself gives g of the cone")
    {
        Cone c = square_cone();
        FaceLattice fl = cone_face_lattice(c);
        CHECK(relative_g(fl, fl.top, fl.top) == g_cone(c));
    }
    SECTION("facet pairs give the difference of g's")
    {
        // Cayley cones: the tail embeds as a facet
        Cone tail = Cone::from_generators(2, {v({1, 1}), v({1, -1})});
        Polyhedron coeff = Polyhedron::from_vertices_rays(2, {v({0, 0}), v({0, -1})}, tail.rays());
        Cone cay = cayley_cone(tail, coeff);
        Cone tail_embedded = Cone::from_generators(3, {v({1, 1, 0}), v({1, -1, 0})});
        FaceLattice fl = cone_face_lattice(cay);
        int e = fl.top;
        int f = face_index_of(fl, cay, tail_embedded);
        CHECK(relative_g(fl, e, f) == g_cone(cay) - g_cone(tail_embedded));
    }
    SECTION("simplex lattices force the delta family")
    {
        Cone c = simplicial_cone(3);
        FaceLattice fl = cone_face_lattice(c);
        for (int f = 0; f < fl.size(); ++f) {
            for (int e = 0; e < fl.size(); ++e) {
                if (!fl.leq(f, e)) continue;
                Poly expect = (e == f) ? Poly::one() : Poly::zero();
                CHECK(relative_g(fl, e, f) == expect);
            }
        }
    }
    SECTION("defining convolution identity re-substitutes exactly")
    {
        for (const Cone& c : {square_cone(), cube_cone()}) {
            FaceLattice fl = cone_face_lattice(c);
            std::map<std::pair<int, int>, Poly> memo;
            for (int f = 0; f < fl.size(); ++f) {
                for (int q = 0; q < fl.size(); ++q) {
                    if (!fl.leq(f, q)) continue;
                    Poly total;
                    for (int e = 0; e < fl.size(); ++e) {
                        if (!fl.leq(f, e) || !fl.leq(e, q)) continue;
                        total = total + relative_g(fl, e, f) *
                                            ihpoly::detail::g_interval(fl, e, q, memo);
                    }
                    CHECK(total == ihpoly::detail::g_interval(fl, fl.bottom, q, memo));
                }
            }
        }
    }
}

TEST_CASE("polynomial utilities")
{
    Poly p({1, 2, 1, 0, -1});  // 1 + 2t + t^2 - t^4
    CHECK(truncate(p, 1) == Poly({1, 2}));
    CHECK(p * Poly::one() == p);
    Laurent l = Laurent::term(-1, 1) + Laurent::term(0, 3);
    CHECK(l.reversed() == Laurent::term(1, 1) + Laurent::term(0, 3));
    CHECK(Laurent::term(-2, 1).is_unit());
    CHECK(Laurent::term(-2, 1).unit_inverse() == Laurent::term(2, 1));
    CHECK(!(Laurent::term(0, 2)).is_unit());
    CHECK(Poly({1, 0, 2}).substitute_t_squared() == Poly({1, 0, 0, 0, 2}));
    CHECK(Poly({1, 0, 1}).pretty() == "t^2 + 1");
    CHECK(Poly({1, 0, 1, 0, 1, 0, 1}).pretty() == "t^6 + t^4 + t^2 + 1");
}
