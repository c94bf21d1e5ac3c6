#include <catch2/catch_amalgamated.hpp>

#include <ihpoly/face_lattice.hpp>
#include <ihpoly/lower_hull.hpp>

#include <random>

using namespace ihpoly;

namespace {

Vec v(std::initializer_list<long> xs)
{
    Vec r;
    for (long x : xs) r.push_back(Rat(x));
    return r;
}

Vec vq(std::initializer_list<const char*> xs)
{
    Vec r;
    for (auto* s : xs) r.push_back(parse_rational(s));
    return r;
}

Cone orthant2() { return Cone::from_generators(2, {v({1, 0}), v({0, 1})}); }

/// Every closed interval of rank >= 1 has as many even-rank as odd-rank elements.
bool lattice_is_eulerian(const FaceLattice& fl)
{
    for (int lo = 0; lo < fl.size(); ++lo) {
        for (int hi = 0; hi < fl.size(); ++hi) {
            if (!fl.leq(lo, hi) || fl.dim(hi) - fl.dim(lo) < 1) continue;
            int balance = 0;
            for (int m = 0; m < fl.size(); ++m) {
                if (fl.leq(lo, m) && fl.leq(m, hi))
                    balance += (fl.dim(m) - fl.dim(lo)) % 2 == 0 ? 1 : -1;
            }
            if (balance != 0) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("dual cone examples")
{
    SECTION("orthant is self-dual")
    {
        CHECK(orthant2().dual() == orthant2());
    }
    SECTION("Cone((1,1),(1,-1)) is self-dual")
    {
        Cone c = Cone::from_generators(2, {v({1, 1}), v({1, -1})});
        CHECK(c.dual() == c);
    }
    SECTION("zero cone dualizes to the full plane")
    {
        Cone z = Cone::zero(2);
        Cone d = z.dual();
        CHECK(d.lineality_dim() == 2);
        CHECK(d.dim() == 2);
    }
    SECTION("double duality on assorted cones")
    {
        std::vector<Cone> cs = {
            orthant2(),
            Cone::from_generators(2, {v({1, 0})}),
            Cone::from_generators(3, {v({1, 1, 1}), v({1, -1, 1}), v({-1, -1, 1}), v({-1, 1, 1})}),
            Cone::from_generators(2, {v({1, 0}), v({-1, 0}), v({0, 1})}),  // halfplane
            Cone::zero(3),
        };
        for (const auto& c : cs) CHECK(c.dual().dual() == c);
    }
}

TEST_CASE("cone H-representation")
{
    Cone c = Cone::from_generators(2, {v({1, 2}), v({1, 0})});
    CHECK(c.facets().size() == 2);
    CHECK(c.contains(v({1, 1})));
    CHECK(!c.contains(v({0, 1})));
    CHECK(!c.contains(v({-1, 0})));

    Cone ray = Cone::from_generators(3, {v({1, 1, 0})});
    CHECK(ray.dim() == 1);
    CHECK(ray.equations().size() == 2);
    CHECK(ray.strictly_convex());
}

TEST_CASE("face lattices")
{
    SECTION("orthant has 4 faces")
    {
        auto fl = cone_face_lattice(orthant2());
        CHECK(fl.size() == 4);
        CHECK(fl.dim(fl.bottom) == 0);
        CHECK(fl.dim(fl.top) == 2);
        CHECK(lattice_is_eulerian(fl));
    }
    SECTION("cone over square has 10 faces")
    {
        Cone c = Cone::from_generators(
            3, {v({1, 1, 1}), v({1, -1, 1}), v({-1, -1, 1}), v({-1, 1, 1})});
        auto fl = cone_face_lattice(c);
        CHECK(fl.size() == 10);
        int counts[4] = {0, 0, 0, 0};
        for (const auto& f : fl.faces) counts[f.dim] += 1;
        CHECK(counts[0] == 1);
        CHECK(counts[1] == 4);
        CHECK(counts[2] == 4);
        CHECK(counts[3] == 1);
        CHECK(lattice_is_eulerian(fl));
    }
    SECTION("segment has two vertices and an edge")
    {
        Polyhedron seg = Polyhedron::from_vertices_rays(1, {v({-1}), v({0})}, {});
        auto fl = polyhedron_face_lattice(seg);
        CHECK(fl.size() == 3);
        CHECK(fl.bottom == -1);
        CHECK(lattice_is_eulerian(fl));
    }
}

TEST_CASE("minkowski sums")
{
    Polyhedron orth = cone_as_polyhedron(orthant2());
    SECTION("point plus orthant")
    {
        Polyhedron p = Polyhedron::from_vertices_rays(2, {vq({"1", "1/2"})}, {});
        Polyhedron s = p.minkowski_sum(orth);
        CHECK(s.vertices().size() == 1);
        CHECK(s.vertices()[0] == vq({"1", "1/2"}));
        CHECK(s.rays().size() == 2);
    }
    SECTION("identity element")
    {
        Polyhedron p = Polyhedron::from_vertices_rays(
            2, {v({0, 1}), v({1, 0})}, {v({1, 0}), v({0, 1})});
        Polyhedron origin = Polyhedron::from_vertices_rays(2, {v({0, 0})}, {});
        CHECK(p.minkowski_sum(origin) == p);
    }
    SECTION("two shifted orthants")
    {
        Polyhedron a = Polyhedron::from_vertices_rays(2, {vq({"1/2", "1/2"})}, orthant2().rays());
        Polyhedron b = Polyhedron::from_vertices_rays(2, {v({0, 1}), v({1, 0})}, orthant2().rays());
        Polyhedron s = a.minkowski_sum(b);
        std::vector<Vec> expect = {vq({"1/2", "3/2"}), vq({"3/2", "1/2"})};
        CHECK(s.vertices() == detail::sorted_unique(expect));
    }
}

TEST_CASE("intersections")
{
    Polyhedron right = Polyhedron::from_vertices_rays(1, {v({0})}, {v({1})});
    Polyhedron left = Polyhedron::from_vertices_rays(1, {v({0})}, {v({-1})});
    SECTION("ray meets opposite ray in the origin")
    {
        auto m = right.intersect(left);
        REQUIRE(m.has_value());
        CHECK(m->is_point());
    }
    SECTION("disjoint translates")
    {
        Polyhedron r1 = right.translate(v({1}));
        Polyhedron l1 = left.translate(v({-1}));
        CHECK(!r1.intersect(l1).has_value());
    }
    SECTION("idempotence")
    {
        Polyhedron p = Polyhedron::from_vertices_rays(
            2, {v({0, 1}), v({1, 0})}, {v({1, 0}), v({0, 1})});
        auto m = p.intersect(p);
        REQUIRE(m.has_value());
        CHECK(*m == p);
    }
}

TEST_CASE("support evaluation")
{
    Polyhedron p = Polyhedron::from_vertices_rays(2, {vq({"1", "1/2"})}, orthant2().rays());
    SECTION("examples")
    {
        auto e = p.eval_support(v({1, 0}));
        REQUIRE(e.has_value());
        CHECK(*e == Rat(1));
        Polyhedron orth = cone_as_polyhedron(orthant2());
        CHECK(*orth.eval_support(v({2, 3})) == Rat(0));
        Polyhedron seg = Polyhedron::from_vertices_rays(1, {v({-1}), v({0})}, {});
        CHECK(*seg.eval_support(v({1})) == Rat(-1));
    }
    SECTION("unbounded direction yields minus infinity")
    {
        CHECK(!p.eval_support(v({-1, 0})).has_value());
    }
    SECTION("additivity under minkowski sum")
    {
        Polyhedron q = Polyhedron::from_vertices_rays(2, {v({0, 2}), v({3, 0})}, orthant2().rays());
        Polyhedron s = p.minkowski_sum(q);
        for (auto m : {v({1, 0}), v({0, 1}), v({1, 1}), v({2, 5})}) {
            CHECK(*s.eval_support(m) == *p.eval_support(m) + *q.eval_support(m));
        }
    }
}

TEST_CASE("assorted helpers")
{
    SECTION("recession cone")
    {
        Polyhedron p = Polyhedron::from_vertices_rays(2, {vq({"1", "1/2"})}, orthant2().rays());
        CHECK(p.recession_cone() == orthant2());
    }
    SECTION("relative interior point of the orthant")
    {
        CHECK(orthant2().relative_interior_point() == v({1, 1}));
    }
    SECTION("primitive vector")
    {
        CHECK(primitive(v({2, 4})) == v({1, 2}));
        CHECK(primitive(vq({"1/2", "1/3"})) == v({3, 2}));
    }
    SECTION("face tests")
    {
        Polyhedron p = Polyhedron::from_vertices_rays(
            2, {v({0, 1}), v({1, 0})}, {v({1, 0}), v({0, 1})});
        Polyhedron f = p.face(v({1, 1}));
        CHECK(f.vertices().size() == 2);
        CHECK(f.is_face_of(p));
        Polyhedron inner = Polyhedron::from_vertices_rays(2, {v({1, 1})}, {});
        CHECK(!inner.is_face_of(p));
        Polyhedron vertex = Polyhedron::from_vertices_rays(2, {v({0, 1})}, {});
        CHECK(vertex.is_face_of(p));
    }
    SECTION("cone face via functional")
    {
        Cone c = orthant2();
        Cone f = c.face(v({0, 1}));
        CHECK(f.dim() == 1);
        CHECK(f.rays()[0] == v({1, 0}));
        CHECK(f.is_face_of(c));
    }
}

TEST_CASE("lower hull cells")
{
    SECTION("orthant along the diagonal")
    {
        Polyhedron orth = cone_as_polyhedron(orthant2());
        Vec u = v({1, 1});
        auto basis = lattice_complement(u, 2);
        auto cells = lower_hull_cells(orth, u, basis);
        REQUIRE(cells.size() == 2);
        for (const auto& cell : cells) {
            CHECK(cell.cell.ambient() == 1);
            CHECK(cell.offset == Rat(0));
        }
    }
    SECTION("shifted orthant: same cells, shifted offsets")
    {
        Polyhedron p = Polyhedron::from_vertices_rays(2, {vq({"1/2", "1/2"})}, orthant2().rays());
        Vec u = v({1, 1});
        auto basis = lattice_complement(u, 2);
        auto cells = lower_hull_cells(p, u, basis);
        REQUIRE(cells.size() == 2);
        for (const auto& cell : cells) CHECK(cell.offset == Rat(-1, 2));
    }
    SECTION("segment coefficient gives three cells")
    {
        Polyhedron p = Polyhedron::from_vertices_rays(2, {v({0, 1}), v({1, 0})},
                                                      orthant2().rays());
        Vec u = v({1, 1});
        auto basis = lattice_complement(u, 2);
        auto cells = lower_hull_cells(p, u, basis);
        REQUIRE(cells.size() == 3);
        int bounded = 0;
        for (const auto& cell : cells) {
            if (cell.cell.rays().empty()) {
                ++bounded;
                CHECK(cell.cell.vertices().size() == 2);
                // the middle cell is [-1,1] in either complement orientation
                Vec lo = cell.cell.vertices()[0], hi = cell.cell.vertices()[1];
                CHECK(lo == v({-1}));
                CHECK(hi == v({1}));
            }
        }
        CHECK(bounded == 1);
    }
    SECTION("error when fibers are unbounded below")
    {
        Polyhedron p = Polyhedron::from_vertices_rays(2, {v({0, 0})}, {v({1, 0}), v({0, -1})});
        Vec u = v({0, 1});
        auto basis = lattice_complement(u, 2);
        CHECK_THROWS_AS(lower_hull_cells(p, u, basis), GeometryError);
    }
    SECTION("cells tile the projection and match full-dimensional recession cones once")
    {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 12; ++trial) {
            std::uniform_int_distribution<int> small(-2, 2);
            std::vector<Vec> verts;
            int nv = 1 + trial % 3;
            for (int i = 0; i < nv; ++i)
                verts.push_back(Vec{Rat(small(rng)), Rat(small(rng))});
            Polyhedron p = Polyhedron::from_vertices_rays(2, verts, orthant2().rays());
            Vec u = v({1, 1});
            auto basis = lattice_complement(u, 2);
            auto cells = lower_hull_cells(p, u, basis);
            // cells cover the projection: interior points of each cell lie in
            // exactly one cell, and recession cones of unbounded cells differ
            std::set<std::string> recs;
            for (const auto& cell : cells) {
                Vec ip = cell.cell.relative_interior_point();
                int hits = 0;
                for (const auto& other : cells)
                    if (other.cell.contains(ip)) ++hits;
                CHECK(hits == 1);
                if (!cell.cell.rays().empty() && cell.cell.dim() == 1) {
                    auto rc = cell.cell.recession_cone();
                    if (rc.dim() == 1) CHECK(recs.insert(rc.key()).second);
                }
            }
        }
    }
}
