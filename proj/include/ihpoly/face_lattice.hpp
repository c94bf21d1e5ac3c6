/// Face lattices of cones and polyhedra, enumerated from the irredundant
/// facet description. Faces are identified by the set of generators lying on
/// them; the lattice order is inclusion of those sets.
#pragma once

#include "polyhedron.hpp"

#include <cstdint>
#include <map>

namespace ihpoly {

struct FaceLattice {
    struct Face {
        std::uint64_t active = 0;  // generator indices on the face
        int dim = 0;
    };

    std::vector<Face> faces;  // sorted by (dim, active)
    int top = -1;             // index of the whole cone/polyhedron
    int bottom = -1;          // unique minimal face, or -1 if not unique

    bool leq(int i, int j) const
    {
        std::uint64_t a = faces[static_cast<std::size_t>(i)].active;
        std::uint64_t b = faces[static_cast<std::size_t>(j)].active;
        return (a & b) == a;
    }
    int dim(int i) const { return faces[static_cast<std::size_t>(i)].dim; }
    int size() const { return static_cast<int>(faces.size()); }

    std::vector<int> interval(int lo, int hi) const
    {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (leq(lo, i) && leq(i, hi)) out.push_back(i);
        return out;
    }
};

namespace detail {

inline void close_under_intersection(std::vector<std::uint64_t>& sets, std::uint64_t topmask,
                                     const std::vector<std::uint64_t>& facet_masks)
{
    std::set<std::uint64_t> seen;
    std::vector<std::uint64_t> work{topmask};
    seen.insert(topmask);
    while (!work.empty()) {
        std::uint64_t s = work.back();
        work.pop_back();
        for (auto fm : facet_masks) {
            std::uint64_t t = s & fm;
            if (seen.insert(t).second) work.push_back(t);
        }
    }
    sets.assign(seen.begin(), seen.end());
}

}  // namespace detail

/// Face lattice of a cone. Every face contains the lineality space; the bottom
/// face is the lineality face. Generator indices refer to cone.rays().
inline FaceLattice cone_face_lattice(const Cone& c)
{
    const auto& rays = c.rays();
    if (rays.size() > 63) throw GeometryError("face lattice: too many rays");
    std::uint64_t topmask = rays.empty() ? 0 : (std::uint64_t{1} << rays.size()) - 1;
    std::vector<std::uint64_t> facet_masks;
    for (const auto& f : c.facets()) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (dot(f, rays[i]) == 0) m |= (std::uint64_t{1} << i);
        facet_masks.push_back(m);
    }
    std::vector<std::uint64_t> sets;
    detail::close_under_intersection(sets, topmask, facet_masks);
    FaceLattice fl;
    for (auto s : sets) {
        std::vector<Vec> gens = c.lineality();
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (s & (std::uint64_t{1} << i)) gens.push_back(rays[i]);
        fl.faces.push_back({s, rank_of_rows(gens)});
    }
    std::sort(fl.faces.begin(), fl.faces.end(), [](const auto& a, const auto& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.active < b.active;
    });
    fl.bottom = 0;
    fl.top = fl.size() - 1;
    return fl;
}

inline Cone face_cone(const Cone& c, const FaceLattice::Face& f)
{
    std::vector<Vec> gens;
    for (const auto& l : c.lineality()) {
        gens.push_back(l);
        gens.push_back(neg(l));
    }
    for (std::size_t i = 0; i < c.rays().size(); ++i)
        if (f.active & (std::uint64_t{1} << i)) gens.push_back(c.rays()[i]);
    return Cone::from_generators(c.ambient(), gens);
}

inline std::vector<Cone> proper_faces(const Cone& c)
{
    FaceLattice fl = cone_face_lattice(c);
    std::vector<Cone> out;
    for (int i = 0; i < fl.size(); ++i) {
        if (i == fl.top) continue;
        out.push_back(face_cone(c, fl.faces[static_cast<std::size_t>(i)]));
    }
    return out;
}

inline std::vector<Cone> all_faces(const Cone& c)
{
    auto out = proper_faces(c);
    out.push_back(c);
    return out;
}

/// Face lattice of a polyhedron (nonempty faces only; no empty face). The
/// generator indexing follows the homogenization: vertices first, then rays,
/// both in the canonical (sorted) order of the polyhedron.
inline FaceLattice polyhedron_face_lattice(const Polyhedron& p)
{
    std::size_t nv = p.vertices().size(), nr = p.rays().size();
    if (nv + nr > 63) throw GeometryError("face lattice: too many generators");
    std::uint64_t topmask = (nv + nr) == 0 ? 0 : (std::uint64_t{1} << (nv + nr)) - 1;
    std::vector<std::uint64_t> facet_masks;
    auto mask_of = [&](const Vec& a, const Rat& b) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < nv; ++i)
            if (dot(a, p.vertices()[i]) == b) m |= (std::uint64_t{1} << i);
        for (std::size_t i = 0; i < nr; ++i)
            if (dot(a, p.rays()[i]) == 0) m |= (std::uint64_t{1} << (nv + i));
        return m;
    };
    for (const auto& [a, b] : p.inequalities()) facet_masks.push_back(mask_of(a, b));
    std::vector<std::uint64_t> sets;
    detail::close_under_intersection(sets, topmask, facet_masks);
    FaceLattice fl;
    std::uint64_t vmask = nv == 0 ? 0 : (std::uint64_t{1} << nv) - 1;
    for (auto s : sets) {
        if ((s & vmask) == 0) continue;  // faces of the recession cone only; not faces of p
        std::vector<Vec> dirs;
        Vec v0;
        bool first = true;
        for (std::size_t i = 0; i < nv; ++i) {
            if (!(s & (std::uint64_t{1} << i))) continue;
            if (first) {
                v0 = p.vertices()[i];
                first = false;
            } else
                dirs.push_back(sub(p.vertices()[i], v0));
        }
        for (std::size_t i = 0; i < nr; ++i)
            if (s & (std::uint64_t{1} << (nv + i))) dirs.push_back(p.rays()[i]);
        fl.faces.push_back({s, rank_of_rows(dirs)});
    }
    std::sort(fl.faces.begin(), fl.faces.end(), [](const auto& a, const auto& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.active < b.active;
    });
    fl.top = fl.size() - 1;
    // bottom only when unique (a polytope-like lattice has many minimal faces)
    int mins = 0;
    for (int i = 0; i < fl.size(); ++i) {
        bool minimal = true;
        for (int j = 0; j < fl.size(); ++j)
            if (j != i && fl.leq(j, i)) { minimal = false; break; }
        if (minimal) {
            ++mins;
            fl.bottom = i;
        }
    }
    if (mins != 1) fl.bottom = -1;
    return fl;
}

inline Polyhedron face_polyhedron(const Polyhedron& p, const FaceLattice::Face& f)
{
    std::size_t nv = p.vertices().size(), nr = p.rays().size();
    std::vector<Vec> verts, rays;
    for (std::size_t i = 0; i < nv; ++i)
        if (f.active & (std::uint64_t{1} << i)) verts.push_back(p.vertices()[i]);
    for (std::size_t i = 0; i < nr; ++i)
        if (f.active & (std::uint64_t{1} << (nv + i))) rays.push_back(p.rays()[i]);
    return Polyhedron::from_vertices_rays(p.ambient(), verts, rays);
}

inline std::vector<Polyhedron> all_faces(const Polyhedron& p)
{
    FaceLattice fl = polyhedron_face_lattice(p);
    std::vector<Polyhedron> out;
    for (const auto& f : fl.faces) out.push_back(face_polyhedron(p, f));
    return out;
}

}  // namespace ihpoly
