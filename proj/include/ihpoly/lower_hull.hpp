/// Lower hulls: project a polyhedron along a primitive direction u and carve
/// the image into the maximal cells on which the fiberwise minimum of the
/// u-coordinate is an affine function of the image point.
#pragma once

#include "polyhedron.hpp"

#include <map>

namespace ihpoly {

struct LowerHullCell {
    Polyhedron cell;  // in the quotient coordinates (dimension n-1)
    Rat offset;       // theta(v) = offset + <slope, v> on the cell,
    Vec slope;        // where -theta(v) is the fiberwise minimum u-coordinate
};

namespace detail {

/// Coordinate functionals of the basis (u, b_1, ..., b_k): row 0 extracts the
/// u-coordinate, rows 1..k the complement coordinates.
inline Mat coordinate_rows(const Vec& u, const std::vector<Vec>& basis, int n)
{
    Mat cols(static_cast<std::size_t>(n), zero_vec(n));
    for (int i = 0; i < n; ++i) {
        cols[static_cast<std::size_t>(i)][0] = u[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < basis.size(); ++j)
            cols[static_cast<std::size_t>(i)][j + 1] = basis[j][static_cast<std::size_t>(i)];
    }
    auto inv = inverse(cols);
    if (!inv) throw GeometryError("lower hull: u and basis do not span the space");
    return *inv;  // rows are the coordinate functionals
}

}  // namespace detail

/// Image of p under the quotient along u, in the coordinates of `basis`.
inline Polyhedron project_along(const Polyhedron& p, const Vec& u, const std::vector<Vec>& basis)
{
    Mat coords = detail::coordinate_rows(u, basis, p.ambient());
    Mat pi1(coords.begin() + 1, coords.end());
    return p.linear_image(pi1);
}

inline std::vector<LowerHullCell> lower_hull_cells(const Polyhedron& p, const Vec& u,
                                                   const std::vector<Vec>& basis)
{
    int n = p.ambient();
    if (static_cast<int>(basis.size()) != n - 1)
        throw GeometryError("lower hull: basis must complement u");
    if (primitive(u) != u) throw GeometryError("lower hull: u must be primitive");
    if (p.recession_cone().contains(neg(u)))
        throw GeometryError("lower hull: fibers unbounded below along u");

    Mat coords = detail::coordinate_rows(u, basis, n);
    Mat pi1(coords.begin() + 1, coords.end());

    // Dimension of the image pi1(p) (which may be the whole quotient space).
    std::vector<Vec> dirs;
    auto apply_pi1 = [&](const Vec& x) {
        Vec y(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) y[i] = dot(pi1[i], x);
        return y;
    };
    for (const auto& r : p.rays()) dirs.push_back(apply_pi1(r));
    for (std::size_t i = 1; i < p.vertices().size(); ++i)
        dirs.push_back(apply_pi1(sub(p.vertices()[i], p.vertices()[0])));
    int image_dim = rank_of_rows(dirs);

    // Over the fiber {lift(v) + t u}, each row <a,x> >= b turns into a lower
    // bound on t (when <a,u> > 0), an upper bound (< 0), or a direct constraint
    // on v (= 0). The fiberwise minimum is the largest lower bound.
    struct Affine {
        Rat c;
        Vec w;
        std::string key;
    };
    std::vector<Affine> lower, upper;
    std::vector<std::pair<Vec, Rat>> direct;
    std::map<std::string, bool> seen;
    auto add_row = [&](const Vec& a, const Rat& b) {
        Rat alpha = dot(a, u);
        Vec w(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) w[j] = dot(a, basis[j]);
        if (alpha == 0) {
            direct.push_back({w, b});
            return;
        }
        Affine f;
        f.c = b / alpha;
        for (auto& x : w) x = -x / alpha;
        f.w = std::move(w);
        f.key = rat_to_string(f.c) + vec_to_string(f.w);
        if (alpha > 0) {
            if (seen.emplace("L" + f.key, true).second) lower.push_back(std::move(f));
        } else {
            if (seen.emplace("U" + f.key, true).second) upper.push_back(std::move(f));
        }
    };
    for (const auto& [a, b] : p.inequalities()) add_row(a, b);
    for (const auto& [a, b] : p.equations()) {
        add_row(a, b);
        add_row(neg(a), -b);
    }
    if (lower.empty()) throw GeometryError("lower hull: no lower bound on fibers");

    std::vector<LowerHullCell> cells;
    for (std::size_t i = 0; i < lower.size(); ++i) {
        std::vector<std::pair<Vec, Rat>> ineqs = direct;
        for (std::size_t j = 0; j < lower.size(); ++j) {
            if (i == j) continue;
            // lower[i] dominates lower[j]
            ineqs.push_back({sub(lower[i].w, lower[j].w), lower[j].c - lower[i].c});
        }
        for (const auto& up : upper) {
            // fiber nonempty: lower[i] <= upper bound
            ineqs.push_back({sub(up.w, lower[i].w), lower[i].c - up.c});
        }
        auto cell = Polyhedron::from_constraints(n - 1, ineqs, {});
        if (!cell || cell->dim() != image_dim) continue;
        LowerHullCell out;
        out.cell = *cell;
        out.offset = -lower[i].c;
        out.slope = neg(lower[i].w);
        cells.push_back(std::move(out));
    }
    return cells;
}

}  // namespace ihpoly
