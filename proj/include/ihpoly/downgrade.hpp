/// Downgrading: realize the affine variety of a full-dimensional-tail divisor
/// as a cone over a projective variety one torus rank down. Also the pointed
/// reduction (splitting off the torus factor of a non-full-dimensional tail)
/// and lattice refinement.
#pragma once

#include "hyperfaces.hpp"
#include "lower_hull.hpp"

namespace ihpoly {

struct EngineError : std::runtime_error {
    explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

/// Canonical primitive lattice point interior to a full-dimensional cone.
inline Vec default_interior_direction(const Cone& tail)
{
    Vec s = tail.relative_interior_point();
    if (is_zero(s)) throw GeometryError("interior direction of the zero cone");
    return primitive(s);
}

namespace detail {

inline Cone cell_cone(const Polyhedron& cell)
{
    return cell.recession_cone();
}

/// The facet of the tail that projects onto a given full-dimensional cell of
/// the tail subdivision (its "lower" facet along u).
inline Cone lower_facet_over_cell(const Cone& tail, const Vec& u, const Mat& pi1, const Cone& cell)
{
    FaceLattice fl = cone_face_lattice(tail);
    for (const auto& f : fl.faces) {
        if (f.dim != tail.dim() - 1) continue;
        Cone facet = face_cone(tail, f);
        // lower: some supporting normal of the facet pairs positively with u
        bool lower = false;
        for (const auto& a : tail.facets()) {
            bool tight = true;
            for (const auto& g : facet.generators())
                if (dot(a, g) != 0) { tight = false; break; }
            if (tight && dot(a, u) > 0) { lower = true; break; }
        }
        if (!lower) continue;
        std::vector<Vec> images;
        for (const auto& g : facet.generators()) {
            Vec y(pi1.size());
            for (std::size_t i = 0; i < pi1.size(); ++i) y[i] = dot(pi1[i], g);
            images.push_back(y);
        }
        if (Cone::from_generators(static_cast<int>(pi1.size()), images) == cell) return facet;
    }
    throw EngineError("downgrade: no lower facet projects onto a tail cell");
}

}  // namespace detail

/// The divisorial fan of the projectivization of X(d) along the one-parameter
/// subgroup u (primitive, interior to the full-dimensional tail).
inline DivisorialFan downgrade(const PolyDivisor& d, const Curve& curve, const Vec& u)
{
    int n = d.ambient();
    if (!d.complete_locus()) throw EngineError("downgrade: divisor locus is not the whole curve");
    if (d.tail().dim() != n) throw EngineError("downgrade: tail is not full-dimensional");
    {
        ProperVerdict v = is_proper(d, curve);
        if (!v.ok()) throw EngineError("downgrade: divisor not proper: " + v.detail);
    }
    if (primitive(u) != u || !d.tail().contains(u))
        throw EngineError("downgrade: u must be a primitive lattice point of the tail");
    for (const auto& f : d.tail().facets())
        if (dot(f, u) == 0) throw EngineError("downgrade: u lies on a facet of the tail");

    std::vector<std::string> supp = d.support();
    if (supp.empty()) throw EngineError("downgrade: proper divisor needs a nontrivial coefficient");

    Curve out_curve = curve;
    if (n == 1) {
        // quotient is the curve itself
        PolyDivisor triv = PolyDivisor::make(Cone::zero(0), {}, true);
        return DivisorialFan(out_curve, 0, {triv});
    }

    auto basis = lattice_complement(u, n);
    Mat coords = detail::coordinate_rows(u, basis, n);
    Mat pi1(coords.begin() + 1, coords.end());
    auto tail_cells = lower_hull_cells(cone_as_polyhedron(d.tail()), u, basis);
    std::map<std::string, std::vector<LowerHullCell>> point_cells;
    for (const auto& y : supp) point_cells[y] = lower_hull_cells(d.coefficient(y), u, basis);
    Polyhedron deg = *d.degree();

    auto other_specials = [&](const std::string& y) {
        std::set<std::string> ex;
        for (const auto& z : supp)
            if (z != y) ex.insert(z);
        if (ex.empty()) {
            // need some point to remove; prefer an existing label
            for (const auto& p : out_curve.points)
                if (p != y) { ex.insert(p); break; }
            if (ex.empty()) {
                out_curve.points.push_back(out_curve.fresh_label("aux"));
                ex.insert(out_curve.points.back());
            }
        }
        return ex;
    };

    std::vector<PolyDivisor> charts;
    std::map<std::string, std::set<std::size_t>> matched;  // point -> matched cell indices

    for (const auto& tc : tail_cells) {
        Cone c = detail::cell_cone(tc.cell);
        if (c.dim() != n - 1) continue;
        std::map<std::string, Polyhedron> coeffs;
        bool ok = true;
        for (const auto& y : supp) {
            const auto& cells = point_cells[y];
            int found = -1;
            for (std::size_t k = 0; k < cells.size(); ++k) {
                if (detail::cell_cone(cells[k].cell) == c) {
                    if (found >= 0) throw EngineError("downgrade: recession-cone match not unique");
                    found = static_cast<int>(k);
                }
            }
            if (found < 0) throw EngineError("downgrade: no cell matches a full-dimensional tail cell");
            matched[y].insert(static_cast<std::size_t>(found));
            coeffs.emplace(y, cells[static_cast<std::size_t>(found)].cell);
            (void)ok;
        }
        // The chart contracts to an elliptic fixed point exactly when the
        // facet of the tail lying over this cell meets the degree (the
        // codimension-one hyperfaces of d are the orbits the projectivization
        // keeps as fixed points).
        Cone facet = detail::lower_facet_over_cell(d.tail(), u, pi1, c);
        bool elliptic = deg.intersect(cone_as_polyhedron(facet)).has_value();
        PolyDivisor full = PolyDivisor::make(c, coeffs, true);
        if (elliptic) {
            ProperVerdict v = is_proper(full, out_curve);
            if (!v.ok())
                throw EngineError("downgrade: elliptic chart is not proper: " + v.detail);
            charts.push_back(full);
            continue;
        }
        // split into per-point charts over affine loci
        for (const auto& y : supp) {
            std::map<std::string, Polyhedron> single;
            single.emplace(y, full.coefficient(y));
            charts.push_back(PolyDivisor::make(c, single, false, other_specials(y)));
        }
        if (supp.size() == 1) {
            std::set<std::string> ex(supp.begin(), supp.end());
            charts.push_back(PolyDivisor::make(c, {}, false, ex));
        }
    }

    // leftover cells (lower-dimensional recession cones) become one-point charts
    for (const auto& y : supp) {
        const auto& cells = point_cells[y];
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (matched[y].count(k)) continue;
            Cone c = detail::cell_cone(cells[k].cell);
            std::map<std::string, Polyhedron> single;
            single.emplace(y, cells[k].cell);
            charts.push_back(PolyDivisor::make(c, single, false, other_specials(y)));
        }
    }

    DivisorialFan fan(out_curve, n - 1, charts);
    auto [closed, report] = validate_and_close(fan);
    if (!report.ok()) {
        std::string what = "downgrade: output fan invalid:";
        for (const auto& e : report.errors) what += " [" + e.code + "] " + e.message;
        throw EngineError(what);
    }
    if (!closed.is_complete_variety())
        throw EngineError("downgrade: output fan is not complete");
    return closed;
}

inline DivisorialFan downgrade(const PolyDivisor& d, const Curve& curve)
{
    return downgrade(d, curve, default_interior_direction(d.tail()));
}

// ---------------------------------------------------------------------------

struct PointedReduction {
    PolyDivisor pointed;  // full-dimensional tail over the saturated span lattice
    int corank = 0;       // rank of the split-off torus factor
};

/// Split a decomposable divisor into a pointed divisor over the span of its
/// tail plus a torus factor. Errors when the divisor is not decomposable
/// (i.e. some critical evaluation is not principal on the nose).
inline PointedReduction pointed_reduction(const PolyDivisor& d, const Curve& curve)
{
    if (!d.complete_locus()) throw EngineError("pointed reduction: locus must be the whole curve");
    {
        ProperVerdict v = is_proper(d, curve);
        if (!v.ok()) throw EngineError("pointed reduction: divisor not proper: " + v.detail);
    }
    // decomposability: every critical evaluation principal (no multiples)
    for (const auto& [tau, gens] : critical_faces(d)) {
        for (const auto& m : gens) {
            QDivisor ev = d.evaluate(m);
            if (is_principal(ev, curve) != Tri::Yes)
                throw EngineError("pointed reduction: divisor is not decomposable (evaluation " +
                                  ev.to_string() + " at m = " + vec_to_string(m) +
                                  " is not principal); refine the lattice first");
        }
    }
    int n = d.ambient();
    int k = d.tail().dim();
    if (k == n) return {d, 0};

    auto span_basis = detail::canonical_subspace_basis(d.tail().generators(), n);
    auto full_basis = extend_to_lattice_basis(span_basis, n);
    Mat bt(static_cast<std::size_t>(n), zero_vec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            bt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                full_basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    auto inv = inverse(bt);
    if (!inv) throw EngineError("pointed reduction: degenerate basis");
    auto coords = [&](const Vec& x) {
        Vec c(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = dot((*inv)[static_cast<std::size_t>(i)], x);
        return c;
    };

    std::map<std::string, Polyhedron> new_coeffs;
    Vec residue_total = zero_vec(n - k);
    for (const auto& [p, poly] : d.nontrivial_coefficients()) {
        // the complement component is constant across the coefficient
        Vec c0 = coords(poly.vertices()[0]);
        Vec residue(c0.begin() + k, c0.end());
        for (const auto& vtx : poly.vertices()) {
            Vec c = coords(vtx);
            for (int i = k; i < n; ++i) {
                if (c[static_cast<std::size_t>(i)] != c0[static_cast<std::size_t>(i)])
                    throw EngineError("pointed reduction: coefficient at [" + p +
                                      "] is not parallel to the tail span");
            }
        }
        for (int i = 0; i < n - k; ++i) {
            if (!is_integer(residue[static_cast<std::size_t>(i)]))
                throw EngineError("pointed reduction: divisor is not decomposable "
                                  "(non-integral complement coordinate at [" + p + "])");
            residue_total[static_cast<std::size_t>(i)] += residue[static_cast<std::size_t>(i)];
        }
        std::vector<Vec> verts, rays;
        for (const auto& vtx : poly.vertices()) {
            Vec c = coords(vtx);
            verts.push_back(Vec(c.begin(), c.begin() + k));
        }
        for (const auto& r : poly.rays()) {
            Vec c = coords(r);
            rays.push_back(Vec(c.begin(), c.begin() + k));
        }
        Polyhedron moved = Polyhedron::from_vertices_rays(k, verts, rays);
        new_coeffs.emplace(p, moved);
    }
    if (!is_zero(residue_total))
        throw EngineError("pointed reduction: complement residues do not sum to zero");

    std::vector<Vec> tail_gens;
    for (const auto& g : d.tail().generators()) {
        Vec c = coords(g);
        tail_gens.push_back(Vec(c.begin(), c.begin() + k));
    }
    Cone tail0 = Cone::from_generators(k, tail_gens);
    PolyDivisor pointed = PolyDivisor::make(tail0, new_coeffs, true);
    return {pointed, n - k};
}

// ---------------------------------------------------------------------------

inline Polyhedron scale_polyhedron(const Polyhedron& p, const Rat& k)
{
    std::vector<Vec> verts;
    for (const auto& v : p.vertices()) verts.push_back(scale(k, v));
    return Polyhedron::from_vertices_rays(p.ambient(), verts, p.rays());
}

inline Int coefficient_denominator_lcm(const PolyDivisor& d)
{
    Int l = 1;
    for (const auto& [p, poly] : d.nontrivial_coefficients())
        for (const auto& vtx : poly.vertices())
            for (const auto& x : vtx) l = int_lcm(l, rat_den(x));
    return l;
}

/// Lattice refinement of a single divisor (genus-0 route: scale away the
/// coefficient denominators). Returns the scaled divisor and the index.
inline std::pair<PolyDivisor, Int> refine_lattice(const PolyDivisor& d, const Curve& curve)
{
    if (curve.policy == Principality::Genus0) {
        Int k = coefficient_denominator_lcm(d);
        if (k == 1) return {d, 1};
        std::map<std::string, Polyhedron> coeffs;
        for (const auto& [p, poly] : d.nontrivial_coefficients())
            coeffs.emplace(p, scale_polyhedron(poly, Rat(k)));
        return {PolyDivisor::make(d.tail(), coeffs, d.complete_locus(), d.excluded()), k};
    }
    return {d, 1};
}

/// Lattice refinement of a whole fan. On genus 0 this scales by the lcm of all
/// coefficient denominators, making every hyperface divisor decomposable; on
/// other policies it verifies decomposability and reports failures.
inline std::pair<DivisorialFan, Int> refine_lattice(const DivisorialFan& fan)
{
    const Curve& curve = fan.curve();
    if (curve.policy == Principality::Genus0) {
        Int k = 1;
        for (const auto& d : fan.divisors()) k = int_lcm(k, coefficient_denominator_lcm(d));
        if (k == 1) return {fan, 1};
        std::vector<PolyDivisor> scaled;
        for (const auto& d : fan.divisors()) {
            std::map<std::string, Polyhedron> coeffs;
            for (const auto& [p, poly] : d.nontrivial_coefficients())
                coeffs.emplace(p, scale_polyhedron(poly, Rat(k)));
            scaled.push_back(PolyDivisor::make(d.tail(), coeffs, d.complete_locus(), d.excluded()));
        }
        return {DivisorialFan(curve, fan.rank(), scaled), k};
    }
    // verify decomposability of every hyperface divisor
    HFPoset hf = hf_poset(fan);
    for (const auto& e : hf.elements) {
        PolyDivisor d = hyperface_divisor(e);
        pointed_reduction(d, curve);  // throws with diagnostics when not decomposable
    }
    return {fan, 1};
}

}  // namespace ihpoly
