/// Combinatorial intersection cohomology invariants of cones and complete
/// fans: the g-polynomial recursion on Eulerian face lattices, h-polynomials,
/// and relative g-invariants.
#pragma once

#include "fan.hpp"
#include "polynomial.hpp"

#include <mutex>
#include <unordered_map>

namespace ihpoly {

namespace detail {

/// g of the graded interval [a, b] of a face lattice (an Eulerian poset).
/// For a cone's lattice, g(bottom, top) is the toric g-polynomial of the cone.
inline Poly g_interval(const FaceLattice& fl, int a, int b,
                       std::map<std::pair<int, int>, Poly>& memo)
{
    int r = fl.dim(b) - fl.dim(a);
    if (r <= 0) return Poly::one();
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
    Poly s_minus_1({-1, 0, 1});  // t^2 - 1
    Poly b_poly;
    for (int c = 0; c < fl.size(); ++c) {
        if (c == b || !fl.leq(a, c) || !fl.leq(c, b)) continue;
        int rc = fl.dim(c) - fl.dim(a);
        b_poly = b_poly + s_minus_1.pow(r - 1 - rc) * g_interval(fl, a, c, memo);
    }
    Poly one_minus_s({1, 0, -1});  // 1 - t^2
    Poly g = truncate(one_minus_s * b_poly, r - 1);
    memo.emplace(std::make_pair(a, b), g);
    return g;
}

inline std::unordered_map<std::string, Poly>& g_cone_memo()
{
    static std::unordered_map<std::string, Poly> memo;
    return memo;
}

inline std::mutex& g_cone_mutex()
{
    static std::mutex m;
    return m;
}

}  // namespace detail

/// Toric g-polynomial of a strictly convex cone (even polynomial in t).
/// g = 1 for dim <= 2; in general the truncated recursion over proper faces.
inline Poly g_cone(const Cone& c)
{
    if (!c.strictly_convex()) throw GeometryError("g_cone: cone is not strictly convex");
    if (c.dim() <= 2) return Poly::one();
    std::string key = c.key();
    {
        std::lock_guard<std::mutex> lock(detail::g_cone_mutex());
        auto it = detail::g_cone_memo().find(key);
        if (it != detail::g_cone_memo().end()) return it->second;
    }
    FaceLattice fl = cone_face_lattice(c);
    std::map<std::pair<int, int>, Poly> memo;
    Poly g = detail::g_interval(fl, fl.bottom, fl.top, memo);
    {
        std::lock_guard<std::mutex> lock(detail::g_cone_mutex());
        detail::g_cone_memo().emplace(key, g);
    }
    return g;
}

/// h-polynomial of a complete fan: sum over all cones of (t^2-1)^(n-dim) g.
inline Poly h_fan(const Fan& f)
{
    if (!f.is_complete()) throw FanError("h_fan: fan is not complete");
    Poly s_minus_1({-1, 0, 1});
    Poly h;
    for (const auto& c : f.all_cones()) h = h + s_minus_1.pow(f.ambient() - c.dim()) * g_cone(c);
    return h;
}

/// Relative g-invariant g(e, f) for faces f <= e of a cone face lattice,
/// defined by g(Q) = sum over f <= e' <= Q of g(e', f) g([e', Q]) for every
/// face Q >= f, and computed by forward substitution in rank order.
inline Poly relative_g(const FaceLattice& fl, int e, int f)
{
    if (!fl.leq(f, e)) throw GeometryError("relative_g: f is not a face of e");
    std::map<std::pair<int, int>, Poly> interval_memo;
    auto g_of = [&](int lo, int hi) { return detail::g_interval(fl, lo, hi, interval_memo); };
    // g(e', f) for all e' in [f, e], by increasing rank of e'
    std::vector<int> elems = fl.interval(f, e);
    std::sort(elems.begin(), elems.end(), [&](int a, int b) { return fl.dim(a) < fl.dim(b); });
    std::map<int, Poly> rel;
    for (int ep : elems) {
        Poly acc = g_of(fl.bottom, ep);  // g of the face ep itself
        for (int e2 : elems) {
            if (e2 == ep || !fl.leq(e2, ep)) continue;
            acc = acc - rel.at(e2) * g_of(e2, ep);
        }
        rel[ep] = acc;
    }
    return rel.at(e);
}

}  // namespace ihpoly
