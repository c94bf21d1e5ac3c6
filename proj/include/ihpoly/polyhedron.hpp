/// Exact convex polyhedral geometry over Q: cones and polyhedra in V- and
/// H-representation, converted both ways by the incremental double description
/// method. All predicates are exact; there is no floating point anywhere.
///
/// Conventions:
///  - A Cone is stored by a canonical minimal generating set: a Hermite-reduced
///    basis of its lineality space plus the primitive extreme rays of the
///    pointed part, sorted lexicographically. The H-representation (facet
///    normals and span equations) is computed eagerly.
///  - A Polyhedron is conv(vertices) + cone(rays) with a nonempty exact vertex
///    set; polyhedra containing affine lines are rejected. The empty set is
///    never a Polyhedron (operations that can produce it return an optional).
#pragma once

#include "linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace ihpoly {

struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

struct TightSet {
    std::uint64_t w0 = 0, w1 = 0;
    void set(int i)
    {
        if (i < 64) w0 |= (std::uint64_t{1} << i);
        else w1 |= (std::uint64_t{1} << (i - 64));
    }
    friend TightSet operator&(const TightSet& a, const TightSet& b)
    {
        return TightSet{a.w0 & b.w0, a.w1 & b.w1};
    }
    bool contains(const TightSet& o) const
    {
        return (w0 & o.w0) == o.w0 && (w1 & o.w1) == o.w1;
    }
};

struct DDRay {
    Vec v;
    TightSet tight;
};

struct DDResult {
    std::vector<Vec> lin;   // basis of lineality space (not yet canonical)
    std::vector<Vec> rays;  // extreme rays modulo lineality, primitive
};

/// Extreme rays and lineality of {x : <a,x> >= 0 for a in ineqs, <e,x> = 0 for e in eqs}.
inline DDResult dd_from_inequalities(const std::vector<Vec>& ineqs, const std::vector<Vec>& eqs,
                                     int n)
{
    if (ineqs.size() + eqs.size() > 120)
        throw GeometryError("double description: too many constraints");
    std::vector<Vec> lin = nullspace(Mat(eqs.begin(), eqs.end()), n);
    std::vector<DDRay> rays;
    int processed = 0;
    for (const auto& a : ineqs) {
        // Pivot on a lineality vector not orthogonal to a, if any.
        int piv = -1;
        for (std::size_t i = 0; i < lin.size(); ++i) {
            if (dot(a, lin[i]) != 0) { piv = static_cast<int>(i); break; }
        }
        if (piv >= 0) {
            Vec l = lin[static_cast<std::size_t>(piv)];
            lin.erase(lin.begin() + piv);
            Rat al = dot(a, l);
            for (auto& m : lin) {
                Rat am = dot(a, m);
                if (am != 0) m = sub(m, scale(am / al, l));
            }
            for (auto& r : rays) {
                Rat ar = dot(a, r.v);
                if (ar != 0) r.v = sub(r.v, scale(ar / al, l));
                r.tight.set(processed);
            }
            DDRay fresh;
            fresh.v = al > 0 ? l : neg(l);
            for (int k = 0; k < processed; ++k) fresh.tight.set(k);
            rays.push_back(std::move(fresh));
            ++processed;
            continue;
        }
        std::vector<DDRay> pos, zero, negs;
        for (auto& r : rays) {
            Rat ar = dot(a, r.v);
            if (ar > 0) pos.push_back(std::move(r));
            else if (ar == 0) {
                r.tight.set(processed);
                zero.push_back(std::move(r));
            } else
                negs.push_back(std::move(r));
        }
        if (negs.empty()) {
            rays = std::move(pos);
            for (auto& r : zero) rays.push_back(std::move(r));
            ++processed;
            continue;
        }
        std::vector<DDRay> fresh;
        for (const auto& p : pos) {
            for (const auto& q : negs) {
                TightSet common = p.tight & q.tight;
                // combinatorial adjacency test against all current rays
                bool adjacent = true;
                for (const auto& group : {&pos, &zero, &negs}) {
                    for (const auto& s : *group) {
                        if (&s == &p || &s == &q) continue;
                        if (s.tight.contains(common)) { adjacent = false; break; }
                    }
                    if (!adjacent) break;
                }
                if (!adjacent) continue;
                DDRay r;
                r.v = primitive(sub(scale(dot(a, p.v), q.v), scale(dot(a, q.v), p.v)));
                r.tight = common;
                r.tight.set(processed);
                fresh.push_back(std::move(r));
            }
        }
        rays = std::move(pos);
        for (auto& r : zero) rays.push_back(std::move(r));
        for (auto& r : fresh) rays.push_back(std::move(r));
        ++processed;
    }
    DDResult out;
    out.lin = std::move(lin);
    for (auto& r : rays) out.rays.push_back(primitive(r.v));
    return out;
}

inline std::vector<Vec> sorted_unique(std::vector<Vec> vs)
{
    std::sort(vs.begin(), vs.end(), lex_less);
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

/// Canonical Hermite-reduced basis for the span of the given vectors.
inline std::vector<Vec> canonical_subspace_basis(const std::vector<Vec>& span_vecs, int n)
{
    if (span_vecs.empty()) return {};
    // orthogonal complement, then saturated integer kernel of it
    std::vector<Vec> comp = nullspace(Mat(span_vecs.begin(), span_vecs.end()), n);
    return integer_kernel(comp, n);
}

}  // namespace detail

class Cone {
  public:
    Cone() : n_(0) {}

    /// Cone generated by arbitrary rational vectors (lineality allowed via
    /// opposite generators).
    static Cone from_generators(int n, const std::vector<Vec>& gens)
    {
        // Dual side first: facets/equations are the extreme rays/lineality of
        // the dual cone {m : <m,g> >= 0}.
        auto dual = detail::dd_from_inequalities(gens, {}, n);
        Cone c;
        c.n_ = n;
        c.eqs_ = detail::canonical_subspace_basis(dual.lin, n);
        c.facets_ = detail::sorted_unique(dual.rays);
        c.finish_from_constraints();
        return c;
    }

    static Cone from_constraints(int n, const std::vector<Vec>& ineqs, const std::vector<Vec>& eqs)
    {
        // Round-trip through generators to canonicalize both representations.
        auto prim = detail::dd_from_inequalities(ineqs, eqs, n);
        std::vector<Vec> gens = prim.rays;
        for (const auto& l : prim.lin) {
            gens.push_back(primitive(l));
            gens.push_back(primitive(neg(l)));
        }
        return from_generators(n, gens);
    }

    static Cone zero(int n) { return from_generators(n, {}); }

    static Cone full_space(int n)
    {
        std::vector<Vec> gens;
        for (int i = 0; i < n; ++i) {
            Vec e = zero_vec(n);
            e[static_cast<std::size_t>(i)] = 1;
            gens.push_back(e);
            gens.push_back(neg(e));
        }
        return from_generators(n, gens);
    }

    int ambient() const { return n_; }
    int dim() const { return n_ - static_cast<int>(eqs_.size()); }
    int lineality_dim() const { return static_cast<int>(lin_.size()); }
    bool strictly_convex() const { return lin_.empty(); }
    bool is_zero() const { return dim() == 0; }

    const std::vector<Vec>& rays() const { return rays_; }
    const std::vector<Vec>& lineality() const { return lin_; }
    const std::vector<Vec>& facets() const { return facets_; }
    const std::vector<Vec>& equations() const { return eqs_; }

    /// Minimal canonical generating set (lineality basis with both signs, then rays).
    std::vector<Vec> generators() const
    {
        std::vector<Vec> g;
        for (const auto& l : lin_) {
            g.push_back(l);
            g.push_back(neg(l));
        }
        for (const auto& r : rays_) g.push_back(r);
        return g;
    }

    bool contains(const Vec& v) const
    {
        for (const auto& e : eqs_)
            if (dot(e, v) != 0) return false;
        for (const auto& f : facets_)
            if (dot(f, v) < 0) return false;
        return true;
    }

    bool contains(const Cone& other) const
    {
        for (const auto& g : other.generators())
            if (!contains(g)) return false;
        return true;
    }

    Cone dual() const
    {
        std::vector<Vec> gens = facets_;
        for (const auto& e : eqs_) {
            gens.push_back(e);
            gens.push_back(neg(e));
        }
        return from_generators(n_, gens);
    }

    Cone intersect(const Cone& other) const
    {
        std::vector<Vec> ineqs = facets_;
        ineqs.insert(ineqs.end(), other.facets_.begin(), other.facets_.end());
        std::vector<Vec> eqs = eqs_;
        eqs.insert(eqs.end(), other.eqs_.begin(), other.eqs_.end());
        return from_constraints(n_, ineqs, eqs);
    }

    /// A point in the relative interior; the sum of the extreme rays (a lattice
    /// point) whenever the cone is not a linear subspace.
    Vec relative_interior_point() const
    {
        Vec p = zero_vec(n_);
        for (const auto& r : rays_) p = add(p, r);
        return p;
    }

    /// The face minimizing (= annihilating) m, for m in the dual cone.
    Cone face(const Vec& m) const
    {
        std::vector<Vec> gens;
        for (const auto& l : lin_) {
            if (dot(m, l) != 0) throw GeometryError("face: functional not in dual cone");
            gens.push_back(l);
            gens.push_back(neg(l));
        }
        for (const auto& r : rays_) {
            Rat mr = dot(m, r);
            if (mr < 0) throw GeometryError("face: functional not in dual cone");
            if (mr == 0) gens.push_back(r);
        }
        return from_generators(n_, gens);
    }

    bool is_face_of(const Cone& big) const
    {
        if (!big.contains(*this)) return false;
        // tight constraints of *this inside big
        std::vector<Vec> eqs = big.eqs_;
        for (const auto& f : big.facets_) {
            bool tight = true;
            for (const auto& g : generators()) {
                if (dot(f, g) != 0) { tight = false; break; }
            }
            if (rays_.empty() && lin_.empty()) tight = true;  // zero cone: all tight
            if (tight) eqs.push_back(f);
        }
        Cone cut = from_constraints(n_, big.facets_, eqs);
        return cut == *this;
    }

    bool operator==(const Cone& o) const
    {
        return n_ == o.n_ && lin_ == o.lin_ && rays_ == o.rays_;
    }
    bool operator!=(const Cone& o) const { return !(*this == o); }

    /// Canonical structural key, usable for memoization and ordering.
    std::string key() const
    {
        std::string k = "C" + std::to_string(n_) + "|";
        for (const auto& l : lin_) k += vec_to_string(l);
        k += "|";
        for (const auto& r : rays_) k += vec_to_string(r);
        return k;
    }

  private:
    void finish_from_constraints()
    {
        auto prim = detail::dd_from_inequalities(facets_, eqs_, n_);
        lin_ = detail::canonical_subspace_basis(prim.lin, n_);
        rays_ = detail::sorted_unique(prim.rays);
        if (!lin_.empty()) {
            // store extreme rays of the pointed part C with L^perp
            std::vector<Vec> cut = facets_;
            std::vector<Vec> eqs = eqs_;
            for (const auto& l : lin_) eqs.push_back(l);  // <l, x> = 0 cuts to L^perp
            auto pointed = detail::dd_from_inequalities(cut, eqs, n_);
            rays_ = detail::sorted_unique(pointed.rays);
        }
    }

    int n_;
    std::vector<Vec> lin_, rays_, facets_, eqs_;
};

class Polyhedron {
  public:
    Polyhedron() : n_(0) {}

    static Polyhedron from_vertices_rays(int n, const std::vector<Vec>& verts,
                                         const std::vector<Vec>& rays)
    {
        if (verts.empty()) throw GeometryError("polyhedron needs at least one vertex");
        std::vector<Vec> gens;
        for (const auto& v : verts) {
            Vec h = v;
            h.push_back(1);
            gens.push_back(h);
        }
        for (const auto& r : rays) {
            Vec h = r;
            h.push_back(0);
            gens.push_back(h);
        }
        Cone hom = Cone::from_generators(n + 1, gens);
        return from_homogenization(n, hom);
    }

    /// {x : <a,x> >= b} for (a,b) in ineqs, <a,x> = b for (a,b) in eqs.
    /// Empty sets come back as nullopt; affine lines are a representation error.
    static std::optional<Polyhedron> from_constraints(
        int n, const std::vector<std::pair<Vec, Rat>>& ineqs,
        const std::vector<std::pair<Vec, Rat>>& eqs)
    {
        std::vector<Vec> hi, he;
        for (const auto& [a, b] : ineqs) {
            Vec h = a;
            h.push_back(-b);
            hi.push_back(h);
        }
        Vec last = zero_vec(n + 1);
        last[static_cast<std::size_t>(n)] = 1;
        hi.push_back(last);
        for (const auto& [a, b] : eqs) {
            Vec h = a;
            h.push_back(-b);
            he.push_back(h);
        }
        Cone hom = Cone::from_constraints(n + 1, hi, he);
        bool has_point = false;
        for (const auto& r : hom.rays())
            if (r[static_cast<std::size_t>(n)] > 0) has_point = true;
        if (!has_point) return std::nullopt;
        return from_homogenization(n, hom);
    }

    int ambient() const { return n_; }
    const std::vector<Vec>& vertices() const { return verts_; }
    const std::vector<Vec>& rays() const { return rays_; }
    const std::vector<std::pair<Vec, Rat>>& inequalities() const { return ineqs_; }
    const std::vector<std::pair<Vec, Rat>>& equations() const { return eqs_; }

    int dim() const
    {
        std::vector<Vec> dirs = rays_;
        for (std::size_t i = 1; i < verts_.size(); ++i) dirs.push_back(sub(verts_[i], verts_[0]));
        return rank_of_rows(dirs);
    }

    bool is_point() const { return verts_.size() == 1 && rays_.empty(); }

    bool contains(const Vec& x) const
    {
        for (const auto& [a, b] : eqs_)
            if (dot(a, x) != b) return false;
        for (const auto& [a, b] : ineqs_)
            if (dot(a, x) < b) return false;
        return true;
    }

    bool contains(const Polyhedron& other) const
    {
        for (const auto& v : other.verts_)
            if (!contains(v)) return false;
        Cone rec = recession_cone();
        for (const auto& r : other.rays_)
            if (!rec.contains(r)) return false;
        return true;
    }

    Cone recession_cone() const { return Cone::from_generators(n_, rays_); }

    std::optional<Polyhedron> intersect(const Polyhedron& other) const
    {
        auto ineqs = ineqs_;
        ineqs.insert(ineqs.end(), other.ineqs_.begin(), other.ineqs_.end());
        auto eqs = eqs_;
        eqs.insert(eqs.end(), other.eqs_.begin(), other.eqs_.end());
        return from_constraints(n_, ineqs, eqs);
    }

    Polyhedron minkowski_sum(const Polyhedron& other) const
    {
        std::vector<Vec> verts;
        for (const auto& v : verts_)
            for (const auto& w : other.verts_) verts.push_back(add(v, w));
        std::vector<Vec> rays = rays_;
        rays.insert(rays.end(), other.rays_.begin(), other.rays_.end());
        return from_vertices_rays(n_, verts, rays);
    }

    Polyhedron translate(const Vec& t) const
    {
        std::vector<Vec> verts;
        for (const auto& v : verts_) verts.push_back(add(v, t));
        return from_vertices_rays(n_, verts, rays_);
    }

    /// min over the polyhedron of <m, .>; nullopt encodes minus infinity.
    std::optional<Rat> eval_support(const Vec& m) const
    {
        for (const auto& r : rays_)
            if (dot(m, r) < 0) return std::nullopt;
        Rat best = dot(m, verts_[0]);
        for (std::size_t i = 1; i < verts_.size(); ++i) best = std::min(best, dot(m, verts_[i]));
        return best;
    }

    /// The face on which <m, .> attains its minimum (m must be bounded below).
    Polyhedron face(const Vec& m) const
    {
        auto mv = eval_support(m);
        if (!mv) throw GeometryError("face: functional unbounded below");
        std::vector<Vec> verts, rays;
        for (const auto& v : verts_)
            if (dot(m, v) == *mv) verts.push_back(v);
        for (const auto& r : rays_)
            if (dot(m, r) == 0) rays.push_back(r);
        return from_vertices_rays(n_, verts, rays);
    }

    bool is_face_of(const Polyhedron& big) const
    {
        if (!big.contains(*this)) return false;
        auto tight_on_all = [&](const Vec& a, const Rat& b) {
            for (const auto& v : verts_)
                if (dot(a, v) != b) return false;
            for (const auto& r : rays_)
                if (dot(a, r) != 0) return false;
            return true;
        };
        auto eqs = big.eqs_;
        for (const auto& [a, b] : big.ineqs_)
            if (tight_on_all(a, b)) eqs.push_back({a, b});
        auto cut = from_constraints(n_, big.ineqs_, eqs);
        return cut && *cut == *this;
    }

    /// Image under the linear map given by matrix rows (k x n).
    Polyhedron linear_image(const Mat& map_rows) const
    {
        int k = static_cast<int>(map_rows.size());
        auto apply = [&](const Vec& x) {
            Vec y(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) y[static_cast<std::size_t>(i)] = dot(map_rows[static_cast<std::size_t>(i)], x);
            return y;
        };
        std::vector<Vec> verts, rays;
        for (const auto& v : verts_) verts.push_back(apply(v));
        for (const auto& r : rays_) {
            Vec y = apply(r);
            if (!is_zero(y)) rays.push_back(y);
        }
        return from_vertices_rays(k, verts, rays);
    }

    Vec relative_interior_point() const
    {
        Vec p = zero_vec(n_);
        for (const auto& v : verts_) p = add(p, v);
        p = scale(Rat(1) / Rat(static_cast<int>(verts_.size())), p);
        for (const auto& r : rays_) p = add(p, r);
        return p;
    }

    bool operator==(const Polyhedron& o) const
    {
        return n_ == o.n_ && verts_ == o.verts_ && rays_ == o.rays_;
    }
    bool operator!=(const Polyhedron& o) const { return !(*this == o); }

    std::string key() const
    {
        std::string k = "P" + std::to_string(n_) + "|";
        for (const auto& v : verts_) k += vec_to_string(v);
        k += "|";
        for (const auto& r : rays_) k += vec_to_string(r);
        return k;
    }

  private:
    static Polyhedron from_homogenization(int n, const Cone& hom)
    {
        if (hom.lineality_dim() > 0)
            throw GeometryError("polyhedron contains an affine line");
        Polyhedron p;
        p.n_ = n;
        for (const auto& r : hom.rays()) {
            Rat lam = r[static_cast<std::size_t>(n)];
            Vec x(r.begin(), r.end() - 1);
            if (lam > 0)
                p.verts_.push_back(scale(Rat(1) / lam, x));
            else if (lam == 0)
                p.rays_.push_back(x);
            else
                throw GeometryError("homogenization has a ray below the hyperplane");
        }
        if (p.verts_.empty()) throw GeometryError("polyhedron without vertices");
        std::sort(p.verts_.begin(), p.verts_.end(), lex_less);
        std::sort(p.rays_.begin(), p.rays_.end(), lex_less);
        for (const auto& f : hom.facets()) {
            Vec a(f.begin(), f.end() - 1);
            Rat c = f[static_cast<std::size_t>(n)];
            if (is_zero(a)) continue;  // the lambda >= 0 facet
            p.ineqs_.push_back({a, -c});
        }
        for (const auto& e : hom.equations()) {
            Vec a(e.begin(), e.end() - 1);
            Rat c = e[static_cast<std::size_t>(n)];
            if (is_zero(a)) continue;
            p.eqs_.push_back({a, -c});
        }
        return p;
    }

    int n_;
    std::vector<Vec> verts_, rays_;
    std::vector<std::pair<Vec, Rat>> ineqs_, eqs_;
};

/// Pointed cones as polyhedra with apex at the origin.
inline Polyhedron cone_as_polyhedron(const Cone& c)
{
    if (!c.strictly_convex()) throw GeometryError("cone with lineality is not a polyhedron here");
    return Polyhedron::from_vertices_rays(c.ambient(), {zero_vec(c.ambient())}, c.rays());
}

inline bool polyhedron_in_cone(const Polyhedron& p, const Cone& c)
{
    for (const auto& v : p.vertices())
        if (!c.contains(v)) return false;
    for (const auto& r : p.rays())
        if (!c.contains(r)) return false;
    return true;
}

}  // namespace ihpoly
