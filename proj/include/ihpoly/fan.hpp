/// Fans of strictly convex cones: validity, exact completeness testing,
/// Cayley cones and star quotients.
#pragma once

#include "face_lattice.hpp"

#include <map>

namespace ihpoly {

struct FanError : std::runtime_error {
    explicit FanError(const std::string& what) : std::runtime_error(what) {}
};

class Fan {
  public:
    /// Builds a fan from generating cones: faces of other cones are dropped,
    /// duplicates removed, and the fan axioms are checked pairwise.
    static Fan from_cones(int n, const std::vector<Cone>& cones)
    {
        Fan f;
        f.n_ = n;
        std::map<std::string, Cone> dedup;
        for (const auto& c : cones) {
            if (c.ambient() != n) throw FanError("fan: ambient dimension mismatch");
            if (!c.strictly_convex()) throw FanError("fan: cone is not strictly convex");
            dedup.emplace(c.key(), c);
        }
        std::vector<Cone> all;
        for (auto& [k, c] : dedup) all.push_back(c);
        for (std::size_t i = 0; i < all.size(); ++i) {
            bool maximal = true;
            for (std::size_t j = 0; j < all.size(); ++j) {
                if (i == j) continue;
                if (all[i].dim() <= all[j].dim() && all[i] != all[j] &&
                    all[i].is_face_of(all[j])) {
                    maximal = false;
                    break;
                }
            }
            if (maximal) f.max_cones_.push_back(all[i]);
        }
        for (std::size_t i = 0; i < f.max_cones_.size(); ++i) {
            for (std::size_t j = i + 1; j < f.max_cones_.size(); ++j) {
                Cone meet = f.max_cones_[i].intersect(f.max_cones_[j]);
                if (!meet.is_face_of(f.max_cones_[i]) || !meet.is_face_of(f.max_cones_[j])) {
                    throw FanError("fan axiom violated: intersection of cones " +
                                   std::to_string(i) + " and " + std::to_string(j) +
                                   " is not a common face");
                }
            }
        }
        return f;
    }

    int ambient() const { return n_; }
    const std::vector<Cone>& maximal_cones() const { return max_cones_; }

    /// Full face closure (each face once, canonical).
    std::vector<Cone> all_cones() const
    {
        std::map<std::string, Cone> seen;
        for (const auto& c : max_cones_)
            for (const auto& f : all_faces(c)) seen.emplace(f.key(), f);
        std::vector<Cone> out;
        for (auto& [k, c] : seen) out.push_back(c);
        return out;
    }

    std::vector<Vec> rays() const
    {
        std::vector<Vec> rs;
        for (const auto& c : max_cones_)
            for (const auto& r : c.rays()) rs.push_back(r);
        return detail::sorted_unique(rs);
    }

    int ray_count() const { return static_cast<int>(rays().size()); }

    /// Exact completeness: every maximal cone is full-dimensional and every
    /// facet of a maximal cone is a facet of exactly two of them.
    bool is_complete() const
    {
        if (max_cones_.empty()) return false;
        if (n_ == 0) return true;  // the zero cone covers the zero space
        std::map<std::string, int> facet_count;
        for (const auto& c : max_cones_) {
            if (c.dim() != n_) return false;
            FaceLattice fl = cone_face_lattice(c);
            for (const auto& f : fl.faces) {
                if (f.dim != n_ - 1) continue;
                facet_count[face_cone(c, f).key()] += 1;
            }
        }
        for (const auto& [k, cnt] : facet_count)
            if (cnt != 2) return false;
        return true;
    }

    bool operator==(const Fan& o) const
    {
        if (n_ != o.n_ || max_cones_.size() != o.max_cones_.size()) return false;
        std::set<std::string> a, b;
        for (const auto& c : max_cones_) a.insert(c.key());
        for (const auto& c : o.max_cones_) b.insert(c.key());
        return a == b;
    }

  private:
    int n_ = 0;
    std::vector<Cone> max_cones_;
};

/// Cone((tail x {0}) u (coeff x {1})) in one higher dimension.
inline Cone cayley_cone(const Cone& tail, const Polyhedron& coeff)
{
    int n = tail.ambient();
    std::vector<Vec> gens;
    for (const auto& r : tail.rays()) {
        Vec g = r;
        g.push_back(0);
        gens.push_back(g);
    }
    for (const auto& v : coeff.vertices()) {
        Vec g = v;
        g.push_back(1);
        gens.push_back(g);
    }
    for (const auto& r : coeff.rays()) {
        Vec g = r;
        g.push_back(0);
        gens.push_back(g);
    }
    return Cone::from_generators(n + 1, gens);
}

/// Cone((tail x {0}) u (tail x {-1})): the downward cone of a fiber fan.
inline Cone downward_cone(const Cone& tail)
{
    int n = tail.ambient();
    std::vector<Vec> gens;
    for (const auto& r : tail.rays()) {
        Vec g = r;
        g.push_back(0);
        gens.push_back(g);
    }
    Vec down = zero_vec(n + 1);
    down[static_cast<std::size_t>(n)] = -1;
    gens.push_back(down);
    return Cone::from_generators(n + 1, gens);
}

/// Image of the face `big` in the quotient of the lattice by the span of its
/// face `small`; a strictly convex cone of dimension dim(big) - dim(small).
inline Cone star_quotient(const Cone& big, const Cone& small)
{
    if (!small.is_face_of(big)) throw GeometryError("star_quotient: not a face");
    int n = big.ambient();
    std::vector<Vec> span_gens = small.generators();
    std::vector<Vec> lat = detail::canonical_subspace_basis(span_gens, n);
    int k = static_cast<int>(lat.size());
    auto basis = extend_to_lattice_basis(lat, n);
    Mat bmat(basis.begin(), basis.end());
    // coordinates w.r.t. basis: x = sum c_i b_i -> c = (B^T)^-1 x
    Mat bt(static_cast<std::size_t>(n), zero_vec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            bt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                bmat[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    auto inv = inverse(bt);
    if (!inv) throw GeometryError("star_quotient: degenerate basis");
    std::vector<Vec> images;
    for (const auto& g : big.generators()) {
        Vec c(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = dot((*inv)[static_cast<std::size_t>(i)], g);
        Vec q(c.begin() + k, c.end());
        if (!is_zero(q)) images.push_back(q);
    }
    return Cone::from_generators(n - k, images);
}

}  // namespace ihpoly
