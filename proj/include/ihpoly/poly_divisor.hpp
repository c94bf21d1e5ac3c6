/// Polyhedral divisors: a strictly convex tail cone, finitely many polyhedral
/// coefficients over labeled curve points, and a locus (the whole curve or the
/// complement of finitely many points). Properness is the degree/principality
/// test that makes Spec of the associated algebra work out.
#pragma once

#include "curve.hpp"
#include "face_lattice.hpp"

#include <optional>

namespace ihpoly {

class PolyDivisor {
  public:
    PolyDivisor() = default;

    /// Coefficients equal to the tail are dropped; recession cones must match
    /// the tail; coefficient points must lie in the locus.
    static PolyDivisor make(const Cone& tail, const std::map<std::string, Polyhedron>& coeffs,
                            bool complete_locus, const std::set<std::string>& excluded = {})
    {
        if (!tail.strictly_convex()) throw GeometryError("polyhedral divisor: tail has lineality");
        if (!complete_locus && excluded.empty())
            throw GeometryError("polyhedral divisor: affine locus must exclude a point");
        PolyDivisor d;
        d.tail_ = tail;
        d.complete_ = complete_locus;
        d.excluded_ = complete_locus ? std::set<std::string>{} : excluded;
        Polyhedron trivial = cone_as_polyhedron(tail);
        for (const auto& [p, poly] : coeffs) {
            if (poly.ambient() != tail.ambient())
                throw GeometryError("polyhedral divisor: coefficient dimension mismatch");
            if (poly.recession_cone() != tail)
                throw GeometryError("polyhedral divisor: coefficient at [" + p +
                                    "] has recession cone different from the tail");
            if (!d.in_locus(p))
                throw GeometryError("polyhedral divisor: coefficient at excluded point [" + p + "]");
            if (poly == trivial) continue;
            d.coeffs_.emplace(p, poly);
        }
        return d;
    }

    const Cone& tail() const { return tail_; }
    int ambient() const { return tail_.ambient(); }
    bool complete_locus() const { return complete_; }
    const std::set<std::string>& excluded() const { return excluded_; }
    bool in_locus(const std::string& p) const { return complete_ || excluded_.count(p) == 0; }
    const std::map<std::string, Polyhedron>& nontrivial_coefficients() const { return coeffs_; }

    Polyhedron coefficient(const std::string& p) const
    {
        auto it = coeffs_.find(p);
        if (it != coeffs_.end()) return it->second;
        return cone_as_polyhedron(tail_);
    }

    std::vector<std::string> support() const
    {
        std::vector<std::string> s;
        for (const auto& [p, poly] : coeffs_) s.push_back(p);
        return s;
    }

    /// Minkowski sum of all coefficients (complete locus only).
    std::optional<Polyhedron> degree() const
    {
        if (!complete_) return std::nullopt;
        Polyhedron acc = cone_as_polyhedron(tail_);
        for (const auto& [p, poly] : coeffs_) acc = acc.minkowski_sum(poly);
        return acc;
    }

    /// Evaluation at m in the dual of the tail.
    QDivisor evaluate(const Vec& m) const
    {
        QDivisor d;
        for (const auto& [p, poly] : coeffs_) {
            auto val = poly.eval_support(m);
            if (!val)
                throw GeometryError("evaluate: functional " + vec_to_string(m) +
                                    " unbounded below on coefficient at [" + p + "]");
            d.add(p, *val);
        }
        if (!tail_.dual().contains(m))
            throw GeometryError("evaluate: functional " + vec_to_string(m) +
                                " is not in the dual of the tail");
        return d;
    }

    bool operator==(const PolyDivisor& o) const
    {
        return tail_ == o.tail_ && complete_ == o.complete_ && excluded_ == o.excluded_ &&
               coeffs_ == o.coeffs_;
    }

    std::string key() const
    {
        std::string k = "D[" + tail_.key() + "|";
        for (const auto& [p, poly] : coeffs_) k += p + ":" + poly.key() + ";";
        k += complete_ ? "|Y" : "|A";
        for (const auto& p : excluded_) k += "-" + p;
        return k + "]";
    }

  private:
    Cone tail_;
    std::map<std::string, Polyhedron> coeffs_;
    bool complete_ = true;
    std::set<std::string> excluded_;
};

struct ProperVerdict {
    Tri verdict = Tri::Yes;
    std::string detail;
    bool ok() const { return verdict == Tri::Yes; }
};

/// Faces of the tail whose dual face carries critical evaluations: those
/// meeting the degree. Returns pairs (face, generators of the dual face).
inline std::vector<std::pair<Cone, std::vector<Vec>>> critical_faces(const PolyDivisor& d)
{
    std::vector<std::pair<Cone, std::vector<Vec>>> out;
    auto deg = d.degree();
    if (!deg) return out;
    const Cone& tail = d.tail();
    for (const auto& tau : all_faces(tail)) {
        auto meet = deg->intersect(cone_as_polyhedron(tau));
        if (!meet) continue;
        // dual face sigma^vee cap tau^perp
        std::vector<Vec> eqs;
        for (const auto& g : tau.generators()) eqs.push_back(g);
        Cone dual_face = Cone::from_constraints(tail.ambient(), tail.rays(), eqs);
        std::vector<Vec> gens;
        for (const auto& r : dual_face.rays()) gens.push_back(r);
        for (const auto& l : dual_face.lineality()) {
            gens.push_back(l);
            gens.push_back(neg(l));
        }
        out.push_back({tau, gens});
    }
    return out;
}

/// Properness: affine loci are always proper; over the whole curve the degree
/// must be strictly contained in the tail and every critical evaluation must
/// have a principal positive multiple. The evaluation map is linear on each
/// critical dual face, so testing its generators is exact.
inline ProperVerdict is_proper(const PolyDivisor& d, const Curve& curve)
{
    if (!d.complete_locus()) return {};
    auto deg = d.degree();
    if (!polyhedron_in_cone(*deg, d.tail()))
        return {Tri::No, "degree is not contained in the tail cone"};
    if (*deg == cone_as_polyhedron(d.tail()))
        return {Tri::No, "degree equals the tail cone (containment is not strict)"};
    for (const auto& [tau, gens] : critical_faces(d)) {
        for (const auto& m : gens) {
            QDivisor ev = d.evaluate(m);
            Tri p = is_principal_multiple(ev, curve);
            if (p == Tri::Yes) continue;
            std::string what = (p == Tri::No ? "no principal multiple for " : "principality unknown for ");
            return {p, what + "evaluation " + ev.to_string() + " at m = " + vec_to_string(m)};
        }
    }
    return {};
}

}  // namespace ihpoly
