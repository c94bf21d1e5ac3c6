/// Divisorial fans: a finite, intersection-closed, face-compatible family of
/// proper polyhedral divisors over a common curve. The validator synthesizes
/// missing pairwise intersections (reporting what it added) and checks the
/// face, degree and covering axioms plus properness of every member.
#pragma once

#include "fan.hpp"
#include "poly_divisor.hpp"

namespace ihpoly {

struct ValidationIssue {
    std::string code;  // short machine-readable tag
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> notes;
    bool ok() const { return errors.empty(); }

    void error(const std::string& code, const std::string& msg) { errors.push_back({code, msg}); }
    void note(const std::string& code, const std::string& msg) { notes.push_back({code, msg}); }
};

class DivisorialFan {
  public:
    DivisorialFan() = default;
    DivisorialFan(Curve curve, int lattice_rank, std::vector<PolyDivisor> divisors)
        : curve_(std::move(curve)), rank_(lattice_rank), divisors_(std::move(divisors))
    {
    }

    const Curve& curve() const { return curve_; }
    Curve& curve() { return curve_; }
    int rank() const { return rank_; }
    const std::vector<PolyDivisor>& divisors() const { return divisors_; }

    std::set<std::string> support() const
    {
        std::set<std::string> s;
        for (const auto& d : divisors_)
            for (const auto& p : d.support()) s.insert(p);
        return s;
    }

    /// The smallest fan containing all tails.
    Fan tail_fan() const
    {
        std::vector<Cone> tails;
        for (const auto& d : divisors_) tails.push_back(d.tail());
        return Fan::from_cones(rank_, tails);
    }

    /// Fan of the fiber over a labeled point: Cayley cones of the divisors
    /// whose locus contains it, plus every downward tail cone.
    Fan fiber_fan(const std::string& label) const
    {
        std::vector<Cone> cones;
        for (const auto& d : divisors_) {
            if (d.in_locus(label)) cones.push_back(cayley_cone(d.tail(), d.coefficient(label)));
            cones.push_back(downward_cone(d.tail()));
        }
        return Fan::from_cones(rank_ + 1, cones);
    }

    Fan generic_fiber_fan() const
    {
        std::set<std::string> taken = support();
        for (const auto& d : divisors_)
            for (const auto& p : d.excluded()) taken.insert(p);
        std::string fresh = "generic";
        int k = 0;
        while (taken.count(fresh)) fresh = "generic_" + std::to_string(++k);
        return fiber_fan(fresh);
    }

    /// Points where the fiber can differ from the generic one.
    std::set<std::string> special_points() const
    {
        std::set<std::string> pts = support();
        for (const auto& d : divisors_)
            for (const auto& p : d.excluded()) pts.insert(p);
        return pts;
    }

    /// The variety is complete iff every fiber fan is complete.
    bool is_complete_variety() const
    {
        if (rank_ == 0) return !divisors_.empty();
        for (const auto& p : special_points())
            if (!fiber_fan(p).is_complete()) return false;
        return generic_fiber_fan().is_complete();
    }

    /// Independent route to the same fact: the coefficients at each point tile
    /// the whole space (every facet of a full-dimensional coefficient is shared
    /// by exactly two of them).
    bool coefficients_cover(const std::string& label) const
    {
        std::vector<Polyhedron> cells;
        for (const auto& d : divisors_) {
            if (!d.in_locus(label)) continue;
            Polyhedron c = d.coefficient(label);
            if (c.dim() == rank_) cells.push_back(c);
        }
        if (cells.empty()) return rank_ == 0 && !divisors_.empty();
        std::map<std::string, int> facet_count;
        for (const auto& c : cells) {
            FaceLattice fl = polyhedron_face_lattice(c);
            for (const auto& f : fl.faces) {
                if (f.dim != rank_ - 1) continue;
                facet_count[face_polyhedron(c, f).key()] += 1;
            }
        }
        for (const auto& [k, cnt] : facet_count)
            if (cnt != 2) return false;
        return true;
    }

    std::string key() const
    {
        std::vector<std::string> keys;
        for (const auto& d : divisors_) keys.push_back(d.key());
        std::sort(keys.begin(), keys.end());
        std::string k = "F" + std::to_string(rank_) + "g" + std::to_string(curve_.genus) + "|";
        for (const auto& s : keys) k += s;
        return k;
    }

  private:
    Curve curve_;
    int rank_ = 0;
    std::vector<PolyDivisor> divisors_;
};

namespace detail {

/// Pairwise intersection of polyhedral divisors; the locus shrinks by the
/// points where coefficients are disjoint.
inline std::optional<PolyDivisor> intersect_divisors(const PolyDivisor& a, const PolyDivisor& b,
                                                     const Curve& curve)
{
    Cone tail = a.tail().intersect(b.tail());
    bool complete = a.complete_locus() && b.complete_locus();
    std::set<std::string> excluded = a.excluded();
    for (const auto& p : b.excluded()) excluded.insert(p);
    std::map<std::string, Polyhedron> coeffs;
    std::set<std::string> pts;
    for (const auto& [p, c] : a.nontrivial_coefficients()) pts.insert(p);
    for (const auto& [p, c] : b.nontrivial_coefficients()) pts.insert(p);
    for (const auto& p : pts) {
        if (!a.in_locus(p) || !b.in_locus(p)) continue;
        auto meet = a.coefficient(p).intersect(b.coefficient(p));
        if (!meet) {
            excluded.insert(p);
            continue;
        }
        // might not have the right recession cone if the inputs are invalid
        if (meet->recession_cone() != tail) return std::nullopt;
        coeffs.emplace(p, *meet);
    }
    (void)curve;
    bool result_complete = complete && excluded.empty();
    if (!result_complete && excluded.empty()) return std::nullopt;  // nothing to exclude
    return PolyDivisor::make(tail, coeffs, result_complete, excluded);
}

}  // namespace detail

/// Validate and close the fan: synthesize missing pairwise intersections,
/// check the divisorial-fan axioms, and report every violation.
inline std::pair<DivisorialFan, ValidationReport> validate_and_close(const DivisorialFan& fan)
{
    ValidationReport report;
    const Curve& curve = fan.curve();

    if (curve.genus < 0) report.error("curve.genus", "negative genus");
    if (curve.genus == 0 && curve.policy != Principality::Genus0)
        report.error("curve.policy", "genus 0 forces the genus0 principality policy");
    if (curve.genus > 0 && curve.policy == Principality::Genus0)
        report.error("curve.policy", "genus0 policy on a positive-genus curve");
    for (const auto& t : curve.table) {
        if (!t.is_integral() || t.total_degree() != 0)
            report.error("curve.table", "table entry " + t.to_string() +
                                            " is not an integral divisor of degree 0");
    }

    std::vector<PolyDivisor> divisors;
    std::set<std::string> seen;
    for (const auto& d : fan.divisors()) {
        if (d.ambient() != fan.rank()) {
            report.error("divisor.rank", "divisor ambient dimension differs from lattice rank");
            continue;
        }
        for (const auto& [p, c] : d.nontrivial_coefficients()) {
            if (!curve.has_point(p))
                report.error("divisor.point", "coefficient at unlabeled point [" + p + "]");
        }
        for (const auto& p : d.excluded()) {
            if (!curve.has_point(p))
                report.error("divisor.point", "excluded point [" + p + "] is not labeled");
        }
        if (seen.insert(d.key()).second) divisors.push_back(d);
    }
    if (divisors.empty()) {
        report.error("fan.empty", "no divisors");
        return {fan, report};
    }

    // closure under pairwise intersection
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            std::optional<PolyDivisor> meet;
            try {
                meet = detail::intersect_divisors(divisors[i], divisors[j], curve);
            } catch (const GeometryError& e) {
                report.error("fan.intersection",
                             "divisors " + std::to_string(j) + " and " + std::to_string(i) +
                                 ": " + e.what());
                continue;
            }
            if (!meet) {
                report.error("fan.intersection",
                             "divisors " + std::to_string(j) + " and " + std::to_string(i) +
                                 " do not intersect in a polyhedral divisor");
                continue;
            }
            if (seen.insert(meet->key()).second) {
                divisors.push_back(*meet);
                report.note("fan.closure", "added intersection of divisors " + std::to_string(j) +
                                               " and " + std::to_string(i));
            }
        }
    }

    DivisorialFan closed(curve, fan.rank(), divisors);

    // tails form a fan
    try {
        closed.tail_fan();
    } catch (const FanError& e) {
        report.error("fan.tails", e.what());
    }

    // face relations at every labeled point
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            for (const auto& p : curve.points) {
                if (!divisors[i].in_locus(p) || !divisors[j].in_locus(p)) continue;
                auto meet = divisors[i].coefficient(p).intersect(divisors[j].coefficient(p));
                if (!meet) continue;
                if (!meet->is_face_of(divisors[i].coefficient(p)) ||
                    !meet->is_face_of(divisors[j].coefficient(p))) {
                    report.error("fan.faces", "coefficients of divisors " + std::to_string(j) +
                                                  " and " + std::to_string(i) + " at [" + p +
                                                  "] do not meet in a common face");
                }
            }
        }
    }

    // degree relations, both orders
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        for (std::size_t j = 0; j < divisors.size(); ++j) {
            if (i == j) continue;
            std::optional<PolyDivisor> meet;
            try {
                meet = detail::intersect_divisors(divisors[i], divisors[j], curve);
            } catch (const GeometryError&) {
                continue;  // already reported
            }
            if (!meet) continue;
            std::optional<Polyhedron> lhs = meet->degree();
            std::optional<Polyhedron> rhs;
            if (auto degj = divisors[j].degree()) {
                Cone common = divisors[i].tail().intersect(divisors[j].tail());
                rhs = degj->intersect(cone_as_polyhedron(common));
            }
            bool equal = (!lhs && !rhs) || (lhs && rhs && *lhs == *rhs);
            if (!equal) {
                report.error("fan.degrees", "degree relation fails for divisors " +
                                                std::to_string(i) + " and " + std::to_string(j));
            }
        }
    }

    // loci cover the curve (generic points are always covered: exclusions are finite)
    for (const auto& p : curve.points) {
        bool covered = false;
        for (const auto& d : divisors)
            if (d.in_locus(p)) covered = true;
        if (!covered) report.error("fan.cover", "point [" + p + "] lies in no locus");
    }

    // properness of every member, including synthesized ones
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        ProperVerdict v = is_proper(divisors[i], curve);
        if (v.verdict == Tri::No)
            report.error("divisor.proper", "divisor " + std::to_string(i) + ": " + v.detail);
        else if (v.verdict == Tri::Unknown)
            report.error("divisor.principality", "divisor " + std::to_string(i) + ": " + v.detail);
    }

    return {closed, report};
}

}  // namespace ihpoly
