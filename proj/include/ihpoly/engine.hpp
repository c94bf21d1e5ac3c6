/// The recursive intersection-cohomology engine: the contraction-free
/// formula, relative-spectrum and attractive-fixed-point Poincare
/// polynomials, decomposition multiplicities by incidence inversion, and the
/// top-level computation with its closed-form surface/threefold shortcuts.
#pragma once

#include "downgrade.hpp"
#include "incidence.hpp"
#include "toric_g.hpp"

namespace ihpoly {

struct OrbitTrace {
    std::string key;
    int orbit_dim = 0;
    int tail_dim = 0;
    int corank = 0;
    Poly x_tilde;                 // relative spectrum of the pointed divisor
    Poly x_attractive;            // attractive fixed point value
    Poly orbit_closure;           // h of the star fan
    Laurent multiplicity;         // S_O
    std::map<int, Laurent> r_row;  // R(other, this) over orbits below this one
};

struct PoincareReport {
    Poly poincare;
    Poly base;                       // contraction-free part
    Poly tail_h;                     // h of the tail fan
    std::map<std::string, Poly> fiber_h;
    Int refine_index = 1;
    std::vector<OrbitTrace> orbits;
};

struct MultiplicityData {
    HFPoset hf;
    IncidenceFunction r, r_inv;
    std::vector<Laurent> eta;  // (P_Xtilde - P_X) t^(-dim X) per element
    std::vector<Laurent> s;    // multiplicity generating functions
    std::vector<Poly> x_tilde, x_attr;
    std::vector<int> corank;
};

class Engine {
  public:
    /// Complete contraction-free varieties:
    /// ((1-r)t^2 + 2g t + 1-r) h(tail fan) + sum over special fibers of h.
    Poly poincare_contraction_free(const DivisorialFan& fan)
    {
        long rho = fan.curve().genus;
        auto supp = fan.support();
        long long r = static_cast<long long>(supp.size());
        Poly factor({1 - r, 2 * rho, 1 - r});
        Poly acc = factor * h_fan(fan.tail_fan());
        for (const auto& y : supp) acc = acc + h_fan(fan.fiber_fan(y));
        return acc;
    }

    /// Relative spectrum of a proper divisor with full-dimensional tail:
    /// (t^2 + 2g t + 1 - r) g(tail) + sum over the support of g(Cayley cone).
    Poly poincare_relative_spectrum(const PolyDivisor& d, const Curve& curve)
    {
        if (!d.complete_locus())
            throw EngineError("relative spectrum: locus must be the whole curve");
        if (d.tail().dim() != d.ambient())
            throw EngineError("relative spectrum: tail must be full-dimensional");
        {
            ProperVerdict v = is_proper(d, curve);
            if (!v.ok()) throw EngineError("relative spectrum: divisor not proper: " + v.detail);
        }
        long rho = curve.genus;
        long long r = static_cast<long long>(d.support().size());
        Poly acc = Poly({1 - r, 2 * rho, 1}) * g_cone(d.tail());
        for (const auto& [y, poly] : d.nontrivial_coefficients())
            acc = acc + g_cone(cayley_cone(d.tail(), poly));
        return acc;
    }

    Poly poincare_attractive(const PolyDivisor& d, const Curve& curve)
    {
        return poincare_attractive(d, curve, default_interior_direction(d.tail()));
    }

    /// Affine variety with a unique attractive fixed point: truncation of
    /// (1 - t^2) times the Poincare polynomial of the downgraded projective
    /// variety; rank one collapses to the curve.
    Poly poincare_attractive(const PolyDivisor& d, const Curve& curve, const Vec& u)
    {
        int n = d.ambient();
        if (d.tail().dim() != n) throw EngineError("attractive: tail must be full-dimensional");
        if (!d.complete_locus()) throw EngineError("attractive: locus must be the whole curve");
        std::string key = d.key() + curve_signature(curve) + "|u" + vec_to_string(u);
        auto it = attractive_memo_.find(key);
        if (it != attractive_memo_.end()) return it->second;
        Poly result;
        if (n == 1) {
            ProperVerdict v = is_proper(d, curve);
            if (!v.ok()) throw EngineError("attractive: divisor not proper: " + v.detail);
            result = Poly({1, 2 * curve.genus});
        } else {
            DivisorialFan down = downgrade(d, curve, u);
            Poly projective = poincare_complete(down).poincare;
            result = truncate(Poly({1, 0, -1}) * projective, n);
        }
        attractive_memo_.emplace(key, result);
        return result;
    }

    /// R-function of the orbit poset: R(O1,O2) = t^(-dim O1) g of the star
    /// quotient of the tail faces.
    IncidenceFunction r_function(const HFPoset& hf)
    {
        IncidenceFunction r;
        r.poset = &hf;
        for (int i = 0; i < hf.size(); ++i) {
            for (int j = 0; j < hf.size(); ++j) {
                if (!hf.leq(i, j)) continue;
                const auto& ei = hf.elements[static_cast<std::size_t>(i)];
                const auto& ej = hf.elements[static_cast<std::size_t>(j)];
                Poly g = g_cone(star_quotient(ej.tail_face, ei.tail_face));
                r.values[{i, j}] = Laurent::from_poly(g).shifted(-ei.orbit_dim);
            }
        }
        return r;
    }

    /// h of the star fan of an orbit: the fan of the quotients of the tail
    /// faces of all orbits above it. Must be complete (orbit closures are).
    Poly orbit_closure_poincare(const HFPoset& hf, int idx)
    {
        const auto& e = hf.elements[static_cast<std::size_t>(idx)];
        std::vector<Cone> cones;
        for (int j = 0; j < hf.size(); ++j) {
            if (!hf.leq(idx, j)) continue;
            cones.push_back(
                star_quotient(hf.elements[static_cast<std::size_t>(j)].tail_face, e.tail_face));
        }
        Fan star = [&] {
            try {
                return Fan::from_cones(e.orbit_dim, cones);
            } catch (const FanError& err) {
                throw EngineError(std::string("orbit closure: star is not a fan: ") + err.what());
            }
        }();
        if (!star.is_complete()) throw EngineError("orbit closure: star fan is not complete");
        return h_fan(star);
    }

    /// Multiplicity generating functions S_O on a validated, closed, refined
    /// fan, by incidence inversion of the stalk identity.
    MultiplicityData multiplicities(const DivisorialFan& fan)
    {
        MultiplicityData md;
        md.hf = hf_poset(fan);
        int n = fan.rank();
        int count = md.hf.size();
        md.eta.resize(static_cast<std::size_t>(count));
        md.s.resize(static_cast<std::size_t>(count));
        md.x_tilde.resize(static_cast<std::size_t>(count));
        md.x_attr.resize(static_cast<std::size_t>(count));
        md.corank.resize(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) {
            const auto& e = md.hf.elements[static_cast<std::size_t>(i)];
            PolyDivisor do_ = hyperface_divisor(e);
            PointedReduction pr = pointed_reduction(do_, fan.curve());
            md.corank[static_cast<std::size_t>(i)] = pr.corank;
            Poly xt = poincare_relative_spectrum(pr.pointed, fan.curve());
            Poly xa = poincare_attractive(pr.pointed, fan.curve());
            md.x_tilde[static_cast<std::size_t>(i)] = xt;
            md.x_attr[static_cast<std::size_t>(i)] = xa;
            md.eta[static_cast<std::size_t>(i)] = Laurent::from_poly(xt - xa).shifted(-(n + 1));
        }
        md.r = r_function(md.hf);
        md.r_inv = incidence_invert(md.r);
        for (int j = 0; j < count; ++j) {
            Laurent acc;
            for (int i = 0; i < count; ++i) {
                if (!md.hf.leq(i, j)) continue;
                acc = acc + md.r_inv.at(i, j) * md.eta[static_cast<std::size_t>(i)];
            }
            md.s[static_cast<std::size_t>(j)] = std::move(acc);
        }
        // the multiplicities are dimensions: nonnegative and symmetric
        for (int j = 0; j < count; ++j) {
            const Laurent& s = md.s[static_cast<std::size_t>(j)];
            if (!s.nonnegative())
                throw EngineError("internal consistency: negative multiplicity " + s.pretty());
            if (!s.symmetric_under_inversion())
                throw EngineError("internal consistency: asymmetric multiplicity " + s.pretty());
        }
        // re-substitution of the stalk identity
        for (int j = 0; j < count; ++j) {
            Laurent acc;
            for (int i = 0; i < count; ++i) {
                if (!md.hf.leq(i, j)) continue;
                acc = acc + md.r.at(i, j) * md.s[static_cast<std::size_t>(i)];
            }
            if (acc != md.eta[static_cast<std::size_t>(j)])
                throw EngineError("internal consistency: stalk identity fails to re-substitute");
        }
        return md;
    }

    /// The top-level algorithm: contraction-free base minus the orbit terms.
    PoincareReport poincare_complete(const DivisorialFan& input)
    {
        PoincareReport report;
        if (input.rank() == 0) {
            if (input.divisors().empty()) throw EngineError("empty fan");
            report.poincare = Poly({1, 2 * input.curve().genus, 1});
            report.base = report.poincare;
            return report;
        }
        auto [closed, validation] = validate_and_close(input);
        if (!validation.ok()) {
            std::string what = "invalid divisorial fan:";
            for (const auto& e : validation.errors) what += " [" + e.code + "] " + e.message;
            throw EngineError(what);
        }
        if (!closed.is_complete_variety())
            throw EngineError("the divisorial fan does not describe a complete variety");
        auto [refined, index] = refine_lattice(closed);
        report.refine_index = index;

        report.tail_h = h_fan(refined.tail_fan());
        for (const auto& y : refined.support()) report.fiber_h[y] = h_fan(refined.fiber_fan(y));
        report.base = poincare_contraction_free(refined);

        int n = refined.rank();
        MultiplicityData md = multiplicities(refined);
        Laurent total = Laurent::from_poly(report.base);
        for (int j = 0; j < md.hf.size(); ++j) {
            const auto& e = md.hf.elements[static_cast<std::size_t>(j)];
            Poly pbar = orbit_closure_poincare(md.hf, j);
            Laurent term = md.s[static_cast<std::size_t>(j)] * Laurent::from_poly(pbar);
            total = total - term.shifted(e.tail_face.dim() + 1);
            OrbitTrace tr;
            tr.key = e.key();
            tr.orbit_dim = e.orbit_dim;
            tr.tail_dim = e.tail_face.dim();
            tr.corank = md.corank[static_cast<std::size_t>(j)];
            tr.x_tilde = md.x_tilde[static_cast<std::size_t>(j)];
            tr.x_attractive = md.x_attr[static_cast<std::size_t>(j)];
            tr.orbit_closure = pbar;
            tr.multiplicity = md.s[static_cast<std::size_t>(j)];
            for (int i = 0; i < md.hf.size(); ++i)
                if (md.hf.leq(i, j)) tr.r_row[i] = md.r.at(i, j);
            report.orbits.push_back(std::move(tr));
        }
        if (!total.is_zero() && total.min_degree() < 0)
            throw EngineError("internal consistency: negative degrees in the Poincare polynomial");
        report.poincare = total.to_poly();
        check_final(report.poincare, n, refined.curve().genus);
        return report;
    }

    /// Closed form for complete C*-surfaces.
    Poly poincare_surface_closed_form(const DivisorialFan& input)
    {
        if (input.rank() != 1) throw EngineError("surface closed form needs lattice rank 1");
        auto [closed, validation] = validate_and_close(input);
        if (!validation.ok()) throw EngineError("surface closed form: invalid fan");
        if (!closed.is_complete_variety())
            throw EngineError("surface closed form: variety is not complete");
        long rho = closed.curve().genus;
        auto supp = closed.support();
        long long r = static_cast<long long>(supp.size());
        long long e_count = hf_poset(closed).size();
        Poly acc = Poly({1 - r, 2 * rho, 1 - r}) * Poly({1, 0, 1});
        acc = acc - Poly({0, 0, e_count});
        for (const auto& y : supp) {
            long long delta = closed.fiber_fan(y).ray_count();
            acc = acc + Poly({1, 0, delta - 2, 0, 1});
        }
        return acc;
    }

    /// Closed form for complete threefolds with a 2-torus action.
    Poly poincare_threefold_closed_form(const DivisorialFan& input)
    {
        if (input.rank() != 2) throw EngineError("threefold closed form needs lattice rank 2");
        auto [closed, validation] = validate_and_close(input);
        if (!validation.ok()) throw EngineError("threefold closed form: invalid fan");
        if (!closed.is_complete_variety())
            throw EngineError("threefold closed form: variety is not complete");
        long rho = closed.curve().genus;
        auto supp = closed.support();
        long long r = static_cast<long long>(supp.size());
        long long delta_tail = closed.tail_fan().ray_count();
        HFPoset hf = hf_poset(closed);
        long long o2 = 0;
        for (const auto& e : hf.elements)
            if (e.orbit_dim == 1) ++o2;
        Poly acc = Poly({1 - r, 2 * rho, 1 - r}) * Poly({1, 0, delta_tail - 2, 0, 1});
        for (const auto& y : supp) {
            long long delta = closed.fiber_fan(y).ray_count();
            acc = acc + Poly({1, 0, delta - 3, 0, delta - 3, 0, 1});
        }
        acc = acc - Poly({0, 0, o2}) * Poly({1, 0, 1});
        return acc;
    }

    /// Affine variety of any proper divisor over the whole curve:
    /// (1+t)^corank times the attractive value of the pointed reduction.
    Poly poincare_affine(const PolyDivisor& d, const Curve& curve)
    {
        auto [refined, index] = refine_lattice(d, curve);
        (void)index;
        PointedReduction pr = pointed_reduction(refined, curve);
        return Poly({1, 1}).pow(pr.corank) * poincare_attractive(pr.pointed, curve);
    }

  private:
    static std::string curve_signature(const Curve& c)
    {
        std::string s = "|g" + std::to_string(c.genus);
        s += c.policy == Principality::Genus0 ? "P0" : c.policy == Principality::Generic ? "PG" : "PT";
        for (const auto& t : c.table) s += "{" + t.to_string() + "}";
        return s;
    }

    static void check_final(const Poly& p, int rank, long genus)
    {
        int top = 2 * (rank + 1);
        if (p.coeff(0) != 1)
            throw EngineError("internal consistency: constant term is not 1: " + p.pretty());
        if (!p.is_palindromic(top))
            throw EngineError("internal consistency: Poincare polynomial " + p.pretty() +
                              " is not palindromic of degree " + std::to_string(top));
        if (!p.nonnegative())
            throw EngineError("internal consistency: negative Betti number in " + p.pretty());
        if (genus == 0) {
            for (int i = 1; i <= top; i += 2)
                if (p.coeff(i) != 0)
                    throw EngineError("internal consistency: odd Betti number at genus 0");
        }
    }

    std::map<std::string, Poly> attractive_memo_;
};

}  // namespace ihpoly
