/// The hyperface poset of a divisorial fan: pairs (divisor over the whole
/// curve, face of its tail meeting the degree), enriched with the coefficient
/// faces picked out by a functional interior to the dual face. Elements with
/// identical enriched data describe the same orbit and are identified.
#pragma once

#include "divisorial_fan.hpp"

namespace ihpoly {

struct HFElement {
    int source_divisor = -1;  // any divisor exhibiting this hyperface
    Cone tail_face;
    std::map<std::string, Polyhedron> coeff_faces;  // nontrivial ones only
    int orbit_dim = 0;                              // n - dim(tail_face)

    std::string key() const
    {
        std::string k = "H[" + tail_face.key() + "|";
        for (const auto& [p, f] : coeff_faces) k += p + ":" + f.key() + ";";
        return k + "]";
    }

    Polyhedron coeff_face(const std::string& p) const
    {
        auto it = coeff_faces.find(p);
        if (it != coeff_faces.end()) return it->second;
        return cone_as_polyhedron(tail_face);
    }
};

struct HFPoset {
    std::vector<HFElement> elements;
    std::vector<std::vector<bool>> below;  // below[i][j]: element i <= element j

    int size() const { return static_cast<int>(elements.size()); }
    bool leq(int i, int j) const { return below[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
};

/// The polyhedral divisor of a hyperface: tail face with its coefficient
/// faces, defined over the whole curve.
inline PolyDivisor hyperface_divisor(const HFElement& e)
{
    return PolyDivisor::make(e.tail_face, e.coeff_faces, true);
}

namespace detail {

/// The hyperface order: every Cayley cone of e1 is a face of the one of e2.
inline bool hyperface_leq(const HFElement& a, const HFElement& b)
{
    if (!a.tail_face.is_face_of(b.tail_face)) return false;
    std::set<std::string> pts;
    for (const auto& [p, f] : a.coeff_faces) pts.insert(p);
    for (const auto& [p, f] : b.coeff_faces) pts.insert(p);
    for (const auto& p : pts) {
        Cone ca = cayley_cone(a.tail_face, a.coeff_face(p));
        Cone cb = cayley_cone(b.tail_face, b.coeff_face(p));
        if (!ca.is_face_of(cb)) return false;
    }
    return true;
}

}  // namespace detail

/// Hyperfaces of a validated fan describing a complete variety. Elements come
/// from divisors over the whole curve whose tail face meets the degree.
inline HFPoset hf_poset(const DivisorialFan& fan)
{
    HFPoset poset;
    std::map<std::string, int> index;
    for (std::size_t di = 0; di < fan.divisors().size(); ++di) {
        const PolyDivisor& d = fan.divisors()[di];
        if (!d.complete_locus()) continue;
        auto deg = d.degree();
        FaceLattice fl = cone_face_lattice(d.tail());
        for (const auto& face : fl.faces) {
            Cone tau = face_cone(d.tail(), face);
            if (!deg->intersect(cone_as_polyhedron(tau))) continue;
            // functional interior to the dual face sigma^vee cap tau^perp
            std::vector<Vec> eqs;
            for (const auto& g : tau.generators()) eqs.push_back(g);
            Cone dual_face = Cone::from_constraints(d.ambient(), d.tail().rays(), eqs);
            Vec mstar = dual_face.relative_interior_point();
            HFElement e;
            e.source_divisor = static_cast<int>(di);
            e.tail_face = tau;
            e.orbit_dim = fan.rank() - tau.dim();
            Polyhedron trivial = cone_as_polyhedron(tau);
            for (const auto& [p, poly] : d.nontrivial_coefficients()) {
                Polyhedron f = poly.face(mstar);
                if (f == trivial) continue;
                e.coeff_faces.emplace(p, f);
            }
            std::string k = e.key();
            if (index.emplace(k, poset.size()).second) poset.elements.push_back(std::move(e));
        }
    }
    std::sort(poset.elements.begin(), poset.elements.end(),
              [](const HFElement& a, const HFElement& b) {
                  int da = a.tail_face.dim(), db = b.tail_face.dim();
                  return da != db ? da < db : a.key() < b.key();
              });
    int n = poset.size();
    poset.below.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            poset.below[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                detail::hyperface_leq(poset.elements[static_cast<std::size_t>(i)],
                                      poset.elements[static_cast<std::size_t>(j)]);
        }
    }
    return poset;
}

}  // namespace ihpoly
