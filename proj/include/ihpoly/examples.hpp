/// Built-in worked examples: small divisorial fans and divisors with known
/// intersection cohomology, used by the self-check command and the testsuite.
#pragma once

#include "divisorial_fan.hpp"

namespace ihpoly::examples {

inline Vec vec(std::initializer_list<const char*> xs)
{
    Vec r;
    for (auto* s : xs) r.push_back(parse_rational(s));
    return r;
}

inline Curve p1_curve()
{
    Curve c;
    c.genus = 0;
    c.points = {"0", "1", "inf"};
    c.policy = Principality::Genus0;
    return c;
}

inline Curve generic_curve(long genus)
{
    Curve c;
    c.genus = genus;
    c.points = {"0", "1", "inf"};
    c.policy = genus == 0 ? Principality::Genus0 : Principality::Generic;
    return c;
}

inline Polyhedron shifted(const Cone& tail, const Vec& vertex)
{
    return Polyhedron::from_vertices_rays(tail.ambient(), {vertex}, tail.rays());
}

inline Polyhedron hull_plus(const Cone& tail, const std::vector<Vec>& verts)
{
    return Polyhedron::from_vertices_rays(tail.ambient(), verts, tail.rays());
}

/// Full-quadrant divisor over P^1 whose affine variety has a unique attractive
/// fixed point and Poincare polynomial 2t^2 + 1.
inline PolyDivisor attractive_threefold_divisor()
{
    Cone sigma = Cone::from_generators(2, {vec({"1", "0"}), vec({"0", "1"})});
    return PolyDivisor::make(sigma,
                             {{"0", shifted(sigma, vec({"1/2", "1/2"}))},
                              {"inf", hull_plus(sigma, {vec({"0", "1"}), vec({"1", "0"})})}},
                             true);
}

/// Ray-tail divisor over P^1 with half-integral translations; its orbit has
/// disconnected stabilizers until the lattice is refined by index two.
inline PolyDivisor disconnected_stabilizer_divisor()
{
    Cone sigma = Cone::from_generators(2, {vec({"1", "0"})});
    return PolyDivisor::make(sigma,
                             {{"0", shifted(sigma, vec({"1", "1/2"}))},
                              {"inf", shifted(sigma, vec({"0", "-1/2"}))}},
                             true);
}

/// The divisor of the blow-up of the plane: affine surface over P^1 with one
/// shifted coefficient.
inline PolyDivisor plane_blowup_divisor(long genus = 0)
{
    (void)genus;
    Cone plus = Cone::from_generators(1, {vec({"1"})});
    return PolyDivisor::make(plus, {{"0", shifted(plus, vec({"1"}))}}, true);
}

/// Rank-1 fan over P^1 whose surface is the projective plane:
/// P = t^4 + t^2 + 1, |E| = 2, delta(fiber at 0) = 5, at infinity 4.
inline DivisorialFan projective_plane_surface()
{
    Cone zero = Cone::zero(1);
    Cone plus = Cone::from_generators(1, {vec({"1"})});
    Cone minus = Cone::from_generators(1, {vec({"-1"})});
    PolyDivisor d1 = PolyDivisor::make(
        zero, {{"0", Polyhedron::from_vertices_rays(1, {vec({"-1"}), vec({"0"})}, {})}}, false,
        {"inf"});
    PolyDivisor d2 = PolyDivisor::make(plus, {{"inf", shifted(plus, vec({"1/2"}))}}, true);
    PolyDivisor d3 = PolyDivisor::make(
        minus, {{"0", shifted(minus, vec({"-1"}))}, {"inf", shifted(minus, vec({"1/2"}))}}, true);
    return DivisorialFan(p1_curve(), 1, {d1, d2, d3});
}

/// The quadric threefold over P^1: four generating divisors supported on
/// {0, 1, inf}; P = t^6 + t^4 + t^2 + 1.
inline DivisorialFan quadric_threefold()
{
    Cone s1 = Cone::from_generators(2, {vec({"1", "1"}), vec({"1", "-1"})});
    Cone s2 = Cone::from_generators(2, {vec({"1", "-1"}), vec({"-1", "-1"})});
    Cone s3 = Cone::from_generators(2, {vec({"-1", "1"}), vec({"-1", "-1"})});
    Cone s4 = Cone::from_generators(2, {vec({"-1", "1"}), vec({"1", "1"})});
    Vec half = vec({"1/2", "1/2"});
    PolyDivisor d1 = PolyDivisor::make(
        s1, {{"1", hull_plus(s1, {vec({"0", "0"}), vec({"0", "-1"})})}, {"inf", shifted(s1, half)}},
        true);
    PolyDivisor d2 = PolyDivisor::make(s2,
                                       {{"0", hull_plus(s2, {vec({"-1", "0"}), vec({"0", "0"})})},
                                        {"1", shifted(s2, vec({"0", "-1"}))},
                                        {"inf", shifted(s2, half)}},
                                       true);
    PolyDivisor d3 = PolyDivisor::make(s3,
                                       {{"0", shifted(s3, vec({"-1", "0"}))},
                                        {"1", hull_plus(s3, {vec({"0", "0"}), vec({"0", "-1"})})},
                                        {"inf", shifted(s3, half)}},
                                       true);
    PolyDivisor d4 = PolyDivisor::make(
        s4, {{"0", hull_plus(s4, {vec({"-1", "0"}), vec({"0", "0"})})}, {"inf", shifted(s4, half)}},
        true);
    return DivisorialFan(p1_curve(), 2, {d1, d2, d3, d4});
}

/// A contraction-free surface: all loci affine, so the base polynomial is the
/// whole answer.
inline DivisorialFan contraction_free_surface()
{
    Cone plus = Cone::from_generators(1, {vec({"1"})});
    Cone minus = Cone::from_generators(1, {vec({"-1"})});
    PolyDivisor dp0 = PolyDivisor::make(plus, {{"0", shifted(plus, vec({"1"}))}}, false, {"inf"});
    PolyDivisor dpi = PolyDivisor::make(plus, {}, false, {"0"});
    PolyDivisor dm0 = PolyDivisor::make(minus, {{"0", shifted(minus, vec({"1"}))}}, false, {"inf"});
    PolyDivisor dmi = PolyDivisor::make(minus, {}, false, {"0"});
    return DivisorialFan(p1_curve(), 1, {dp0, dpi, dm0, dmi});
}

}  // namespace ihpoly::examples
