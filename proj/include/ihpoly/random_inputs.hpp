/// Deterministic random generators of valid complete divisorial fans, used by
/// the self-check property suite and the acceptance tests. Surfaces come from
/// breakpoint subdivisions of the line; threefolds from translated complete
/// fans and from downgrades of random rank-three divisors.
#pragma once

#include "downgrade.hpp"

#include <random>

namespace ihpoly::random_inputs {

inline Curve make_curve(long genus, int npoints)
{
    Curve c;
    c.genus = genus;
    c.policy = genus == 0 ? Principality::Genus0 : Principality::Generic;
    for (int i = 0; i < npoints; ++i) c.points.push_back("p" + std::to_string(i));
    return c;
}

inline Rat small_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 3);
    return Rat(num(rng)) / Rat(den(rng));
}

/// A random complete C*-surface fan: per special point a strictly increasing
/// chain of breakpoints; half-line charts contract iff their degree allows it.
inline DivisorialFan random_surface(std::mt19937_64& rng, long genus, int max_special)
{
    std::uniform_int_distribution<int> rdist(0, max_special);
    int r = rdist(rng);
    Curve curve = make_curve(genus, std::max(2, r + 1));
    std::vector<std::string> special(curve.points.begin(), curve.points.begin() + r);

    Cone plus = Cone::from_generators(1, {Vec{Rat(1)}});
    Cone minus = Cone::from_generators(1, {Vec{Rat(-1)}});
    Cone zero = Cone::zero(1);

    std::map<std::string, std::vector<Rat>> breaks;  // strictly increasing per point
    std::uniform_int_distribution<int> kdist(0, 2);
    for (const auto& y : special) {
        std::set<Rat> pts;
        int k = kdist(rng);
        while (static_cast<int>(pts.size()) < k + 1) pts.insert(small_rational(rng));
        breaks[y].assign(pts.begin(), pts.end());
    }

    auto top = [&](const std::string& y) { return breaks[y].back(); };
    auto bottom = [&](const std::string& y) { return breaks[y].front(); };

    auto others = [&](const std::string& y) {
        std::set<std::string> ex;
        for (const auto& z : special)
            if (z != y) ex.insert(z);
        if (ex.empty()) {
            for (const auto& p : curve.points)
                if (p != y) { ex.insert(p); break; }
        }
        return ex;
    };

    std::vector<PolyDivisor> divisors;
    auto add_halfline = [&](const Cone& tail, bool is_plus) {
        std::map<std::string, Polyhedron> coeffs;
        Rat degree_sum = 0;
        for (const auto& y : special) {
            Rat b = is_plus ? top(y) : bottom(y);
            degree_sum += is_plus ? b : -b;
            if (b != 0)
                coeffs.emplace(y, Polyhedron::from_vertices_rays(1, {Vec{b}}, tail.rays()));
        }
        if (!special.empty() && degree_sum > 0) {
            divisors.push_back(PolyDivisor::make(tail, coeffs, true));
            return;
        }
        for (const auto& y : special) {
            std::map<std::string, Polyhedron> single;
            Rat b = is_plus ? top(y) : bottom(y);
            if (b != 0)
                single.emplace(y, Polyhedron::from_vertices_rays(1, {Vec{b}}, tail.rays()));
            divisors.push_back(PolyDivisor::make(tail, single, false, others(y)));
        }
        if (special.empty()) {
            divisors.push_back(PolyDivisor::make(tail, {}, false, {curve.points[0]}));
            divisors.push_back(PolyDivisor::make(tail, {}, false, {curve.points[1]}));
        } else if (special.size() == 1) {
            std::set<std::string> ex(special.begin(), special.end());
            divisors.push_back(PolyDivisor::make(tail, {}, false, ex));
        }
    };
    add_halfline(plus, true);
    add_halfline(minus, false);
    for (const auto& y : special) {
        const auto& bs = breaks[y];
        for (std::size_t i = 0; i + 1 < bs.size(); ++i) {
            Polyhedron seg = Polyhedron::from_vertices_rays(1, {Vec{bs[i]}, Vec{bs[i + 1]}}, {});
            divisors.push_back(PolyDivisor::make(zero, {{y, seg}}, false, others(y)));
        }
    }
    return DivisorialFan(curve, 1, divisors);
}

/// Rays of a random complete fan in the plane, in counterclockwise order.
inline std::vector<Vec> random_complete_rays(std::mt19937_64& rng)
{
    static const std::vector<std::pair<int, int>> pool = {
        {1, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 1}, {-1, 2}, {-1, 1}, {-2, 1},
        {-1, 0}, {-2, -1}, {-1, -1}, {-1, -2}, {0, -1}, {1, -2}, {1, -1}, {2, -1}};
    std::uniform_int_distribution<int> count(3, 6);
    int want = count(rng);
    std::set<int> chosen;
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
    while (static_cast<int>(chosen.size()) < want) chosen.insert(pick(rng));
    // completeness needs every gap between consecutive rays below pi; patch by
    // inserting the four axis directions when a gap is too wide
    std::vector<int> idx(chosen.begin(), chosen.end());
    auto cross = [&](int a, int b) {
        return pool[static_cast<std::size_t>(a)].first * pool[static_cast<std::size_t>(b)].second -
               pool[static_cast<std::size_t>(a)].second * pool[static_cast<std::size_t>(b)].first;
    };
    std::set<int> fixed(idx.begin(), idx.end());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        int a = idx[i], b = idx[(i + 1) % idx.size()];
        if (cross(a, b) <= 0) {
            for (int axis : {0, 4, 8, 12}) fixed.insert(axis);
            break;
        }
    }
    std::vector<Vec> rays;
    for (int i : fixed)
        rays.push_back(Vec{Rat(pool[static_cast<std::size_t>(i)].first),
                           Rat(pool[static_cast<std::size_t>(i)].second)});
    return rays;
}

/// A random complete threefold fan: a complete tail fan with per-point
/// translated coefficients; charts contract where the translated degree
/// stays inside the tail.
inline DivisorialFan random_threefold_translated(std::mt19937_64& rng, long genus, int max_special)
{
    std::uniform_int_distribution<int> rdist(genus == 0 ? 0 : 1, max_special);
    int r = rdist(rng);
    Curve curve = make_curve(genus, std::max(2, r + 1));
    std::vector<std::string> special(curve.points.begin(), curve.points.begin() + r);

    std::vector<Vec> rays = random_complete_rays(rng);
    std::size_t nrays = rays.size();
    std::vector<Cone> cones;
    for (std::size_t i = 0; i < nrays; ++i)
        cones.push_back(Cone::from_generators(2, {rays[i], rays[(i + 1) % nrays]}));

    std::map<std::string, Vec> shift;
    Vec total = zero_vec(2);
    for (const auto& y : special) {
        Vec w;
        if (genus == 0) {
            w = Vec{small_rational(rng), small_rational(rng)};
        } else {
            // keep the total inside one cone's interior so the generic-policy
            // properness conditions stay trivial
            std::uniform_int_distribution<int> zi(-2, 2);
            w = Vec{Rat(zi(rng)), Rat(zi(rng))};
        }
        shift.emplace(y, w);
        total = add(total, w);
    }
    if (genus > 0 && !special.empty()) {
        // adjust the last shift so the total is interior to the first cone
        Vec target = cones[0].relative_interior_point();
        Vec& last = shift[special.back()];
        last = add(last, sub(target, total));
        total = target;
    }

    auto others = [&](const std::string& y) {
        std::set<std::string> ex;
        for (const auto& z : special)
            if (z != y) ex.insert(z);
        if (ex.empty()) {
            for (const auto& p : curve.points)
                if (p != y) { ex.insert(p); break; }
        }
        return ex;
    };

    std::vector<PolyDivisor> divisors;
    for (const auto& c : cones) {
        std::map<std::string, Polyhedron> coeffs;
        for (const auto& y : special)
            coeffs.emplace(y, Polyhedron::from_vertices_rays(2, {shift[y]}, c.rays()));
        bool complete = !special.empty() && c.contains(total) && !is_zero(total);
        if (complete) {
            PolyDivisor d = PolyDivisor::make(c, coeffs, true);
            if (is_proper(d, curve).ok()) {
                divisors.push_back(d);
                continue;
            }
        }
        for (const auto& y : special) {
            std::map<std::string, Polyhedron> single;
            single.emplace(y, coeffs.at(y));
            divisors.push_back(PolyDivisor::make(c, single, false, others(y)));
        }
        if (special.empty()) {
            divisors.push_back(PolyDivisor::make(c, {}, false, {curve.points[0]}));
            divisors.push_back(PolyDivisor::make(c, {}, false, {curve.points[1]}));
        } else if (special.size() == 1) {
            std::set<std::string> ex(special.begin(), special.end());
            divisors.push_back(PolyDivisor::make(c, {}, false, ex));
        }
    }
    return DivisorialFan(curve, 2, divisors);
}

/// A random proper rank-3 divisor with full-dimensional tail over P^1.
inline PolyDivisor random_rank3_divisor(std::mt19937_64& rng, const Curve& curve)
{
    // tail: cone over a lattice polygon at height one
    std::uniform_int_distribution<int> shape(0, 2);
    std::vector<Vec> gens;
    switch (shape(rng)) {
        case 0:
            gens = {Vec{Rat(0), Rat(0), Rat(1)}, Vec{Rat(1), Rat(0), Rat(1)},
                    Vec{Rat(0), Rat(1), Rat(1)}};
            break;
        case 1:
            gens = {Vec{Rat(0), Rat(0), Rat(1)}, Vec{Rat(1), Rat(0), Rat(1)},
                    Vec{Rat(1), Rat(1), Rat(1)}, Vec{Rat(0), Rat(1), Rat(1)}};
            break;
        default:
            gens = {Vec{Rat(0), Rat(0), Rat(1)}, Vec{Rat(1), Rat(0), Rat(1)},
                    Vec{Rat(2), Rat(1), Rat(1)}, Vec{Rat(1), Rat(2), Rat(1)},
                    Vec{Rat(0), Rat(1), Rat(1)}};
            break;
    }
    Cone tail = Cone::from_generators(3, gens);
    // two special coefficients translating to a degree inside the tail
    std::uniform_int_distribution<int> pickray(0, static_cast<int>(tail.rays().size()) - 1);
    Vec target = tail.rays()[static_cast<std::size_t>(pickray(rng))];
    std::uniform_int_distribution<int> halves(-2, 2);
    Vec v0{Rat(halves(rng)) / 2, Rat(halves(rng)) / 2, Rat(halves(rng)) / 2};
    Vec v1 = sub(target, v0);
    std::map<std::string, Polyhedron> coeffs;
    coeffs.emplace(curve.points[0], Polyhedron::from_vertices_rays(3, {v0}, tail.rays()));
    coeffs.emplace(curve.points[1], Polyhedron::from_vertices_rays(3, {v1}, tail.rays()));
    return PolyDivisor::make(tail, coeffs, true);
}

/// A random complete rank-2 fan obtained by downgrading a rank-3 divisor.
inline DivisorialFan random_threefold_downgraded(std::mt19937_64& rng)
{
    Curve curve = make_curve(0, 3);
    PolyDivisor d = random_rank3_divisor(rng, curve);
    return downgrade(d, curve);
}

}  // namespace ihpoly::random_inputs
