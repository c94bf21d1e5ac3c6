/// The incidence algebra of the hyperface poset: Laurent-valued functions on
/// comparable pairs with convolution, and the triangular inversion used to
/// extract decomposition multiplicities.
#pragma once

#include "hyperfaces.hpp"
#include "polynomial.hpp"

namespace ihpoly {

struct IncidenceFunction {
    const HFPoset* poset = nullptr;
    std::map<std::pair<int, int>, Laurent> values;  // comparable pairs only

    Laurent at(int a, int b) const
    {
        auto it = values.find({a, b});
        return it == values.end() ? Laurent::zero() : it->second;
    }

    void set(int a, int b, Laurent v)
    {
        if (!poset->leq(a, b)) throw std::invalid_argument("incidence: pair is not comparable");
        values[{a, b}] = std::move(v);
    }
};

inline IncidenceFunction incidence_identity(const HFPoset& poset)
{
    IncidenceFunction f;
    f.poset = &poset;
    for (int a = 0; a < poset.size(); ++a) f.values[{a, a}] = Laurent::term(0, 1);
    return f;
}

inline IncidenceFunction convolve(const IncidenceFunction& alpha, const IncidenceFunction& beta)
{
    const HFPoset& p = *alpha.poset;
    IncidenceFunction out;
    out.poset = alpha.poset;
    for (int a = 0; a < p.size(); ++a) {
        for (int b = 0; b < p.size(); ++b) {
            if (!p.leq(a, b)) continue;
            Laurent acc;
            for (int c = 0; c < p.size(); ++c) {
                if (p.leq(a, c) && p.leq(c, b)) acc = acc + alpha.at(a, c) * beta.at(c, b);
            }
            if (!acc.is_zero()) out.values[{a, b}] = std::move(acc);
        }
    }
    return out;
}

/// Two-sided inverse; requires every diagonal value to be a unit of Z[t,1/t].
inline IncidenceFunction incidence_invert(const IncidenceFunction& alpha)
{
    const HFPoset& p = *alpha.poset;
    for (int a = 0; a < p.size(); ++a) {
        if (!alpha.at(a, a).is_unit())
            throw std::invalid_argument("incidence: diagonal value is not a unit");
    }
    IncidenceFunction beta;
    beta.poset = alpha.poset;
    // order pairs by the number of elements in the interval (triangular solve)
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (p.leq(a, b)) pairs.push_back({a, b});
    auto interval_size = [&](const std::pair<int, int>& ab) {
        int k = 0;
        for (int c = 0; c < p.size(); ++c)
            if (p.leq(ab.first, c) && p.leq(c, ab.second)) ++k;
        return k;
    };
    std::sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
        return interval_size(x) < interval_size(y);
    });
    for (const auto& [a, b] : pairs) {
        if (a == b) {
            beta.values[{a, b}] = alpha.at(a, a).unit_inverse();
            continue;
        }
        Laurent acc;
        for (int c = 0; c < p.size(); ++c) {
            if (c == a || !p.leq(a, c) || !p.leq(c, b)) continue;
            acc = acc + alpha.at(a, c) * beta.at(c, b);
        }
        Laurent val = alpha.at(a, a).unit_inverse() * (Laurent::zero() - acc);
        if (!val.is_zero()) beta.values[{a, b}] = std::move(val);
    }
    return beta;
}

}  // namespace ihpoly
