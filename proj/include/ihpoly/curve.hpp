/// The base curve: genus, labeled points, and the principality policy used to
/// decide whether Q-divisors are principal. Points are opaque labels; only
/// degrees and the policy enter any computation.
#pragma once

#include "linalg.hpp"

#include <map>
#include <set>
#include <string>

namespace ihpoly {

struct QDivisor {
    std::map<std::string, Rat> coeff;  // finite support, zeros absent

    static QDivisor zero() { return {}; }

    void add(const std::string& point, const Rat& c)
    {
        if (c == 0) return;
        auto [it, fresh] = coeff.emplace(point, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) coeff.erase(it);
        }
    }

    bool is_zero() const { return coeff.empty(); }

    bool is_integral() const
    {
        for (const auto& [p, c] : coeff)
            if (!is_integer(c)) return false;
        return true;
    }

    Rat total_degree() const
    {
        Rat d = 0;
        for (const auto& [p, c] : coeff) d += c;
        return d;
    }

    friend QDivisor operator+(const QDivisor& a, const QDivisor& b)
    {
        QDivisor r = a;
        for (const auto& [p, c] : b.coeff) r.add(p, c);
        return r;
    }
    friend QDivisor operator*(const Rat& k, const QDivisor& a)
    {
        QDivisor r;
        for (const auto& [p, c] : a.coeff) r.add(p, k * c);
        return r;
    }
    bool operator==(const QDivisor& o) const { return coeff == o.coeff; }

    std::string to_string() const
    {
        if (coeff.empty()) return "0";
        std::string s;
        for (const auto& [p, c] : coeff) {
            if (!s.empty()) s += " + ";
            s += rat_to_string(c) + "[" + p + "]";
        }
        return s;
    }
};

enum class Principality { Genus0, Generic, Table };

enum class Tri { Yes, No, Unknown };

struct Curve {
    long genus = 0;
    std::vector<std::string> points;
    Principality policy = Principality::Genus0;
    std::vector<QDivisor> table;  // Z-module generators of known principal divisors

    bool has_point(const std::string& p) const
    {
        return std::find(points.begin(), points.end(), p) != points.end();
    }

    /// A label distinct from every existing point (used for generic-fiber probes).
    std::string fresh_label(const std::string& hint = "generic") const
    {
        std::string cand = hint;
        int k = 0;
        while (has_point(cand)) cand = hint + "_" + std::to_string(++k);
        return cand;
    }
};

namespace detail {

inline std::vector<Vec> divisors_as_vectors(const std::vector<QDivisor>& ds, const QDivisor& extra,
                                            std::vector<std::string>& labels)
{
    std::set<std::string> support;
    for (const auto& d : ds)
        for (const auto& [p, c] : d.coeff) support.insert(p);
    for (const auto& [p, c] : extra.coeff) support.insert(p);
    labels.assign(support.begin(), support.end());
    auto vec_of = [&](const QDivisor& d) {
        Vec v;
        for (const auto& p : labels) {
            auto it = d.coeff.find(p);
            v.push_back(it == d.coeff.end() ? Rat(0) : it->second);
        }
        return v;
    };
    std::vector<Vec> rows;
    for (const auto& d : ds) rows.push_back(vec_of(d));
    rows.push_back(vec_of(extra));
    return rows;
}

}  // namespace detail

/// Is the Q-divisor principal on the curve, under its policy?
inline Tri is_principal(const QDivisor& d, const Curve& curve)
{
    if (d.is_zero()) return Tri::Yes;
    if (!d.is_integral() || d.total_degree() != 0) return Tri::No;
    switch (curve.policy) {
        case Principality::Genus0: return Tri::Yes;
        case Principality::Generic: return Tri::No;
        case Principality::Table: {
            std::vector<std::string> labels;
            auto rows = detail::divisors_as_vectors(curve.table, d, labels);
            Vec target = rows.back();
            rows.pop_back();
            return in_lattice_span(rows, target) ? Tri::Yes : Tri::Unknown;
        }
    }
    return Tri::Unknown;
}

/// Is some positive integer multiple of the Q-divisor principal?
inline Tri is_principal_multiple(const QDivisor& d, const Curve& curve)
{
    if (d.is_zero()) return Tri::Yes;
    if (d.total_degree() != 0) return Tri::No;
    switch (curve.policy) {
        case Principality::Genus0: return Tri::Yes;  // clear denominators
        case Principality::Generic: return Tri::No;
        case Principality::Table: {
            std::vector<std::string> labels;
            auto rows = detail::divisors_as_vectors(curve.table, d, labels);
            Vec target = rows.back();
            rows.pop_back();
            return in_span(rows, target) ? Tri::Yes : Tri::Unknown;
        }
    }
    return Tri::Unknown;
}

}  // namespace ihpoly
