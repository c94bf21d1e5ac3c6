/// Integer-coefficient polynomials and Laurent polynomials in t.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ihpoly {

struct Poly {
    std::vector<long long> c;  // c[i] = coefficient of t^i; trailing zeros trimmed

    Poly() = default;
    explicit Poly(std::vector<long long> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly zero() { return Poly(); }
    static Poly constant(long long k) { return Poly({k}); }
    static Poly one() { return constant(1); }
    static Poly t_power(int k, long long coeff = 1)
    {
        std::vector<long long> v(static_cast<std::size_t>(k) + 1, 0);
        v.back() = coeff;
        return Poly(v);
    }

    void trim()
    {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    long long coeff(int i) const
    {
        if (i < 0 || i >= static_cast<int>(c.size())) return 0;
        return c[static_cast<std::size_t>(i)];
    }
    long long eval_at_one() const
    {
        long long s = 0;
        for (auto x : c) s += x;
        return s;
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        std::vector<long long> r(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return Poly(r);
    }
    friend Poly operator-(const Poly& a, const Poly& b)
    {
        std::vector<long long> r(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return Poly(r);
    }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<long long> r(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return Poly(r);
    }
    friend Poly operator*(long long k, const Poly& a)
    {
        Poly r = a;
        for (auto& x : r.c) x *= k;
        r.trim();
        return r;
    }
    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(int k) const
    {
        Poly r = one();
        for (int i = 0; i < k; ++i) r = r * (*this);
        return r;
    }

    /// p(t) -> p(t^2)
    Poly substitute_t_squared() const
    {
        if (is_zero()) return zero();
        std::vector<long long> r(2 * c.size() - 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i) r[2 * i] = c[i];
        return Poly(r);
    }

    bool is_palindromic(int top_degree) const
    {
        for (int i = 0; i <= top_degree; ++i)
            if (coeff(i) != coeff(top_degree - i)) return false;
        return degree() <= top_degree;
    }

    bool nonnegative() const
    {
        for (auto x : c)
            if (x < 0) return false;
        return true;
    }

    std::string pretty() const
    {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            long long k = coeff(i);
            if (k == 0) continue;
            if (!out.empty()) out += k > 0 ? " + " : " - ";
            else if (k < 0)
                out += "-";
            long long a = k < 0 ? -k : k;
            if (i == 0)
                out += std::to_string(a);
            else {
                if (a != 1) out += std::to_string(a);
                out += i == 1 ? "t" : "t^" + std::to_string(i);
            }
        }
        return out;
    }
};

/// Drop every term of degree > max_degree.
inline Poly truncate(const Poly& p, int max_degree)
{
    if (max_degree < 0) return Poly::zero();
    std::vector<long long> r;
    for (int i = 0; i <= max_degree && i <= p.degree(); ++i) r.push_back(p.coeff(i));
    return Poly(r);
}

struct Laurent {
    std::map<int, long long> c;  // degree -> coefficient, zeros absent

    Laurent() = default;
    static Laurent zero() { return {}; }
    static Laurent term(int deg, long long coeff)
    {
        Laurent l;
        if (coeff != 0) l.c[deg] = coeff;
        return l;
    }
    static Laurent from_poly(const Poly& p)
    {
        Laurent l;
        for (int i = 0; i <= p.degree(); ++i)
            if (p.coeff(i) != 0) l.c[i] = p.coeff(i);
        return l;
    }

    bool is_zero() const { return c.empty(); }
    long long coeff(int d) const
    {
        auto it = c.find(d);
        return it == c.end() ? 0 : it->second;
    }
    int min_degree() const { return c.empty() ? 0 : c.begin()->first; }
    int max_degree() const { return c.empty() ? 0 : c.rbegin()->first; }

    void add_term(int d, long long k)
    {
        if (k == 0) return;
        auto [it, fresh] = c.emplace(d, k);
        if (!fresh) {
            it->second += k;
            if (it->second == 0) c.erase(it);
        }
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b)
    {
        Laurent r = a;
        for (auto [d, k] : b.c) r.add_term(d, k);
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b)
    {
        Laurent r = a;
        for (auto [d, k] : b.c) r.add_term(d, -k);
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b)
    {
        Laurent r;
        for (auto [d1, k1] : a.c)
            for (auto [d2, k2] : b.c) r.add_term(d1 + d2, k1 * k2);
        return r;
    }
    bool operator==(const Laurent& o) const { return c == o.c; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    /// t -> 1/t
    Laurent reversed() const
    {
        Laurent r;
        for (auto [d, k] : c) r.c[-d] = k;
        return r;
    }

    Laurent shifted(int by) const
    {
        Laurent r;
        for (auto [d, k] : c) r.c[d + by] = k;
        return r;
    }

    /// Units of Z[t, 1/t] are +-t^k.
    bool is_unit() const { return c.size() == 1 && (c.begin()->second == 1 || c.begin()->second == -1); }

    Laurent unit_inverse() const
    {
        if (!is_unit()) throw std::invalid_argument("not a unit in Z[t,1/t]");
        return term(-c.begin()->first, c.begin()->second);
    }

    bool nonnegative() const
    {
        for (auto [d, k] : c)
            if (k < 0) return false;
        return true;
    }

    bool symmetric_under_inversion() const { return *this == reversed(); }

    /// Conversion to an ordinary polynomial; requires no negative degrees.
    Poly to_poly() const
    {
        if (!c.empty() && c.begin()->first < 0)
            throw std::invalid_argument("Laurent polynomial has negative degrees");
        std::vector<long long> v(c.empty() ? 0 : static_cast<std::size_t>(c.rbegin()->first) + 1, 0);
        for (auto [d, k] : c) v[static_cast<std::size_t>(d)] = k;
        return Poly(v);
    }

    std::string pretty() const
    {
        if (c.empty()) return "0";
        std::string out;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            auto [d, k] = *it;
            if (!out.empty()) out += k > 0 ? " + " : " - ";
            else if (k < 0)
                out += "-";
            long long a = k < 0 ? -k : k;
            if (d == 0)
                out += std::to_string(a);
            else {
                if (a != 1) out += std::to_string(a);
                out += d == 1 ? "t" : "t^" + std::to_string(d);
            }
        }
        return out;
    }
};

}  // namespace ihpoly
