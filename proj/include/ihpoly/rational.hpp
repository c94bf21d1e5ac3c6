/// Exact rational scalars backed by GMP, plus small parsing/printing helpers.
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace ihpoly {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int rat_num(const Rat& q) { return numerator(q); }
inline Int rat_den(const Rat& q) { return denominator(q); }

inline bool is_integer(const Rat& q) { return rat_den(q) == 1; }

inline Int int_gcd(const Int& a, const Int& b) { return gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b)
{
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

/// Parse "p/q" or "p" into an exact rational. Throws std::invalid_argument on junk.
inline Rat parse_rational(const std::string& s)
{
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num) / Rat(den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

inline std::string rat_to_string(const Rat& q)
{
    if (is_integer(q)) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

using Vec = std::vector<Rat>;

inline std::string vec_to_string(const Vec& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += rat_to_string(v[i]);
    }
    return out + ")";
}

}  // namespace ihpoly
