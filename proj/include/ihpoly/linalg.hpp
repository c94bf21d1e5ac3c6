/// Exact linear algebra over the rationals and a few integer-lattice routines
/// (Hermite reduction, basis completion, saturated kernels). Everything here
/// works on tiny dense matrices; no pivoting heuristics are needed.
#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <utility>

namespace ihpoly {

using Mat = std::vector<Vec>;  // row-major

inline Vec zero_vec(int n) { return Vec(static_cast<std::size_t>(n), Rat(0)); }

inline bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

inline Rat dot(const Vec& a, const Vec& b)
{
    assert(a.size() == b.size());
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec add(const Vec& a, const Vec& b)
{
    Vec r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b)
{
    Vec r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vec scale(const Rat& c, const Vec& a)
{
    Vec r(a);
    for (auto& x : r) x *= c;
    return r;
}

inline Vec neg(const Vec& a) { return scale(Rat(-1), a); }

inline bool lex_less(const Vec& a, const Vec& b)
{
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

/// Scale a rational vector to a primitive integer vector pointing the same way.
/// The zero vector stays zero.
inline Vec primitive(const Vec& v)
{
    Int den = 1;
    for (const auto& x : v) den = int_lcm(den, rat_den(x));
    if (den == 0) den = 1;
    Int g = 0;
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Int z = rat_num(v[i]) * (den / rat_den(v[i]));
        r[i] = Rat(z);
        g = int_gcd(g, z);
    }
    if (g == 0) return r;
    for (auto& x : r) x /= Rat(g);
    return r;
}

/// Row echelon form in place; returns pivot column indices.
inline std::vector<int> row_echelon(Mat& m)
{
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i) {
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) { pr = i; break; }
        }
        if (pr < 0) continue;
        std::swap(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(pr)]);
        Rat inv = Rat(1) / m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        for (auto& x : m[static_cast<std::size_t>(r)]) x *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Rat f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j) {
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(Mat m) { return static_cast<int>(row_echelon(m).size()); }

inline int rank_of_rows(const std::vector<Vec>& rows)
{
    if (rows.empty()) return 0;
    return rank(Mat(rows.begin(), rows.end()));
}

/// Basis of {x : A x = 0}.
inline std::vector<Vec> nullspace(Mat a, int cols)
{
    if (a.empty()) a.push_back(zero_vec(cols));
    std::vector<int> pivots = row_echelon(a);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<Vec> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[static_cast<std::size_t>(fc)]) continue;
        Vec v = zero_vec(cols);
        v[static_cast<std::size_t>(fc)] = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
            v[static_cast<std::size_t>(pivots[pr])] = -a[pr][static_cast<std::size_t>(fc)];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of A x = b, if any.
inline std::optional<Vec> solve(Mat a, Vec b)
{
    int cols = a.empty() ? static_cast<int>(b.size()) == 0 ? 0 : 0 : static_cast<int>(a[0].size());
    if (a.empty()) {
        for (auto& x : b)
            if (x != 0) return std::nullopt;
        return Vec{};
    }
    Mat aug = a;
    for (std::size_t i = 0; i < a.size(); ++i) aug[i].push_back(b[i]);
    std::vector<int> pivots = row_echelon(aug);
    Vec x = zero_vec(cols);
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
        if (pivots[pr] == cols) return std::nullopt;  // 0 = 1 row
        x[static_cast<std::size_t>(pivots[pr])] = aug[pr][static_cast<std::size_t>(cols)];
    }
    // verify (guards bookkeeping, cheap at these sizes)
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (dot(a[i], x) != b[i]) return std::nullopt;
    }
    return x;
}

/// Is `target` in the rational span of `gens`?
inline bool in_span(const std::vector<Vec>& gens, const Vec& target)
{
    if (is_zero(target)) return true;
    Mat cols;  // treat gens as columns: solve gens^T-style
    std::size_t n = target.size();
    Mat a(n, zero_vec(static_cast<int>(gens.size())));
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) a[i][j] = gens[j][i];
    return solve(a, target).has_value();
}

inline std::optional<Mat> inverse(Mat a)
{
    std::size_t n = a.size();
    Mat aug = a;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
    }
    std::vector<int> pivots = row_echelon(aug);
    if (pivots.size() != n) return std::nullopt;
    Mat inv(n, zero_vec(static_cast<int>(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

// ---------------------------------------------------------------------------
// Integer-lattice routines. Vectors are Rat-valued but must be integral.

using IMat = std::vector<std::vector<Int>>;

inline std::vector<Int> to_int_vec(const Vec& v)
{
    std::vector<Int> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        assert(is_integer(v[i]));
        r[i] = rat_num(v[i]);
    }
    return r;
}

inline Vec from_int_vec(const std::vector<Int>& v)
{
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

/// Row Hermite reduction with transform: returns (H, U) with U*A = H, U unimodular,
/// H in row echelon form with nonnegative pivots.
inline std::pair<IMat, IMat> row_hnf_with_transform(IMat a)
{
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    IMat u(rows, std::vector<Int>(rows, 0));
    for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Euclidean elimination in column c below row r
        while (true) {
            std::size_t nz = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (a[i][c] != 0 && (nz == rows || abs(a[i][c]) < abs(a[nz][c]))) nz = i;
            }
            if (nz == rows) break;
            std::swap(a[r], a[nz]);
            std::swap(u[r], u[nz]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                Int q = a[i][c] / a[r][c];
                for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
                for (std::size_t j = 0; j < rows; ++j) u[i][j] -= q * u[r][j];
                if (a[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0) {
            for (auto& x : a[r]) x = -x;
            for (auto& x : u[r]) x = -x;
        }
        // reduce rows above
        for (std::size_t i = 0; i < r; ++i) {
            if (a[i][c] == 0) continue;
            Int q = a[i][c] / a[r][c];
            if (a[i][c] - q * a[r][c] < 0) q -= 1;
            if (q != 0) {
                for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
                for (std::size_t j = 0; j < rows; ++j) u[i][j] -= q * u[r][j];
            }
        }
        ++r;
    }
    return {a, u};
}

/// Basis of the saturated lattice {x in Z^n : <w, x> = 0 for all rows w}.
/// Rows may be rational; the result is a Z-basis (canonical, Hermite-reduced).
inline std::vector<Vec> integer_kernel(const std::vector<Vec>& rows, int n)
{
    // Rational kernel first, then saturate via transform trick on the transpose:
    // run HNF on the integralized row matrix A^T? Cleaner: kernel of A equals
    // kernel of the integral matrix obtained by clearing denominators row-wise.
    IMat a;
    for (const auto& r : rows) {
        Vec p = primitive(r);
        if (is_zero(p)) continue;
        a.push_back(to_int_vec(p));
    }
    // Kernel via column operations: transpose, row-reduce [A^T | I].
    std::size_t m = a.size();
    IMat t(static_cast<std::size_t>(n), std::vector<Int>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) t[j][i] = a[i][j];
    auto [h, u] = row_hnf_with_transform(t);  // u * A^T = h
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        bool zero = true;
        for (const auto& x : h[i])
            if (x != 0) { zero = false; break; }
        if (zero) basis.push_back(from_int_vec(u[i]));
    }
    return basis;
}

/// Given k independent integral vectors spanning a *saturated* sublattice L of Z^n,
/// return a basis of Z^n whose first k members span L.
inline std::vector<Vec> extend_to_lattice_basis(const std::vector<Vec>& gens, int n)
{
    std::size_t k = gens.size();
    if (k == 0) {
        std::vector<Vec> id;
        for (int i = 0; i < n; ++i) {
            Vec e = zero_vec(n);
            e[static_cast<std::size_t>(i)] = 1;
            id.push_back(e);
        }
        return id;
    }
    // U * gens^T = [T; 0], U unimodular n x n. Rows of (U^-1)^T give the basis.
    IMat gt(static_cast<std::size_t>(n), std::vector<Int>(k, 0));
    for (std::size_t j = 0; j < k; ++j) {
        auto gi = to_int_vec(primitive(gens[j]));
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) gt[i][j] = gi[i];
    }
    auto [h, u] = row_hnf_with_transform(gt);
    (void)h;
    Mat urat(static_cast<std::size_t>(n), zero_vec(n));
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) urat[i][j] = Rat(u[i][j]);
    auto uinv = inverse(urat);
    assert(uinv.has_value());
    std::vector<Vec> basis;
    for (int j = 0; j < n; ++j) {  // columns of U^-1
        Vec col(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const Rat& x = (*uinv)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            assert(is_integer(x));
            col[static_cast<std::size_t>(i)] = x;
        }
        basis.push_back(std::move(col));
    }
    // First k basis vectors span L iff the input was saturated; verify.
    assert(rank_of_rows(std::vector<Vec>(basis.begin(), basis.begin() + static_cast<long>(k))) ==
           static_cast<int>(k));
    return basis;
}

/// Complete a primitive integral vector u to a lattice basis (u, b_2, ..., b_n);
/// returns the complement (b_2, ..., b_n).
inline std::vector<Vec> lattice_complement(const Vec& u, int n)
{
    auto basis = extend_to_lattice_basis({u}, n);
    return std::vector<Vec>(basis.begin() + 1, basis.end());
}

/// Is `target` in the Z-span of the integral vectors `gens`?
inline bool in_lattice_span(const std::vector<Vec>& gens, const Vec& target)
{
    int n = static_cast<int>(target.size());
    for (const auto& t : target)
        if (!is_integer(t)) return false;
    if (is_zero(target)) return true;
    IMat a;
    for (const auto& g : gens) a.push_back(to_int_vec(g));
    auto [h, u] = row_hnf_with_transform(a);
    (void)u;
    // Reduce target against the Hermite rows.
    std::vector<Int> t = to_int_vec(target);
    for (const auto& row : h) {
        std::size_t p = 0;
        while (p < row.size() && row[p] == 0) ++p;
        if (p == row.size()) continue;
        if (t[p] % row[p] != 0) continue;  // try later rows? echelon: no, fail below
        Int q = t[p] / row[p];
        for (std::size_t j = 0; j < row.size(); ++j) t[j] -= q * row[j];
    }
    for (const auto& x : t)
        if (x != 0) return false;
    return true;
}

}  // namespace ihpoly
