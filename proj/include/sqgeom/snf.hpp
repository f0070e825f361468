#pragma once

// Exact integer Smith normal form.  Elimination pivots on the least absolute
// value; the divisibility chain is normalized afterwards on the diagonal
// (gcd/lcm passes).  A checked-int64 fast path escalates to arbitrary
// precision on overflow.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "sqgeom/errors.hpp"

namespace sqgeom::snf {

using BigInt = boost::multiprecision::cpp_int;

class OverflowSignal {};

/// int64 wrapper whose arithmetic throws OverflowSignal instead of wrapping.
struct Checked64 {
    std::int64_t v = 0;

    Checked64() = default;
    Checked64(std::int64_t x) : v(x) {}

    Checked64 operator+(Checked64 o) const {
        Checked64 r;
        if (__builtin_add_overflow(v, o.v, &r.v)) throw OverflowSignal{};
        return r;
    }
    Checked64 operator-(Checked64 o) const {
        Checked64 r;
        if (__builtin_sub_overflow(v, o.v, &r.v)) throw OverflowSignal{};
        return r;
    }
    Checked64 operator*(Checked64 o) const {
        Checked64 r;
        if (__builtin_mul_overflow(v, o.v, &r.v)) throw OverflowSignal{};
        return r;
    }
    Checked64 operator/(Checked64 o) const { return Checked64(v / o.v); }
    Checked64 operator%(Checked64 o) const { return Checked64(v % o.v); }
    Checked64 operator-() const {
        if (v == INT64_MIN) throw OverflowSignal{};
        return Checked64(-v);
    }
    bool operator==(Checked64 o) const { return v == o.v; }
    bool operator!=(Checked64 o) const { return v != o.v; }
    bool operator<(Checked64 o) const { return v < o.v; }
};

inline Checked64 abs_val(Checked64 x) { return x.v < 0 ? -x : x; }
inline BigInt abs_val(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }
inline bool is_zero(Checked64 x) { return x.v == 0; }
inline bool is_zero(const BigInt& x) { return x == 0; }

template <typename T>
struct DenseMat {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;

    DenseMat() = default;
    DenseMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

namespace detail {

template <typename T>
T gcd_of(T a, T b) {
    a = abs_val(a);
    b = abs_val(b);
    while (!is_zero(b)) {
        T t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Diagonalizes m by unimodular row/column operations; returns the diagonal
/// (not yet chain-normalized).
template <typename T>
std::vector<T> eliminate(DenseMat<T>& m) {
    const std::size_t nmin = std::min(m.rows, m.cols);
    std::vector<T> diag;
    std::size_t s = 0;
    while (s < nmin) {
        // least-absolute-value pivot in the trailing submatrix (early exit on 1)
        std::size_t pi = m.rows, pj = m.cols;
        T best{};
        for (std::size_t i = s; i < m.rows; ++i) {
            for (std::size_t j = s; j < m.cols; ++j) {
                const T& x = m.at(i, j);
                if (is_zero(x)) continue;
                T ax = abs_val(x);
                if (pi == m.rows || ax < best) {
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
            if (pi != m.rows && best == T(1)) break;
        }
        if (pi == m.rows) break; // trailing submatrix is zero
        if (pi != s)
            for (std::size_t j = s; j < m.cols; ++j) std::swap(m.at(s, j), m.at(pi, j));
        if (pj != s)
            for (std::size_t i = s; i < m.rows; ++i) std::swap(m.at(i, s), m.at(i, pj));

        // clear row and column; fresh remainders re-enter as new pivot candidates
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = s + 1; i < m.rows; ++i) {
                if (is_zero(m.at(i, s))) continue;
                T k = m.at(i, s) / m.at(s, s);
                if (!is_zero(k))
                    for (std::size_t j = s; j < m.cols; ++j)
                        m.at(i, j) = m.at(i, j) - k * m.at(s, j);
                if (!is_zero(m.at(i, s))) {
                    // remainder smaller than pivot: swap it up and restart
                    for (std::size_t j = s; j < m.cols; ++j) std::swap(m.at(s, j), m.at(i, j));
                    clean = false;
                }
            }
            for (std::size_t j = s + 1; j < m.cols; ++j) {
                if (is_zero(m.at(s, j))) continue;
                T k = m.at(s, j) / m.at(s, s);
                if (!is_zero(k))
                    for (std::size_t i = s; i < m.rows; ++i)
                        m.at(i, j) = m.at(i, j) - k * m.at(i, s);
                if (!is_zero(m.at(s, j))) {
                    for (std::size_t i = s; i < m.rows; ++i) std::swap(m.at(i, s), m.at(i, j));
                    clean = false;
                }
            }
        }
        diag.push_back(abs_val(m.at(s, s)));
        ++s;
    }
    diag.resize(nmin, T(0));
    return diag;
}

/// Normalizes a diagonal into the canonical divisor chain d1 | d2 | ...
/// using diag(a,b) ~ diag(gcd(a,b), a*b/gcd(a,b)).
template <typename T>
void normalize_chain(std::vector<T>& d) {
    // move zeros to the end, keep everything nonnegative
    for (auto& x : d) x = abs_val(x);
    std::stable_partition(d.begin(), d.end(), [](const T& x) { return !is_zero(x); });
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            if (is_zero(d[i + 1])) break;
            if (is_zero(d[i])) continue;
            if (is_zero(d[i + 1] % d[i])) continue;
            T g = gcd_of(d[i], d[i + 1]);
            T l = (d[i] / g) * d[i + 1];
            d[i] = g;
            d[i + 1] = l;
            changed = true;
        }
    }
}

} // namespace detail

/// Smith normal form diagonal of an integer matrix: d1 | d2 | ... with
/// trailing zeros, length min(rows, cols).  Exact.
inline std::vector<BigInt> smith_normal_form(const std::vector<std::vector<BigInt>>& m) {
    if (m.empty() || m[0].empty()) return {};
    DenseMat<BigInt> d(m.size(), m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j) d.at(i, j) = m[i][j];
    auto diag = detail::eliminate(d);
    detail::normalize_chain(diag);
    return diag;
}

inline std::vector<BigInt> smith_normal_form(const std::vector<std::vector<std::int64_t>>& m) {
    if (m.empty() || m[0].empty()) return {};
    // fast checked-int64 path, escalating to BigInt if any product overflows
    try {
        DenseMat<Checked64> d(m.size(), m[0].size());
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m[0].size(); ++j) d.at(i, j) = m[i][j];
        auto diag = detail::eliminate(d);
        detail::normalize_chain(diag);
        std::vector<BigInt> out;
        out.reserve(diag.size());
        for (auto x : diag) out.emplace_back(x.v);
        return out;
    } catch (const OverflowSignal&) {
        std::vector<std::vector<BigInt>> big(m.size(), std::vector<BigInt>(m[0].size()));
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m[0].size(); ++j) big[i][j] = m[i][j];
        return smith_normal_form(big);
    }
}

} // namespace sqgeom::snf
