#pragma once

// Dense matrices over F_q used by the subspace machinery.  Entries are
// packed field elements; every routine is deterministic.

#include <cstdint>
#include <vector>

#include "sqgeom/errors.hpp"
#include "sqgeom/gf.hpp"

namespace sqgeom::linalg {

using Row = std::vector<std::uint32_t>;

struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint32_t> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    Row row(std::size_t i) const { return Row(a.begin() + i * cols, a.begin() + (i + 1) * cols); }

    void set_row(std::size_t i, const Row& r) {
        for (std::size_t j = 0; j < cols; ++j) at(i, j) = r[j];
    }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
};

inline Mat from_rows(const std::vector<Row>& rows) {
    Mat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

inline Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

/// In-place reduced row echelon form; returns the pivot columns.  Zero rows
/// are dropped, so afterwards m.rows == rank.
inline std::vector<std::size_t> rref(const gf::Field& F, Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t sel = r;
        while (sel < m.rows && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(sel, j));
        std::uint32_t inv = F.inv(m.at(r, c));
        for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = F.mul(m.at(r, j), inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            std::uint32_t f = m.at(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    m.a.resize(r * m.cols);
    m.rows = r;
    return pivots;
}

inline std::size_t rank(const gf::Field& F, Mat m) { return rref(F, m).size(); }

/// Canonical (RREF) basis of the right kernel {x : m x = 0}.
inline Mat kernel(const gf::Field& F, Mat m) {
    std::vector<std::size_t> pivots = rref(F, m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    Mat out(m.cols - pivots.size(), m.cols);
    std::size_t r = 0;
    for (std::size_t fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[fc]) continue;
        out.at(r, fc) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            out.at(r, pivots[i]) = F.neg(m.at(i, fc));
        ++r;
    }
    rref(F, out); // canonical order
    return out;
}

inline Mat mul(const gf::Field& F, const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw DimensionMismatchError("matrix product shape mismatch");
    Mat out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t l = 0; l < x.cols; ++l) {
            std::uint32_t v = x.at(i, l);
            if (v == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                out.at(i, j) = F.add(out.at(i, j), F.mul(v, y.at(l, j)));
        }
    return out;
}

inline Row mul_row(const gf::Field& F, const Row& x, const Mat& y) {
    Row out(y.cols, 0);
    for (std::size_t l = 0; l < x.size(); ++l) {
        if (x[l] == 0) continue;
        for (std::size_t j = 0; j < y.cols; ++j)
            out[j] = F.add(out[j], F.mul(x[l], y.at(l, j)));
    }
    return out;
}

inline Mat transpose(const Mat& m) {
    Mat out(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

inline std::uint32_t det(const gf::Field& F, Mat m) {
    if (m.rows != m.cols) throw DimensionMismatchError("determinant of non-square matrix");
    std::uint32_t d = 1;
    for (std::size_t c = 0; c < m.cols; ++c) {
        std::size_t sel = c;
        while (sel < m.rows && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows) return 0;
        if (sel != c) {
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(c, j), m.at(sel, j));
            d = F.neg(d);
        }
        d = F.mul(d, m.at(c, c));
        std::uint32_t inv = F.inv(m.at(c, c));
        for (std::size_t i = c + 1; i < m.rows; ++i) {
            if (m.at(i, c) == 0) continue;
            std::uint32_t f = F.mul(m.at(i, c), inv);
            for (std::size_t j = c; j < m.cols; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(c, j)));
        }
    }
    return d;
}

inline Mat inverse(const gf::Field& F, const Mat& m) {
    if (m.rows != m.cols) throw DimensionMismatchError("inverse of non-square matrix");
    Mat aug(m.rows, 2 * m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols + i) = 1;
    }
    rref(F, aug);
    if (aug.rows != m.rows) throw DimensionMismatchError("matrix is singular");
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (aug.at(i, j) != (i == j ? 1u : 0u))
                throw DimensionMismatchError("matrix is singular");
    Mat out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out.at(i, j) = aug.at(i, m.cols + j);
    return out;
}

} // namespace sqgeom::linalg
