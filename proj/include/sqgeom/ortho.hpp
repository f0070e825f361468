#pragma once

// Subspaces of F_q^dim carrying the standard symmetric bilinear form
// (orthonormal Gram matrix), with the square / nonsquare / degenerate
// classification.  Subspaces are canonicalized as reduced-row-echelon
// bases, so equality is a bit-exact matrix comparison.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sqgeom/errors.hpp"
#include "sqgeom/gf.hpp"
#include "sqgeom/linalg.hpp"

namespace sqgeom::ortho {

using linalg::Mat;
using linalg::Row;

/// F_q^dim with the identity Gram matrix.  Immutable; shared by subspaces.
struct AmbientSpace {
    gf::Field field;
    std::size_t dim;

    AmbientSpace(gf::Field f, std::size_t d) : field(std::move(f)), dim(d) {
        if (d < 2) throw DimensionMismatchError("ambient dimension must be >= 2");
    }
};

using AmbientPtr = std::shared_ptr<const AmbientSpace>;

inline AmbientPtr make_space(gf::Field f, std::size_t dim) {
    return std::make_shared<const AmbientSpace>(std::move(f), dim);
}

inline std::uint32_t form_value(const AmbientSpace& V, const Row& u, const Row& v) {
    const gf::Field& F = V.field;
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < V.dim; ++i) s = F.add(s, F.mul(u[i], v[i]));
    return s;
}

enum class SubspaceKind : std::int8_t { Square, Nonsquare, Degenerate };

inline const char* to_string(SubspaceKind k) {
    switch (k) {
        case SubspaceKind::Square: return "square";
        case SubspaceKind::Nonsquare: return "nonsquare";
        case SubspaceKind::Degenerate: return "degenerate";
    }
    return "?";
}

struct SubspaceClass {
    SubspaceKind kind;
    std::size_t radical_dim = 0; // nonzero only for Degenerate

    bool operator==(const SubspaceClass& o) const {
        return kind == o.kind && radical_dim == o.radical_dim;
    }
    bool operator!=(const SubspaceClass& o) const { return !(*this == o); }

    static SubspaceClass square() { return {SubspaceKind::Square, 0}; }
    static SubspaceClass nonsquare() { return {SubspaceKind::Nonsquare, 0}; }
    static SubspaceClass degenerate(std::size_t rdim) { return {SubspaceKind::Degenerate, rdim}; }
};

/// A subspace in canonical RREF form.  Two subspaces are equal iff their
/// basis matrices are identical.
class Subspace {
public:
    Subspace(AmbientPtr space, Mat rref_basis)
        : space_(std::move(space)), basis_(std::move(rref_basis)) {
        if (basis_.rows == 0 || basis_.rows > space_->dim || basis_.cols != space_->dim)
            throw DimensionMismatchError("subspace basis has invalid shape");
    }

    const AmbientSpace& space() const { return *space_; }
    AmbientPtr space_ptr() const { return space_; }
    const Mat& basis() const { return basis_; }
    std::size_t dim() const { return basis_.rows; }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return basis_ != o.basis_; }
    bool operator<(const Subspace& o) const {
        if (basis_.rows != o.basis_.rows) return basis_.rows < o.basis_.rows;
        return basis_.a < o.basis_.a;
    }

    /// Rows as comma-separated packed integers, rows joined by semicolons.
    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < basis_.rows; ++i) {
            if (i) out += ';';
            for (std::size_t j = 0; j < basis_.cols; ++j) {
                if (j) out += ',';
                out += std::to_string(basis_.at(i, j));
            }
        }
        return out;
    }

private:
    AmbientPtr space_;
    Mat basis_;
};

/// Canonicalizes the span of the given vectors.  Throws on a zero span.
inline Subspace span(const AmbientPtr& space, const std::vector<Row>& vectors) {
    Mat m = linalg::from_rows(vectors);
    linalg::rref(space->field, m);
    if (m.rows == 0) throw EmptyInputError("span of zero vectors");
    return Subspace(space, std::move(m));
}

inline bool contains(const Subspace& big, const Subspace& small) {
    if (big.dim() < small.dim()) return false;
    const gf::Field& F = big.space().field;
    Mat stacked(big.dim() + small.dim(), big.basis().cols);
    for (std::size_t i = 0; i < big.dim(); ++i) stacked.set_row(i, big.basis().row(i));
    for (std::size_t i = 0; i < small.dim(); ++i)
        stacked.set_row(big.dim() + i, small.basis().row(i));
    return linalg::rank(F, std::move(stacked)) == big.dim();
}

inline Mat gram_matrix(const AmbientSpace& V, const std::vector<Row>& vectors) {
    if (vectors.empty()) throw EmptyInputError("Gram matrix of an empty vector sequence");
    Mat g(vectors.size(), vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i; j < vectors.size(); ++j)
            g.at(i, j) = g.at(j, i) = form_value(V, vectors[i], vectors[j]);
    return g;
}

inline Mat gram_matrix(const Subspace& W) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < W.dim(); ++i) rows.push_back(W.basis().row(i));
    return gram_matrix(W.space(), rows);
}

inline SubspaceClass classify(const Subspace& W) {
    const gf::Field& F = W.space().field;
    Mat g = gram_matrix(W);
    std::uint32_t d = linalg::det(F, g);
    if (d != 0) {
        return F.quadratic_class(d) == gf::QuadraticClass::Square ? SubspaceClass::square()
                                                                  : SubspaceClass::nonsquare();
    }
    std::size_t r = linalg::rank(F, std::move(g));
    return SubspaceClass::degenerate(W.dim() - r);
}

/// Kernel of the restricted form, as a subspace of the ambient space;
/// nullopt when the radical is zero.
inline std::optional<Subspace> radical(const Subspace& W) {
    const gf::Field& F = W.space().field;
    Mat g = gram_matrix(W);
    Mat coeffs = linalg::kernel(F, std::move(g));
    if (coeffs.rows == 0) return std::nullopt;
    Mat rad = linalg::mul(F, coeffs, W.basis());
    linalg::rref(F, rad);
    return Subspace(W.space_ptr(), std::move(rad));
}

/// Orthogonal complement {v : (v,w) = 0 for all w in W}; with the identity
/// Gram matrix this is the kernel of the basis matrix.
inline Subspace perp(const Subspace& W) {
    const gf::Field& F = W.space().field;
    Mat out = linalg::kernel(F, W.basis());
    return Subspace(W.space_ptr(), std::move(out));
}

/// Intersection via (A cap B) = (A^perp + B^perp)^perp (valid since the
/// ambient form is nondegenerate); nullopt for the zero intersection.
inline std::optional<Subspace> intersect(const Subspace& A, const Subspace& B) {
    const gf::Field& F = A.space().field;
    Subspace pa = perp(A), pb = perp(B);
    Mat stacked(pa.dim() + pb.dim(), A.basis().cols);
    for (std::size_t i = 0; i < pa.dim(); ++i) stacked.set_row(i, pa.basis().row(i));
    for (std::size_t i = 0; i < pb.dim(); ++i) stacked.set_row(pa.dim() + i, pb.basis().row(i));
    linalg::rref(F, stacked);
    if (stacked.rows == A.space().dim) return std::nullopt;
    return perp(Subspace(A.space_ptr(), std::move(stacked)));
}

/// Gaussian binomial [n choose d]_q.
inline std::uint64_t gaussian_binomial(std::size_t n, std::size_t d, std::int64_t q) {
    if (d > n) return 0;
    unsigned __int128 num = 1, den = 1;
    for (std::size_t i = 0; i < d; ++i) {
        unsigned __int128 qn = 1, qd = 1;
        for (std::size_t j = 0; j + i < n; ++j) qn *= static_cast<unsigned __int128>(q);
        for (std::size_t j = 0; j < d - i; ++j) qd *= static_cast<unsigned __int128>(q);
        num *= qn - 1;
        den *= qd - 1;
        // keep intermediates small: the running product is always divisible
        if (den != 0 && num % den == 0) {
            num /= den;
            den = 1;
        }
    }
    return static_cast<std::uint64_t>(num / den);
}

struct EnumerateOptions {
    std::optional<SubspaceKind> filter;
    std::uint64_t budget = 10'000'000; // cap on subspaces visited
};

/// All d-dimensional subspaces in canonical order: pivot-column sets
/// lexicographically, then free entries as an odometer in row-major position
/// order, each entry running through the field's canonical element order
/// (last position fastest).
inline std::vector<Subspace> enumerate_subspaces(const AmbientPtr& space, std::size_t d,
                                                 EnumerateOptions opts = {}) {
    const gf::Field& F = space->field;
    const std::size_t n = space->dim;
    if (d < 1 || d > n) throw DimensionMismatchError("subspace dimension out of range");
    std::uint64_t total = gaussian_binomial(n, d, F.q());
    if (total > opts.budget)
        throw BudgetExceededError("subspace enumeration would visit " + std::to_string(total) +
                                      " subspaces",
                                  opts.budget);
    std::vector<Subspace> out;
    out.reserve(opts.filter ? total / 2 : total);

    std::vector<std::size_t> piv(d);
    for (std::size_t i = 0; i < d; ++i) piv[i] = i;
    auto next_combination = [&]() -> bool {
        // lexicographic successor of the pivot-column set
        std::size_t i = d;
        while (i-- > 0) {
            if (piv[i] + (d - i) < n + 0) {
                ++piv[i];
                for (std::size_t j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    do {
        std::vector<bool> is_piv(n, false);
        for (auto c : piv) is_piv[c] = true;
        std::vector<std::pair<std::size_t, std::size_t>> freepos; // (row, col), row-major
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = piv[i] + 1; j < n; ++j)
                if (!is_piv[j]) freepos.emplace_back(i, j);

        std::vector<std::int64_t> odo(freepos.size(), 0);
        bool more = true;
        while (more) {
            Mat b(d, n);
            for (std::size_t i = 0; i < d; ++i) b.at(i, piv[i]) = 1;
            for (std::size_t f = 0; f < freepos.size(); ++f)
                b.at(freepos[f].first, freepos[f].second) = F.element_at(odo[f]);
            Subspace s(space, std::move(b));
            if (!opts.filter || classify(s).kind == *opts.filter) out.push_back(std::move(s));
            // advance odometer, last position fastest
            more = false;
            std::size_t f = freepos.size();
            while (f-- > 0) {
                if (odo[f] + 1 < F.q()) {
                    ++odo[f];
                    for (std::size_t g = f + 1; g < freepos.size(); ++g) odo[g] = 0;
                    more = true;
                    break;
                }
            }
        }
    } while (next_combination());
    return out;
}

/// Pairwise-orthogonal basis of a nondegenerate subspace; every vector
/// nonisotropic.  Deterministic.
inline std::vector<Row> orthogonal_basis(const Subspace& W) {
    const gf::Field& F = W.space().field;
    SubspaceClass cls = classify(W);
    if (cls.kind == SubspaceKind::Degenerate)
        throw DegenerateSubspaceError("orthogonal basis requires a nondegenerate subspace");

    std::vector<Row> work;
    for (std::size_t i = 0; i < W.dim(); ++i) work.push_back(W.basis().row(i));
    std::vector<Row> out;
    const AmbientSpace& V = W.space();

    while (!work.empty()) {
        // pick a nonisotropic vector: some basis vector, else a sum of two
        std::size_t sel = work.size();
        for (std::size_t i = 0; i < work.size(); ++i)
            if (form_value(V, work[i], work[i]) != 0) {
                sel = i;
                break;
            }
        Row v;
        if (sel < work.size()) {
            v = work[sel];
        } else {
            // all basis vectors isotropic; the restricted form is nonzero, so
            // some pair has (u,w) != 0 and u+w is nonisotropic (q odd)
            bool found = false;
            for (std::size_t i = 0; i < work.size() && !found; ++i)
                for (std::size_t j = i + 1; j < work.size() && !found; ++j)
                    if (form_value(V, work[i], work[j]) != 0) {
                        v.assign(V.dim, 0);
                        for (std::size_t c = 0; c < V.dim; ++c)
                            v[c] = F.add(work[i][c], work[j][c]);
                        found = true;
                    }
            if (!found) throw InternalError("nondegenerate subspace with identically zero form");
        }
        out.push_back(v);
        if (work.size() == 1) break;
        // project the remaining generators onto v^perp within the subspace
        std::uint32_t nv = form_value(V, v, v);
        std::vector<Row> next;
        for (const Row& w : work) {
            std::uint32_t c = F.div(form_value(V, w, v), nv);
            Row r(V.dim);
            for (std::size_t j = 0; j < V.dim; ++j) r[j] = F.sub(w[j], F.mul(c, v[j]));
            next.push_back(std::move(r));
        }
        Mat m = linalg::from_rows(next);
        linalg::rref(F, m);
        work.clear();
        for (std::size_t i = 0; i < m.rows; ++i) work.push_back(m.row(i));
    }
    return out;
}

} // namespace sqgeom::ortho
