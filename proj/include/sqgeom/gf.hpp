#pragma once

// Exact arithmetic in F_q, q = p^k with p an odd prime, plus quadratic-class
// queries.  Elements are stored packed as sum coeffs[i]*p^i (low degree
// first), so an element of F_9 = Z_3[t]/(t^2+1) with value t packs as 3.
//
// The canonical element order compares coefficient sequences low-degree-first
// (each coefficient as an integer in [0, p-1]); this is NOT the packed-value
// order once k > 1.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqgeom/errors.hpp"

namespace sqgeom::gf {

enum class QuadraticClass : std::int8_t { Zero = 0, Square = 1, Nonsquare = -1 };

inline const char* to_string(QuadraticClass c) {
    switch (c) {
        case QuadraticClass::Zero: return "zero";
        case QuadraticClass::Square: return "square";
        case QuadraticClass::Nonsquare: return "nonsquare";
    }
    return "?";
}

namespace detail {

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace detail

/// Immutable descriptor of F_{p^k}.  All operations are pure; instances are
/// safe to share across threads after construction.
class Field {
public:
    /// Default cap on q; construction beyond it throws BudgetExceededError.
    static constexpr std::int64_t kDefaultMaxQ = std::int64_t{1} << 20;
    /// Square-root tables are precomputed up to this size; larger fields
    /// fall back to a per-call exhaustive scan.
    static constexpr std::int64_t kSqrtTableMaxQ = std::int64_t{1} << 16;

    Field(std::int64_t p, std::int64_t k, std::int64_t max_q = kDefaultMaxQ) : p_(p), k_(k) {
        if (p < 3 || p % 2 == 0 || !detail::is_prime(p))
            throw InvalidPrimeError("field characteristic must be an odd prime, got " +
                                    std::to_string(p));
        if (k < 1) throw InvalidPrimeError("extension degree must be >= 1");
        q_ = 1;
        for (std::int64_t i = 0; i < k; ++i) {
            q_ *= p;
            if (q_ > max_q)
                throw BudgetExceededError("field size p^k exceeds configured bound",
                                          static_cast<std::uint64_t>(max_q));
        }
        find_modulus();
        build_mul_reduction();
        build_tables();
        minus_one_is_square_ = (qclass_[neg(1u)] == 1);
        if (minus_one_is_square_ != (q_ % 4 == 1))
            throw InternalError("Euler criterion disagrees with q mod 4");
    }

    std::int64_t p() const { return p_; }
    std::int64_t k() const { return k_; }
    std::int64_t q() const { return q_; }
    bool minus_one_is_square() const { return minus_one_is_square_; }

    /// Monic modulus polynomial, coefficients low-degree-first (size k+1).
    const std::vector<std::int64_t>& modulus() const { return modulus_; }

    bool same_field(const Field& other) const {
        return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
    }

    /// Prints as "p^k" (plain "p" when k = 1).
    std::string name() const {
        return k_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(k_);
    }

    // -- packed-element arithmetic -------------------------------------------

    std::uint32_t zero() const { return 0; }
    std::uint32_t one() const { return 1; }

    /// Canonical image of an integer (reduces into the prime subfield).
    std::uint32_t from_int(std::int64_t n) const {
        std::int64_t r = n % p_;
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t out = 0, mult = 1;
        for (std::int64_t i = 0; i < k_; ++i) {
            out += ((a + b) % p_) * mult;
            a /= p_;
            b /= p_;
            mult *= p_;
        }
        return out;
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

    std::uint32_t neg(std::uint32_t a) const {
        std::uint32_t out = 0, mult = 1;
        for (std::int64_t i = 0; i < k_; ++i) {
            out += ((p_ - a % p_) % p_) * mult;
            a /= p_;
            mult *= p_;
        }
        return out;
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (k_ == 1) return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
        std::int64_t da[16], db[16], prod[31];
        unpack(a, da);
        unpack(b, db);
        for (std::int64_t i = 0; i < 2 * k_ - 1; ++i) prod[i] = 0;
        for (std::int64_t i = 0; i < k_; ++i)
            if (da[i])
                for (std::int64_t j = 0; j < k_; ++j) prod[i + j] += da[i] * db[j];
        // fold t^{k+j} using the precomputed reductions
        for (std::int64_t j = 2 * k_ - 2; j >= k_; --j) {
            std::int64_t c = prod[j] % p_;
            if (c)
                for (std::int64_t i = 0; i < k_; ++i) prod[i] += c * red_[j - k_][i];
        }
        std::uint32_t out = 0, mult = 1;
        for (std::int64_t i = 0; i < k_; ++i) {
            out += static_cast<std::uint32_t>(((prod[i] % p_) + p_) % p_) * mult;
            mult *= static_cast<std::uint32_t>(p_);
        }
        return out;
    }

    std::uint32_t pow(std::uint32_t a, std::int64_t e) const {
        if (e < 0) return pow(inv(a), -e);
        std::uint32_t r = 1, b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw DivisionByZeroError("inverse of zero in F_" + name());
        return pow(a, q_ - 2);
    }

    std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
        if (b == 0) throw DivisionByZeroError("division by zero in F_" + name());
        return mul(a, inv(b));
    }

    QuadraticClass quadratic_class(std::uint32_t a) const {
        return static_cast<QuadraticClass>(qclass_[a]);
    }

    bool is_nonzero_square(std::uint32_t a) const { return qclass_[a] == 1; }

    /// Least square root in the canonical element order; absent for nonsquares.
    std::optional<std::uint32_t> square_root(std::uint32_t a) const {
        if (a == 0) return 0u;
        if (qclass_[a] != 1) return std::nullopt;
        if (!sqrt_.empty()) return sqrt_[a];
        // exhaustive scan in canonical order (fields above the table bound)
        for (std::int64_t r = 0; r < q_; ++r) {
            std::uint32_t x = element_at(r);
            if (mul(x, x) == a) return x;
        }
        throw InternalError("square marked in table but no root found");
    }

    // -- canonical element order ---------------------------------------------

    /// rank -> packed value under the canonical (lexicographic low-degree-first)
    /// element order.  For k = 1 this is the identity.
    std::uint32_t element_at(std::int64_t rank) const {
        if (k_ == 1) return static_cast<std::uint32_t>(rank);
        std::uint32_t out = 0;
        // digits of rank base p, most significant digit = coefficient 0
        for (std::int64_t i = k_ - 1; i >= 0; --i) {
            out += static_cast<std::uint32_t>(rank % p_) * pw_[i];
            rank /= p_;
        }
        return out;
    }

    std::int64_t element_rank(std::uint32_t a) const {
        if (k_ == 1) return a;
        std::int64_t r = 0;
        for (std::int64_t i = 0; i < k_; ++i) {
            r = r * p_ + (a / pw_[i]) % p_;
        }
        return r;
    }

    bool element_less(std::uint32_t a, std::uint32_t b) const {
        return element_rank(a) < element_rank(b);
    }

    /// Least nonsquare in the canonical element order.
    std::uint32_t least_nonsquare() const {
        for (std::int64_t r = 0; r < q_; ++r) {
            std::uint32_t x = element_at(r);
            if (qclass_[x] == -1) return x;
        }
        throw InternalError("no nonsquare found");
    }

private:
    void unpack(std::uint32_t a, std::int64_t* out) const {
        for (std::int64_t i = 0; i < k_; ++i) {
            out[i] = a % p_;
            a /= p_;
        }
    }

    // Trial division of the monic candidate (low-first, degree k) by every
    // monic polynomial of degree 1..k/2.
    bool is_irreducible(const std::vector<std::int64_t>& m) const {
        for (std::int64_t d = 1; d <= k_ / 2; ++d) {
            std::int64_t count = 1;
            for (std::int64_t i = 0; i < d; ++i) count *= p_;
            for (std::int64_t tail = 0; tail < count; ++tail) {
                std::vector<std::int64_t> div(d + 1);
                std::int64_t t = tail;
                for (std::int64_t i = 0; i < d; ++i) {
                    div[i] = t % p_;
                    t /= p_;
                }
                div[d] = 1;
                // remainder of m by div
                std::vector<std::int64_t> r = m;
                while (static_cast<std::int64_t>(r.size()) > d) {
                    std::int64_t c = r.back();
                    if (c) {
                        std::size_t off = r.size() - 1 - d;
                        for (std::int64_t i = 0; i <= d; ++i)
                            r[off + i] = ((r[off + i] - c * div[i]) % p_ + p_) % p_;
                    }
                    r.pop_back();
                }
                bool zero = true;
                for (auto c : r)
                    if (c) zero = false;
                if (zero) return false;
            }
        }
        return true;
    }

    void find_modulus() {
        if (k_ == 1) {
            modulus_ = {0, 1}; // t: F_p = Z_p[t]/(t)
            return;
        }
        // enumerate tails (c_0 .. c_{k-1}) in lexicographic low-degree-first
        // order: c_0 is the most significant counter digit
        std::int64_t count = q_;
        for (std::int64_t idx = 0; idx < count; ++idx) {
            std::vector<std::int64_t> m(k_ + 1);
            std::int64_t t = idx;
            for (std::int64_t i = k_ - 1; i >= 0; --i) {
                m[i] = t % p_;
                t /= p_;
            }
            m[k_] = 1;
            if (is_irreducible(m)) {
                modulus_ = m;
                return;
            }
        }
        throw InternalError("no irreducible polynomial found"); // unreachable for valid input
    }

    void build_mul_reduction() {
        pw_.resize(k_);
        pw_[0] = 1;
        for (std::int64_t i = 1; i < k_; ++i) pw_[i] = pw_[i - 1] * static_cast<std::uint32_t>(p_);
        if (k_ == 1) return;
        // red_[j] = coefficients of t^{k+j} mod modulus, j = 0..k-2
        red_.assign(k_ - 1, std::vector<std::int64_t>(k_, 0));
        std::vector<std::int64_t> cur(k_);
        for (std::int64_t i = 0; i < k_; ++i) cur[i] = ((-modulus_[i]) % p_ + p_) % p_; // t^k
        for (std::int64_t j = 0; j < k_ - 1; ++j) {
            red_[j] = cur;
            // multiply cur by t and reduce
            std::vector<std::int64_t> nxt(k_, 0);
            std::int64_t top = cur[k_ - 1];
            for (std::int64_t i = k_ - 1; i > 0; --i) nxt[i] = cur[i - 1];
            if (top)
                for (std::int64_t i = 0; i < k_; ++i)
                    nxt[i] = (nxt[i] + top * red_[0][i]) % p_;
            cur = nxt;
        }
    }

    void build_tables() {
        qclass_.assign(q_, -1);
        qclass_[0] = 0;
        const bool with_roots = q_ <= kSqrtTableMaxQ;
        if (with_roots) sqrt_.assign(q_, 0);
        std::int64_t squares = 0;
        for (std::int64_t r = 1; r < q_; ++r) {
            std::uint32_t x = element_at(r);
            std::uint32_t s = mul(x, x);
            if (qclass_[s] != 1) {
                qclass_[s] = 1;
                ++squares;
                if (with_roots) sqrt_[s] = x; // first hit in canonical order = least root
            }
        }
        if (squares != (q_ - 1) / 2)
            throw InternalError("nonzero square count is not (q-1)/2; modulus not irreducible?");
    }

    std::int64_t p_, k_, q_;
    std::vector<std::int64_t> modulus_;
    bool minus_one_is_square_ = false;
    std::vector<std::int8_t> qclass_;
    std::vector<std::uint32_t> sqrt_;
    std::vector<std::vector<std::int64_t>> red_;
    std::vector<std::uint32_t> pw_;
};

/// Builds the deterministic field F_{p^k}: the modulus is the
/// lexicographically least monic irreducible of degree k over Z_p.
inline Field make_field(std::int64_t p, std::int64_t k, std::int64_t max_q = Field::kDefaultMaxQ) {
    return Field(p, k, max_q);
}

/// Factors a prime power q and builds its field; rejects even or non-prime-power q.
inline Field make_field_q(std::int64_t q, std::int64_t max_q = Field::kDefaultMaxQ) {
    if (q % 2 == 0) throw EvenCharacteristicError("q must be odd, got " + std::to_string(q));
    for (std::int64_t p = 3; p * p <= q; p += 2) {
        if (q % p == 0) {
            std::int64_t k = 0, t = q;
            while (t % p == 0) {
                t /= p;
                ++k;
            }
            if (t != 1)
                throw InvalidPrimeError(std::to_string(q) + " is not a prime power");
            return Field(p, k, max_q);
        }
    }
    return Field(q, 1, max_q); // q itself prime
}

/// An element bound to its field; throws FieldMismatchError on mixed-field
/// arithmetic.  Thin wrapper over the packed representation.
class FqElement {
public:
    FqElement(const Field& field, std::uint32_t packed) : field_(&field), v_(packed) {}

    const Field& field() const { return *field_; }
    std::uint32_t packed() const { return v_; }

    FqElement operator+(const FqElement& o) const { return {check(o), field_->add(v_, o.v_)}; }
    FqElement operator-(const FqElement& o) const { return {check(o), field_->sub(v_, o.v_)}; }
    FqElement operator*(const FqElement& o) const { return {check(o), field_->mul(v_, o.v_)}; }
    FqElement operator/(const FqElement& o) const { return {check(o), field_->div(v_, o.v_)}; }
    FqElement operator-() const { return {*field_, field_->neg(v_)}; }

    bool operator==(const FqElement& o) const { return field_->same_field(*o.field_) && v_ == o.v_; }
    bool operator!=(const FqElement& o) const { return !(*this == o); }

    QuadraticClass quadratic_class() const { return field_->quadratic_class(v_); }

    /// Serializes as the base-p packed integer.
    std::string str() const { return std::to_string(v_); }

private:
    const Field& check(const FqElement& o) const {
        if (!field_->same_field(*o.field_))
            throw FieldMismatchError("elements of F_" + field_->name() + " and F_" +
                                     o.field_->name() + " mixed");
        return *field_;
    }

    const Field* field_;
    std::uint32_t v_;
};

} // namespace sqgeom::gf
