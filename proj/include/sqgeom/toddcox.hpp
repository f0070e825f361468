#pragma once

// HLT-style Todd-Coxeter coset enumeration over the trivial subgroup, with
// coincidence handling.  Deterministic: cosets are processed in definition
// order, relators in presentation order, and new cosets are defined at the
// first undefined slot encountered.

#include <cstdint>
#include <deque>
#include <vector>

#include "sqgeom/errors.hpp"

namespace sqgeom::topology {

/// Generators g1..gm; relators are freely reduced words of signed 1-based
/// generator indices (negative = inverse).
struct GroupPresentation {
    std::size_t generator_count = 0;
    std::vector<std::vector<std::int32_t>> relators;
};

struct EnumerationOutcome {
    enum class Kind { TrivialGroup, FiniteIndex, Exceeded };
    Kind kind = Kind::Exceeded;
    std::size_t index = 0;          // live cosets (TrivialGroup/FiniteIndex)
    std::size_t cosets_defined = 0; // total definitions made
};

namespace tc_detail {

class Enumerator {
public:
    Enumerator(const GroupPresentation& p, std::size_t max_cosets)
        : ngens_(p.generator_count), width_(2 * p.generator_count), budget_(max_cosets) {
        for (const auto& rel : p.relators) {
            std::vector<std::uint32_t> w;
            for (auto s : rel) w.push_back(col(s));
            if (!w.empty()) rels_.push_back(std::move(w));
        }
        define_first();
    }

    EnumerationOutcome run() {
        if (ngens_ == 0) return finish();
        std::size_t alpha = 0;
        while (alpha < table_.size()) {
            if (exceeded_) return finish();
            if (!alive(alpha)) {
                ++alpha;
                continue;
            }
            for (const auto& w : rels_) {
                scan_and_fill(alpha, w);
                if (exceeded_) return finish();
                if (!alive(alpha)) break;
            }
            if (alive(alpha)) {
                for (std::uint32_t x = 0; x < width_ && !exceeded_; ++x)
                    if (entry(alpha, x) < 0) {
                        std::int64_t beta = define_coset();
                        if (beta < 0) break;
                        set(alpha, x, beta);
                        set(static_cast<std::size_t>(beta), inv(x), static_cast<std::int64_t>(alpha));
                    }
            }
            ++alpha;
        }
        return finish();
    }

private:
    // column layout: generator i acts at 2i, its inverse at 2i+1
    std::uint32_t col(std::int32_t s) const {
        return s > 0 ? 2 * static_cast<std::uint32_t>(s - 1)
                     : 2 * static_cast<std::uint32_t>(-s - 1) + 1;
    }
    static std::uint32_t inv(std::uint32_t x) { return x ^ 1u; }

    bool alive(std::size_t c) const { return rep_[c] == c; }

    std::size_t rep(std::size_t c) {
        while (rep_[c] != c) {
            rep_[c] = rep_[rep_[c]];
            c = rep_[c];
        }
        return c;
    }

    std::int64_t entry(std::size_t c, std::uint32_t x) const { return table_[c * width_ + x]; }
    void set(std::size_t c, std::uint32_t x, std::int64_t v) { table_[c * width_ + x] = v; }

    void define_first() {
        table_.assign(width_, -1);
        rep_.assign(1, 0);
        defined_ = 1;
        live_ = 1;
    }

    std::int64_t define_coset() {
        if (defined_ >= budget_) {
            exceeded_ = true;
            return -1;
        }
        std::size_t c = rep_.size();
        rep_.push_back(c);
        table_.resize(table_.size() + width_, -1);
        ++defined_;
        ++live_;
        return static_cast<std::int64_t>(c);
    }

    void merge(std::size_t a, std::size_t b, std::deque<std::size_t>& queue) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        rep_[b] = a;
        --live_;
        queue.push_back(b);
    }

    void coincidence(std::size_t a, std::size_t b) {
        std::deque<std::size_t> queue;
        merge(a, b, queue);
        while (!queue.empty()) {
            std::size_t dead = queue.front();
            queue.pop_front();
            for (std::uint32_t x = 0; x < width_; ++x) {
                std::int64_t d = entry(dead, x);
                if (d < 0) continue;
                set(dead, x, -1);
                std::size_t delta = rep(static_cast<std::size_t>(d));
                std::size_t alive_rep = rep(dead);
                // re-install alive_rep --x--> delta and the reverse edge
                std::int64_t ex = entry(alive_rep, x);
                if (ex < 0)
                    set(alive_rep, x, static_cast<std::int64_t>(delta));
                else
                    merge(rep(static_cast<std::size_t>(ex)), delta, queue);
                std::int64_t back = entry(delta, inv(x));
                if (back < 0)
                    set(delta, inv(x), static_cast<std::int64_t>(alive_rep));
                else
                    merge(rep(static_cast<std::size_t>(back)), alive_rep, queue);
            }
        }
    }

    void scan_and_fill(std::size_t alpha, const std::vector<std::uint32_t>& w) {
        std::int64_t i = 0, j = static_cast<std::int64_t>(w.size()) - 1;
        std::size_t f = alpha, b = alpha;
        while (true) {
            while (i <= j && entry(f, w[i]) >= 0) {
                f = rep(static_cast<std::size_t>(entry(f, w[i])));
                ++i;
            }
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && entry(b, inv(w[j])) >= 0) {
                b = rep(static_cast<std::size_t>(entry(b, inv(w[j]))));
                --j;
            }
            if (j < i) {
                // backward scan passed the forward position: the word is
                // fully traced and the endpoints must coincide
                if (f != b) coincidence(f, b);
                return;
            }
            if (i == j) {
                // deduction
                set(f, w[i], static_cast<std::int64_t>(b));
                set(b, inv(w[i]), static_cast<std::int64_t>(f));
                return;
            }
            // gap of length > 1: define a new coset and keep scanning
            std::int64_t nu = define_coset();
            if (nu < 0) return; // budget hit
            set(f, w[i], nu);
            set(static_cast<std::size_t>(nu), inv(w[i]), static_cast<std::int64_t>(f));
            f = static_cast<std::size_t>(nu);
            ++i;
        }
    }

    EnumerationOutcome finish() const {
        EnumerationOutcome out;
        out.cosets_defined = defined_;
        if (exceeded_) {
            out.kind = EnumerationOutcome::Kind::Exceeded;
            return out;
        }
        out.index = live_;
        out.kind = live_ == 1 ? EnumerationOutcome::Kind::TrivialGroup
                              : EnumerationOutcome::Kind::FiniteIndex;
        return out;
    }

    std::size_t ngens_;
    std::uint32_t width_;
    std::size_t budget_;
    std::vector<std::vector<std::uint32_t>> rels_;
    std::vector<std::int64_t> table_; // row per coset, -1 = undefined
    std::vector<std::size_t> rep_;    // union-find over cosets
    std::size_t defined_ = 0;
    std::size_t live_ = 0;
    bool exceeded_ = false;
};

} // namespace tc_detail

/// Enumerates cosets of the trivial subgroup; TrivialGroup iff the table
/// closes with a single coset.  Exceeded is a value, not an error.
inline EnumerationOutcome coset_enumerate(const GroupPresentation& p, std::size_t max_cosets) {
    if (max_cosets < 1) throw DimensionMismatchError("coset budget must be >= 1");
    if (p.generator_count == 0)
        return {EnumerationOutcome::Kind::TrivialGroup, 1, 1};
    tc_detail::Enumerator e(p, max_cosets);
    return e.run();
}

} // namespace sqgeom::topology
