#pragma once

// The geometry of square-type subspaces of F_q^{n+1}: typed objects
// (type = dimension), containment incidence, flags, residues, and the
// collinearity graph.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sqgeom/errors.hpp"
#include "sqgeom/gf.hpp"
#include "sqgeom/ortho.hpp"

namespace sqgeom::geometry {

using ortho::AmbientPtr;
using ortho::Subspace;
using ortho::SubspaceKind;

struct ObjectRef {
    std::size_t type;  // = dimension, in 1..n
    std::size_t index; // position in the canonical object order

    bool operator==(const ObjectRef& o) const { return type == o.type && index == o.index; }
    bool operator<(const ObjectRef& o) const {
        return type != o.type ? type < o.type : index < o.index;
    }
};

struct BuildOptions {
    bool allow_nonstandard_q = false; // permit odd q with -1 a nonsquare
    std::uint64_t budget = 10'000'000;
};

class Geometry {
public:
    Geometry(AmbientPtr space, std::vector<std::vector<Subspace>> objects,
             std::vector<std::string> provenance)
        : space_(std::move(space)), objects_(std::move(objects)),
          provenance_(std::move(provenance)) {
        for (std::size_t t = 0; t < objects_.size(); ++t) {
            for (std::size_t i = 0; i < objects_[t].size(); ++i)
                index_[t].emplace(objects_[t][i].basis().a, i);
        }
    }

    const ortho::AmbientSpace& space() const { return *space_; }
    AmbientPtr space_ptr() const { return space_; }
    std::size_t n() const { return space_->dim - 1; }
    std::int64_t q() const { return space_->field.q(); }

    /// Objects of one type, in canonical enumeration order.
    const std::vector<Subspace>& objects(std::size_t type) const { return objects_.at(type - 1); }
    const Subspace& object(ObjectRef r) const { return objects_.at(r.type - 1).at(r.index); }

    std::map<std::size_t, std::size_t> counts_per_type() const {
        std::map<std::size_t, std::size_t> c;
        for (std::size_t t = 1; t <= n(); ++t) c[t] = objects(t).size();
        return c;
    }

    std::optional<ObjectRef> find(const Subspace& s) const {
        std::size_t t = s.dim();
        if (t < 1 || t > n()) return std::nullopt;
        auto it = index_[t - 1].find(s.basis().a);
        if (it == index_[t - 1].end()) return std::nullopt;
        return ObjectRef{t, it->second};
    }

    const std::vector<std::string>& provenance() const { return provenance_; }

private:
    AmbientPtr space_;
    std::vector<std::vector<Subspace>> objects_; // [type-1]
    std::vector<std::string> provenance_;
    mutable std::map<std::size_t, std::map<std::vector<std::uint32_t>, std::size_t>> index_;
};

inline Geometry build_geometry(std::size_t n, std::int64_t q, BuildOptions opts = {}) {
    if (n < 2) throw DimensionMismatchError("geometry rank n must be >= 2");
    gf::Field F = gf::make_field_q(q);
    std::vector<std::string> provenance;
    if (!F.minus_one_is_square()) {
        if (!opts.allow_nonstandard_q)
            throw NonstandardFieldError("q = " + std::to_string(q) +
                                        " has -1 a nonsquare; pass the override to build anyway");
        provenance.push_back("warning: -1 is a nonsquare in F_" + std::to_string(q) +
                             "; square-type and plus-type differ");
    }
    AmbientPtr space = ortho::make_space(std::move(F), n + 1);
    std::vector<std::vector<Subspace>> objects;
    std::uint64_t total = 0;
    for (std::size_t d = 1; d <= n; ++d) {
        total += ortho::gaussian_binomial(n + 1, d, q);
        if (total > opts.budget)
            throw BudgetExceededError("geometry object enumeration over budget", opts.budget);
        objects.push_back(ortho::enumerate_subspaces(
            space, d, {.filter = SubspaceKind::Square, .budget = opts.budget}));
    }
    return Geometry(space, std::move(objects), std::move(provenance));
}

/// Containment incidence (reflexive).
inline bool incident(const Subspace& a, const Subspace& b) {
    if (a.dim() == b.dim()) return a == b;
    return a.dim() < b.dim() ? ortho::contains(b, a) : ortho::contains(a, b);
}

inline bool incident(const Geometry& g, ObjectRef a, ObjectRef b) {
    return incident(g.object(a), g.object(b));
}

/// A flag as a strictly-increasing-by-type chain of object references.
/// Validates membership and pairwise incidence against the geometry.
struct Flag {
    std::vector<ObjectRef> members;

    static Flag of(const Geometry& g, std::vector<ObjectRef> refs) {
        std::sort(refs.begin(), refs.end());
        for (std::size_t i = 0; i < refs.size(); ++i) {
            if (refs[i].type < 1 || refs[i].type > g.n() ||
                refs[i].index >= g.objects(refs[i].type).size())
                throw FlagNotInGeometryError("flag member out of range");
            if (i > 0 && refs[i].type == refs[i - 1].type)
                throw FlagNotInGeometryError("flag has two objects of one type");
            if (i > 0 && !ortho::contains(g.object(refs[i]), g.object(refs[i - 1])))
                throw FlagNotInGeometryError("flag members are not pairwise incident");
        }
        return Flag{std::move(refs)};
    }
};

/// Square-type subspaces of the ambient space lying inside U, of dimension d,
/// via enumeration of the coordinate space of U.  Canonical ambient order is
/// not guaranteed; the list is sorted for determinism.
inline std::vector<Subspace> square_subspaces_within(const Subspace& U, std::size_t d,
                                                     std::uint64_t budget = 10'000'000) {
    const gf::Field& F = U.space().field;
    AmbientPtr coord = ortho::make_space(F, U.dim());
    std::vector<Subspace> out;
    if (d >= 1 && d <= U.dim() && U.dim() >= 2) {
        for (const Subspace& c : ortho::enumerate_subspaces(coord, d, {.budget = budget})) {
            linalg::Mat rows = linalg::mul(F, c.basis(), U.basis());
            linalg::rref(F, rows);
            Subspace s(U.space_ptr(), std::move(rows));
            if (ortho::classify(s).kind == SubspaceKind::Square) out.push_back(std::move(s));
        }
    } else if (d == 1 && U.dim() == 1) {
        if (ortho::classify(U).kind == SubspaceKind::Square) out.push_back(U);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct ResidueFactor {
    std::size_t type_lo = 0, type_hi = 0;                    // cotype interval
    std::map<std::size_t, std::vector<Subspace>> objects;    // keyed by original type
    std::optional<Subspace> lower, upper;                    // bounding flag members
    // comparison geometry on lower^perp n upper, keyed by dimension 1..k
    std::optional<Subspace> comparison_space;
    std::map<std::size_t, std::vector<Subspace>> comparison_objects;
};

struct Residue {
    std::vector<ResidueFactor> factors;
    std::map<std::size_t, std::size_t> counts; // objects per original type
};

/// Residue of a nonempty flag: per cotype interval, the objects strictly
/// between the bounding flag members, plus the comparison geometry built on
/// lower^perp n upper for isomorphism-invariant testing.
inline Residue residue(const Geometry& g, const Flag& f, std::uint64_t budget = 10'000'000) {
    if (f.members.empty()) throw EmptyFlagError("residue of the empty flag");
    Flag::of(g, f.members); // revalidate
    const std::size_t n = g.n();
    std::map<std::size_t, const Subspace*> by_type;
    for (const auto& r : f.members) by_type[r.type] = &g.object(r);

    Residue out;
    std::size_t t = 1;
    while (t <= n) {
        if (by_type.count(t)) {
            ++t;
            continue;
        }
        std::size_t lo = t, hi = t;
        while (hi + 1 <= n && !by_type.count(hi + 1)) ++hi;
        ResidueFactor factor;
        factor.type_lo = lo;
        factor.type_hi = hi;
        if (lo > 1) factor.lower = *by_type.at(lo - 1);
        if (hi < n) factor.upper = *by_type.at(hi + 1);
        for (std::size_t ty = lo; ty <= hi; ++ty) {
            std::vector<Subspace> objs;
            for (const Subspace& X : g.objects(ty)) {
                if (factor.lower && !ortho::contains(X, *factor.lower)) continue;
                if (factor.upper && !ortho::contains(*factor.upper, X)) continue;
                objs.push_back(X);
            }
            out.counts[ty] = objs.size();
            factor.objects[ty] = std::move(objs);
        }
        // comparison space: lower^perp n upper (absent bounds: 0 below, V above)
        std::optional<Subspace> cmp;
        if (factor.lower && factor.upper)
            cmp = ortho::intersect(ortho::perp(*factor.lower), *factor.upper);
        else if (factor.lower)
            cmp = ortho::perp(*factor.lower);
        else if (factor.upper)
            cmp = factor.upper;
        if (cmp) {
            factor.comparison_space = *cmp;
            std::size_t k = hi - lo + 1;
            for (std::size_t d = 1; d <= k; ++d)
                factor.comparison_objects[d] = square_subspaces_within(*cmp, d, budget);
        }
        out.factors.push_back(std::move(factor));
        t = hi + 1;
    }
    return out;
}

struct CollinearityGraph {
    std::vector<std::vector<std::uint32_t>> adj; // vertex = type-1 object index
};

/// Vertices are the points; edges join points whose span is square-type.
inline CollinearityGraph collinearity_graph(const Geometry& g) {
    const auto& pts = g.objects(1);
    const gf::Field& F = g.space().field;
    CollinearityGraph out;
    out.adj.assign(pts.size(), {});
    std::vector<linalg::Row> reps;
    reps.reserve(pts.size());
    for (const auto& p : pts) reps.push_back(p.basis().row(0));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            // span is square iff det of the 2x2 Gram of representatives is a
            // nonzero square (independent of representative scaling)
            std::uint32_t aa = ortho::form_value(g.space(), reps[i], reps[i]);
            std::uint32_t bb = ortho::form_value(g.space(), reps[j], reps[j]);
            std::uint32_t ab = ortho::form_value(g.space(), reps[i], reps[j]);
            std::uint32_t d = F.sub(F.mul(aa, bb), F.mul(ab, ab));
            if (F.quadratic_class(d) == gf::QuadraticClass::Square) {
                out.adj[i].push_back(static_cast<std::uint32_t>(j));
                out.adj[j].push_back(static_cast<std::uint32_t>(i));
            }
        }
    }
    return out;
}

struct Connectivity {
    bool connected = false;
    std::optional<std::size_t> diameter; // nullopt = infinite
    std::size_t component_count = 0;
};

inline Connectivity connectivity(const CollinearityGraph& graph) {
    const std::size_t n = graph.adj.size();
    Connectivity out;
    if (n == 0) {
        out.connected = true;
        out.diameter = 0;
        out.component_count = 0;
        return out;
    }
    std::vector<std::int64_t> comp(n, -1);
    std::size_t comps = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = static_cast<std::int64_t>(comps);
        std::deque<std::size_t> dq{s};
        while (!dq.empty()) {
            std::size_t u = dq.front();
            dq.pop_front();
            for (auto v : graph.adj[u])
                if (comp[v] < 0) {
                    comp[v] = static_cast<std::int64_t>(comps);
                    dq.push_back(v);
                }
        }
        ++comps;
    }
    out.component_count = comps;
    out.connected = comps == 1;
    if (!out.connected) return out; // diameter stays infinite
    std::size_t diam = 0;
    std::vector<std::int64_t> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::deque<std::size_t> dq{s};
        while (!dq.empty()) {
            std::size_t u = dq.front();
            dq.pop_front();
            for (auto v : graph.adj[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    dq.push_back(v);
                }
        }
        for (auto d : dist) diam = std::max(diam, static_cast<std::size_t>(d));
    }
    out.diameter = diam;
    return out;
}

struct TransversalReport {
    bool transversal = true;
    std::string counterexample; // empty when transversal
};

namespace detail {

// Encodes an optional object as type*2^32+index; sentinels for 0 and V.
inline std::int64_t gap_key(std::optional<ObjectRef> r) {
    if (!r) return -1;
    return static_cast<std::int64_t>(r->type) * (std::int64_t{1} << 32) +
           static_cast<std::int64_t>(r->index);
}

inline bool gap_has_chain(const Geometry& g, std::optional<ObjectRef> below,
                          std::optional<ObjectRef> above,
                          std::map<std::pair<std::int64_t, std::int64_t>, bool>& memo) {
    std::size_t lo = below ? below->type + 1 : 1;
    std::size_t hi = above ? above->type - 1 : g.n();
    if (lo > hi) return true;
    auto key = std::make_pair(gap_key(below), gap_key(above));
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool ok = false;
    const auto& candidates = g.objects(lo);
    for (std::size_t i = 0; i < candidates.size() && !ok; ++i) {
        if (below && !ortho::contains(candidates[i], g.object(*below))) continue;
        if (above && !ortho::contains(g.object(*above), candidates[i])) continue;
        ok = gap_has_chain(g, ObjectRef{lo, i}, above, memo);
    }
    memo[key] = ok;
    return ok;
}

} // namespace detail

/// True iff every flag extends to a chamber.  Equivalent to every incidence
/// gap (including the gaps below and above each single object) admitting a
/// full chain of intermediate objects; gaps are checked exhaustively with
/// memoization.
inline TransversalReport is_transversal(const Geometry& g) {
    std::map<std::pair<std::int64_t, std::int64_t>, bool> memo;
    TransversalReport out;
    auto fail = [&](const std::string& what) {
        out.transversal = false;
        out.counterexample = what;
    };
    // the empty flag: some chamber must exist
    if (!detail::gap_has_chain(g, std::nullopt, std::nullopt, memo)) {
        fail("empty flag extends to no chamber");
        return out;
    }
    for (std::size_t t = 1; t <= g.n(); ++t) {
        for (std::size_t i = 0; i < g.objects(t).size(); ++i) {
            ObjectRef r{t, i};
            if (!detail::gap_has_chain(g, std::nullopt, r, memo) ||
                !detail::gap_has_chain(g, r, std::nullopt, memo)) {
                fail("object (type " + std::to_string(t) + ", index " + std::to_string(i) +
                     ") extends to no chamber");
                return out;
            }
        }
    }
    // all incident pairs with a gap of size >= 1 between them
    for (std::size_t a = 1; a <= g.n(); ++a) {
        for (std::size_t b = a + 2; b <= g.n(); ++b) {
            for (std::size_t i = 0; i < g.objects(a).size(); ++i) {
                for (std::size_t j = 0; j < g.objects(b).size(); ++j) {
                    if (!ortho::contains(g.objects(b)[j], g.objects(a)[i])) continue;
                    if (!detail::gap_has_chain(g, ObjectRef{a, i}, ObjectRef{b, j}, memo)) {
                        fail("incident pair (type " + std::to_string(a) + ", index " +
                             std::to_string(i) + ") < (type " + std::to_string(b) + ", index " +
                             std::to_string(j) + ") admits no full chain");
                        return out;
                    }
                }
            }
        }
    }
    return out;
}

/// Transversality of a bare typed object family (used for residue factors).
/// Rank-1 families are trivially transversal.
inline bool is_transversal_family(const std::map<std::size_t, std::vector<Subspace>>& by_type) {
    std::vector<std::size_t> types;
    for (const auto& [t, objs] : by_type) {
        if (objs.empty()) return false;
        types.push_back(t);
    }
    if (types.size() <= 1) return true;
    // check every chain can be completed greedily between consecutive types
    // (containment incidence): every object of type t_i lies under some object
    // of type t_{i+1} and over some object of type t_{i-1}
    for (std::size_t i = 0; i + 1 < types.size(); ++i) {
        for (const auto& X : by_type.at(types[i])) {
            bool up = false;
            for (const auto& Y : by_type.at(types[i + 1]))
                if (ortho::contains(Y, X)) {
                    up = true;
                    break;
                }
            if (!up) return false;
        }
    }
    return true;
}

} // namespace sqgeom::geometry
