#pragma once

// Orthogonal-group machinery: reflections, orbit closures on flags,
// constructive isometries between subspaces of equal class, and the
// flag-transitivity check via the reflection-generated group.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sqgeom/errors.hpp"
#include "sqgeom/geometry.hpp"
#include "sqgeom/linalg.hpp"
#include "sqgeom/ortho.hpp"

namespace sqgeom::group {

using linalg::Mat;
using linalg::Row;
using ortho::AmbientPtr;
using ortho::Subspace;

/// An isometry of the ambient space: M with M M^T = I (identity Gram).
/// Vectors act on the right: x -> x M.
struct IsometryMatrix {
    Mat m;
    std::uint32_t det = 0; // cached; 1 or q-1 (= -1)

    bool is_orthogonal(const gf::Field& F) const {
        return linalg::mul(F, m, linalg::transpose(m)) == linalg::identity(m.rows);
    }
};

inline Row image(const gf::Field& F, const Row& v, const IsometryMatrix& g) {
    return linalg::mul_row(F, v, g.m);
}

inline Subspace image(const Subspace& W, const IsometryMatrix& g) {
    const gf::Field& F = W.space().field;
    Mat img = linalg::mul(F, W.basis(), g.m);
    linalg::rref(F, img);
    return Subspace(W.space_ptr(), std::move(img));
}

/// Reflection r_v(x) = x - 2 (x,v)/(v,v) v; fixes v^perp, negates v.
inline IsometryMatrix reflection(const AmbientPtr& space, const Row& v) {
    const gf::Field& F = space->field;
    std::uint32_t nv = ortho::form_value(*space, v, v);
    if (nv == 0) throw IsotropicVectorError("reflection in an isotropic vector");
    std::uint32_t two_over = F.div(F.from_int(2), nv);
    Mat m(space->dim, space->dim);
    for (std::size_t i = 0; i < space->dim; ++i) {
        // image of e_i
        std::uint32_t c = F.mul(two_over, v[i]); // 2 (e_i, v)/(v,v)
        for (std::size_t j = 0; j < space->dim; ++j) {
            std::uint32_t x = (i == j) ? F.one() : F.zero();
            m.at(i, j) = F.sub(x, F.mul(c, v[j]));
        }
    }
    IsometryMatrix out{std::move(m), 0};
    out.det = linalg::det(F, out.m); // always -1 for a reflection
    return out;
}

/// A flag as a canonical chain of subspaces (ascending dimension).
using SubspaceFlag = std::vector<Subspace>;

inline std::vector<std::uint32_t> flag_key(const SubspaceFlag& f) {
    std::vector<std::uint32_t> key;
    for (const auto& s : f) {
        key.push_back(static_cast<std::uint32_t>(s.dim()));
        key.insert(key.end(), s.basis().a.begin(), s.basis().a.end());
    }
    return key;
}

inline SubspaceFlag image(const SubspaceFlag& f, const IsometryMatrix& g) {
    SubspaceFlag out;
    out.reserve(f.size());
    for (const auto& s : f) out.push_back(image(s, g));
    return out;
}

/// BFS closure of a flag under the generator action.  The returned set is
/// deterministic (keys are canonical basis encodings).
inline std::set<std::vector<std::uint32_t>> orbit(const SubspaceFlag& seed,
                                                  const std::vector<IsometryMatrix>& generators,
                                                  std::uint64_t budget = 10'000'000) {
    std::set<std::vector<std::uint32_t>> seen;
    std::deque<SubspaceFlag> frontier;
    seen.insert(flag_key(seed));
    frontier.push_back(seed);
    while (!frontier.empty()) {
        SubspaceFlag f = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& g : generators) {
            SubspaceFlag img = image(f, g);
            auto key = flag_key(img);
            if (seen.insert(std::move(key)).second) {
                if (seen.size() > budget)
                    throw BudgetExceededError("orbit budget exceeded", budget);
                frontier.push_back(std::move(img));
            }
        }
    }
    return seen;
}

/// Reflections in every nonisotropic projective point (canonical 1-space
/// representatives).  These generate the full orthogonal group.
inline std::vector<IsometryMatrix> reflection_generators(const AmbientPtr& space,
                                                         std::uint64_t budget = 10'000'000) {
    std::vector<IsometryMatrix> out;
    for (const Subspace& P : ortho::enumerate_subspaces(space, 1, {.budget = budget})) {
        Row v = P.basis().row(0);
        if (ortho::form_value(*space, v, v) == 0) continue;
        out.push_back(reflection(space, v));
    }
    return out;
}

struct FlagTransitivityResult {
    bool transitive = false;
    std::size_t chamber_count = 0;
    std::size_t chamber_orbit_size = 0;
    std::map<std::size_t, std::size_t> type_orbit_sizes; // orbit of one object per type
    std::size_t so_chamber_orbit_count = 0; // chamber orbits under even reflection words
};

namespace detail {

inline void enumerate_chambers(const geometry::Geometry& g, std::size_t type, SubspaceFlag& cur,
                               std::vector<SubspaceFlag>& out) {
    if (type > g.n()) {
        out.push_back(cur);
        return;
    }
    for (const Subspace& X : g.objects(type)) {
        if (!cur.empty() && !ortho::contains(X, cur.back())) continue;
        cur.push_back(X);
        enumerate_chambers(g, type + 1, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

inline std::vector<SubspaceFlag> chambers(const geometry::Geometry& g) {
    std::vector<SubspaceFlag> out;
    SubspaceFlag cur;
    detail::enumerate_chambers(g, 1, cur, out);
    return out;
}

/// Verifies that the reflection-generated orthogonal group moves one chamber
/// onto every chamber.  Also reports the chamber-orbit count under products
/// of two reflections (the rotation subgroup), via parity BFS.
inline FlagTransitivityResult verify_flag_transitivity(const geometry::Geometry& g,
                                                       std::uint64_t budget = 10'000'000) {
    FlagTransitivityResult out;
    std::vector<SubspaceFlag> all = chambers(g);
    out.chamber_count = all.size();
    if (all.empty()) return out;
    std::vector<IsometryMatrix> gens = reflection_generators(g.space_ptr(), budget);

    // orbit with parity tracking: key -> parity mask (bit0 even, bit1 odd)
    std::map<std::vector<std::uint32_t>, std::uint8_t> state;
    std::deque<std::pair<SubspaceFlag, std::uint8_t>> frontier;
    state[flag_key(all.front())] = 1;
    frontier.emplace_back(all.front(), 0);
    std::size_t visited = 1;
    bool parity_merged = false;
    while (!frontier.empty()) {
        auto [f, par] = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& gen : gens) {
            SubspaceFlag img = image(f, gen);
            std::uint8_t npar = par ^ 1u;
            auto key = flag_key(img);
            auto& mask = state[key];
            std::uint8_t bit = static_cast<std::uint8_t>(1u << npar);
            if (mask == 0) ++visited;
            if (!(mask & bit)) {
                mask |= bit;
                if ((mask & 3u) == 3u) parity_merged = true;
                if (visited > budget) throw BudgetExceededError("orbit budget exceeded", budget);
                frontier.emplace_back(std::move(img), npar);
            }
        }
    }
    out.chamber_orbit_size = visited;
    out.transitive = visited == all.size();
    // SO-orbit structure: within one O-orbit, either parities merge (a single
    // SO-orbit) or the orbit splits in two.  Only reported when transitive.
    if (out.transitive) out.so_chamber_orbit_count = parity_merged ? 1 : 2;

    for (std::size_t t = 1; t <= g.n(); ++t) {
        SubspaceFlag single{g.objects(t).front()};
        out.type_orbit_sizes[t] = orbit(single, gens, budget).size();
    }
    return out;
}

/// Orthogonal basis with norms scaled into {1, g}, g the least nonsquare;
/// pairs of g-norm vectors are then rotated into norm-1 pairs, leaving at
/// most one g-norm vector, placed last.  The resulting frame has Gram
/// diag(1,...,1) or diag(1,...,1,g).
inline std::vector<Row> normalized_frame(const Subspace& W) {
    const gf::Field& F = W.space().field;
    const ortho::AmbientSpace& V = W.space();
    std::uint32_t g = F.least_nonsquare();
    std::vector<Row> basis = ortho::orthogonal_basis(W);
    std::vector<Row> ones, gs;
    for (Row& v : basis) {
        std::uint32_t nv = ortho::form_value(V, v, v);
        std::uint32_t scale;
        if (F.is_nonzero_square(nv)) {
            scale = F.inv(*F.square_root(nv));
        } else {
            scale = F.inv(*F.square_root(F.div(nv, g)));
        }
        for (auto& x : v) x = F.mul(x, scale);
        (F.is_nonzero_square(ortho::form_value(V, v, v)) ? ones : gs).push_back(v);
    }
    while (gs.size() >= 2) {
        Row b1 = gs.back();
        gs.pop_back();
        Row b2 = gs.back();
        gs.pop_back();
        // u = x b1 + y b2 with (u,u) = g (x^2 + y^2) = 1; scan canonically
        std::uint32_t target = F.inv(g);
        Row u;
        for (std::int64_t rx = 0; rx < F.q() && u.empty(); ++rx) {
            std::uint32_t x = F.element_at(rx);
            std::uint32_t rest = F.sub(target, F.mul(x, x));
            if (auto y = F.square_root(rest)) {
                u.assign(V.dim, 0);
                for (std::size_t c = 0; c < V.dim; ++c)
                    u[c] = F.add(F.mul(x, b1[c]), F.mul(*y, b2[c]));
            }
        }
        if (u.empty()) throw InternalError("norm-1 vector not found in a g,g plane");
        // w = component of b2 orthogonal to u inside the plane, rescaled to norm 1
        std::uint32_t c = ortho::form_value(V, b2, u); // (u,u) = 1
        Row w(V.dim);
        for (std::size_t j = 0; j < V.dim; ++j) w[j] = F.sub(b2[j], F.mul(c, u[j]));
        std::uint32_t nw = ortho::form_value(V, w, w);
        std::uint32_t scale = F.inv(*F.square_root(nw)); // square: plane det is square
        for (auto& x : w) x = F.mul(x, scale);
        ones.push_back(std::move(u));
        ones.push_back(std::move(w));
    }
    for (auto& v : gs) ones.push_back(std::move(v)); // at most one, kept last
    return ones;
}

/// Constructs an ambient isometry mapping W1 onto W2 by matching normalized
/// frames of the subspaces and of their perps (Witt-style extension).
inline IsometryMatrix find_isometry(const Subspace& W1, const Subspace& W2) {
    const gf::Field& F = W1.space().field;
    if (W1.dim() != W2.dim())
        throw DimensionMismatchError("isometry requires equal subspace dimensions");
    ortho::SubspaceClass c1 = ortho::classify(W1), c2 = ortho::classify(W2);
    if (c1.kind == ortho::SubspaceKind::Degenerate || c2.kind == ortho::SubspaceKind::Degenerate)
        throw DegenerateSubspaceError("isometry construction needs nondegenerate subspaces");
    if (c1 != c2) throw ClassMismatchError("subspaces of different quadratic class");

    std::vector<Row> f1 = normalized_frame(W1);
    std::vector<Row> f2 = normalized_frame(W2);
    if (W1.dim() < W1.space().dim) {
        for (auto& v : normalized_frame(ortho::perp(W1))) f1.push_back(v);
        for (auto& v : normalized_frame(ortho::perp(W2))) f2.push_back(v);
    }
    Mat U1 = linalg::from_rows(f1), U2 = linalg::from_rows(f2);
    IsometryMatrix out{linalg::mul(F, linalg::inverse(F, U1), U2), 0};
    out.det = linalg::det(F, out.m);
    return out;
}

} // namespace sqgeom::group
