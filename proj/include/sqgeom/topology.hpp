#pragma once

// The incidence 2-complex of a geometry (vertices = all objects, edges =
// incident pairs of distinct types, triangles = pairwise-incident triples,
// which under containment incidence are chains), integer H1 via Smith normal
// form, fundamental-group presentations from a spanning tree, and the
// triangle-geometricity test.

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sqgeom/errors.hpp"
#include "sqgeom/geometry.hpp"
#include "sqgeom/snf.hpp"
#include "sqgeom/toddcox.hpp"

namespace sqgeom::topology {

struct TwoComplex {
    std::size_t vertex_count = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;   // sorted pairs u < v
    std::vector<std::array<std::uint32_t, 3>> triangles;          // sorted triples
    std::vector<std::size_t> vertex_type;                         // 0 when untyped

    std::size_t edge_index(std::uint32_t u, std::uint32_t v) const {
        auto key = std::make_pair(std::min(u, v), std::max(u, v));
        auto it = edge_lookup_.find(key);
        if (it == edge_lookup_.end()) throw InternalError("edge not present in complex");
        return it->second;
    }

    void finalize() {
        edge_lookup_.clear();
        for (std::size_t e = 0; e < edges.size(); ++e) edge_lookup_[edges[e]] = e;
        for (const auto& t : triangles) {
            edge_index(t[0], t[1]);
            edge_index(t[0], t[2]);
            edge_index(t[1], t[2]);
        }
    }

    /// Signed boundary of edge e as (vertex, coefficient) pairs.
    std::array<std::pair<std::uint32_t, std::int32_t>, 2> boundary1(std::size_t e) const {
        return {{{edges[e].second, +1}, {edges[e].first, -1}}};
    }

    /// Signed boundary of triangle t as (edge index, coefficient) pairs,
    /// oriented by ascending vertex index.
    std::array<std::pair<std::size_t, std::int32_t>, 3> boundary2(std::size_t t) const {
        const auto& tri = triangles[t];
        return {{{edge_index(tri[1], tri[2]), +1},
                 {edge_index(tri[0], tri[2]), -1},
                 {edge_index(tri[0], tri[1]), +1}}};
    }

private:
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> edge_lookup_;
};

/// Builds a complex from explicit triangles (plus optional extra edges);
/// edges are the union of triangle sides and extras, in sorted order.
inline TwoComplex complex_from_triangles(
    std::size_t vertices, std::vector<std::array<std::uint32_t, 3>> triangles,
    std::vector<std::pair<std::uint32_t, std::uint32_t>> extra_edges = {}) {
    TwoComplex c;
    c.vertex_count = vertices;
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges(extra_edges.begin(),
                                                            extra_edges.end());
    for (auto& t : triangles) {
        std::sort(t.begin(), t.end());
        edges.emplace(t[0], t[1]);
        edges.emplace(t[0], t[2]);
        edges.emplace(t[1], t[2]);
    }
    c.edges.assign(edges.begin(), edges.end());
    std::sort(triangles.begin(), triangles.end());
    c.triangles = std::move(triangles);
    c.finalize();
    return c;
}

namespace cx_detail {

/// Indices of the geometry objects of type a lying inside B, found by
/// enumerating the coordinate a-subspaces of B.
inline std::vector<std::uint32_t> members_below(const geometry::Geometry& g, std::size_t a,
                                                const ortho::Subspace& B) {
    const gf::Field& F = g.space().field;
    std::vector<std::uint32_t> out;
    if (a == B.dim()) {
        if (auto r = g.find(B)) out.push_back(static_cast<std::uint32_t>(r->index));
        return out;
    }
    ortho::AmbientPtr coord = ortho::make_space(F, B.dim());
    for (const ortho::Subspace& cs : ortho::enumerate_subspaces(coord, a)) {
        linalg::Mat rows = linalg::mul(F, cs.basis(), B.basis());
        linalg::rref(F, rows);
        if (auto r = g.find(ortho::Subspace(g.space_ptr(), std::move(rows))))
            out.push_back(static_cast<std::uint32_t>(r->index));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cx_detail

/// Incidence 2-complex of the geometry.  With containment incidence every
/// pairwise-incident triple of distinct types is a chain W_a < W_b < W_c.
inline TwoComplex incidence_complex(const geometry::Geometry& g,
                                    std::uint64_t cell_budget = 10'000'000) {
    TwoComplex c;
    const std::size_t n = g.n();
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t t = 1; t <= n; ++t) {
        offset[t] = c.vertex_count;
        c.vertex_count += g.objects(t).size();
        for (std::size_t i = 0; i < g.objects(t).size(); ++i) c.vertex_type.push_back(t);
    }
    // incident pairs per type pair: members of each higher object, by lookup
    std::uint64_t cells = c.vertex_count;
    std::map<std::pair<std::size_t, std::size_t>,
             std::vector<std::vector<std::uint32_t>>>
        below; // (a,b) -> per b-object, indices of a-objects inside it
    for (std::size_t b = 2; b <= n; ++b) {
        for (std::size_t a = 1; a < b; ++a) {
            auto& rows = below[{a, b}];
            rows.reserve(g.objects(b).size());
            for (const auto& B : g.objects(b)) {
                rows.push_back(cx_detail::members_below(g, a, B));
                cells += rows.back().size();
                if (cells > cell_budget)
                    throw BudgetExceededError("complex cell budget exceeded", cell_budget);
            }
        }
    }
    for (auto& [key, rows] : below) {
        auto [a, b] = key;
        for (std::size_t j = 0; j < rows.size(); ++j)
            for (auto i : rows[j])
                c.edges.emplace_back(static_cast<std::uint32_t>(offset[a] + i),
                                     static_cast<std::uint32_t>(offset[b] + j));
    }
    std::sort(c.edges.begin(), c.edges.end());
    // triangles: chains a < b < cc assembled through the middle layer
    for (std::size_t cc = 3; cc <= n; ++cc) {
        for (std::size_t b = 2; b < cc; ++b) {
            const auto& mids = below.at({b, cc});
            for (std::size_t wj = 0; wj < mids.size(); ++wj) {
                for (auto lj : mids[wj]) {
                    for (std::size_t a = 1; a < b; ++a) {
                        for (auto pi : below.at({a, b})[lj]) {
                            c.triangles.push_back(
                                {static_cast<std::uint32_t>(offset[a] + pi),
                                 static_cast<std::uint32_t>(offset[b] + lj),
                                 static_cast<std::uint32_t>(offset[cc] + wj)});
                            if (++cells > cell_budget)
                                throw BudgetExceededError("complex cell budget exceeded",
                                                          cell_budget);
                        }
                    }
                }
            }
        }
    }
    std::sort(c.triangles.begin(), c.triangles.end());
    c.finalize();
    return c;
}

inline std::vector<std::vector<std::uint32_t>> skeleton_adjacency(const TwoComplex& c) {
    std::vector<std::vector<std::uint32_t>> adj(c.vertex_count);
    for (auto& [u, v] : c.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

inline std::size_t component_count(const TwoComplex& c) {
    auto adj = skeleton_adjacency(c);
    std::vector<bool> seen(c.vertex_count, false);
    std::size_t comps = 0;
    for (std::size_t s = 0; s < c.vertex_count; ++s) {
        if (seen[s]) continue;
        ++comps;
        std::deque<std::size_t> dq{s};
        seen[s] = true;
        while (!dq.empty()) {
            std::size_t u = dq.front();
            dq.pop_front();
            for (auto v : adj[u])
                if (!seen[v]) {
                    seen[v] = true;
                    dq.push_back(v);
                }
        }
    }
    return comps;
}

struct AbelianInvariants {
    std::size_t free_rank = 0;
    std::vector<std::int64_t> torsion;       // canonical chain, entries >= 2
    bool torsion_exact = true;               // false when the modular fallback ran
    std::map<std::int64_t, std::size_t> modular_ranks; // prime -> rank(d2) mod prime

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const AbelianInvariants& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

struct HomologyOptions {
    std::size_t dense_cap = 3000;      // max rows/cols for exact dense SNF
    std::vector<std::int64_t> fallback_primes = {2, 3, 5, 7, 11, 13, 2147483629};
    std::uint64_t ops_budget = 4'000'000'000ULL; // sparse-elimination work cap
};

namespace h_detail {

// rank of the edge-by-triangle boundary matrix modulo p, sparse elimination
inline std::size_t rank_mod_p(const TwoComplex& c, std::int64_t p,
                              std::uint64_t ops_budget = UINT64_MAX) {
    std::uint64_t ops = 0;
    // columns as sparse (edge, coeff) lists; eliminate greedily by column
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> cols(c.triangles.size());
    for (std::size_t t = 0; t < c.triangles.size(); ++t) {
        for (auto& [e, s] : c.boundary2(t)) {
            std::int64_t v = ((s % p) + p) % p;
            if (v) cols[t].emplace_back(static_cast<std::uint32_t>(e), v);
        }
        std::sort(cols[t].begin(), cols[t].end());
    }
    std::vector<std::int64_t> pivot_of_row(c.edges.size(), -1); // row -> column index
    auto mulmod = [p](std::int64_t a, std::int64_t b) {
        return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
    };
    auto invmod = [p, &mulmod](std::int64_t a) {
        std::int64_t r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    std::vector<std::int64_t> dense; // scratch row accumulator
    for (std::size_t t = 0; t < cols.size(); ++t) {
        auto col = std::move(cols[t]);
        // reduce against existing pivots until the leading (largest-index)
        // row is free; the largest-index convention keeps fill-in low on
        // boundary matrices
        while (!col.empty()) {
            std::uint32_t lead = col.back().first;
            std::int64_t piv_col = pivot_of_row[lead];
            if (piv_col < 0) break;
            // col -= (lead coeff / pivot lead coeff) * pivot column
            const auto& pv = cols[static_cast<std::size_t>(piv_col)];
            std::int64_t f = mulmod(col.back().second, invmod(pv.back().second));
            ops += col.size() + pv.size();
            if (ops > ops_budget)
                throw BudgetExceededError("modular rank elimination over work budget",
                                          ops_budget);
            std::vector<std::pair<std::uint32_t, std::int64_t>> merged;
            merged.reserve(col.size() + pv.size());
            std::size_t i = 0, j = 0;
            while (i < col.size() || j < pv.size()) {
                if (j == pv.size() || (i < col.size() && col[i].first < pv[j].first)) {
                    merged.push_back(col[i++]);
                } else if (i == col.size() || pv[j].first < col[i].first) {
                    std::int64_t v = ((-mulmod(f, pv[j].second)) % p + p) % p;
                    if (v) merged.emplace_back(pv[j].first, v);
                    ++j;
                } else {
                    std::int64_t v = ((col[i].second - mulmod(f, pv[j].second)) % p + p) % p;
                    if (v) merged.emplace_back(col[i].first, v);
                    ++i;
                    ++j;
                }
            }
            col = std::move(merged);
        }
        if (!col.empty()) {
            pivot_of_row[col.back().first] = static_cast<std::int64_t>(t);
            cols[t] = std::move(col);
            ++rank;
        } else {
            cols[t].clear();
        }
    }
    return rank;
}

} // namespace h_detail

/// H1 over the integers: ker(boundary1)/im(boundary2) in canonical form.
/// Exact via SNF when the boundary matrix fits under the dense cap; above it
/// the free rank and torsion are probed modulo the listed primes and the
/// result carries torsion_exact = false.
inline AbelianInvariants homology_h1(const TwoComplex& c, HomologyOptions opts = {}) {
    AbelianInvariants out;
    const std::size_t V = c.vertex_count, E = c.edges.size(), T = c.triangles.size();
    const std::size_t rank_d1 = V - component_count(c); // vertex-edge incidence rank
    const std::size_t cycles = E - rank_d1;
    if (T == 0) {
        out.free_rank = cycles;
        return out;
    }
    if (E <= opts.dense_cap && T <= opts.dense_cap) {
        std::vector<std::vector<std::int64_t>> m(E, std::vector<std::int64_t>(T, 0));
        for (std::size_t t = 0; t < T; ++t)
            for (auto& [e, s] : c.boundary2(t)) m[e][t] += s;
        auto diag = snf::smith_normal_form(m);
        std::size_t r2 = 0;
        for (const auto& d : diag) {
            if (d == 0) continue;
            ++r2;
            if (d > 1) out.torsion.push_back(static_cast<std::int64_t>(d));
        }
        out.free_rank = cycles - r2;
        return out;
    }
    out.torsion_exact = false;
    std::size_t best = 0;
    for (auto p : opts.fallback_primes) {
        std::size_t r = h_detail::rank_mod_p(c, p, opts.ops_budget);
        out.modular_ranks[p] = r;
        best = std::max(best, r);
    }
    out.free_rank = cycles - best;
    return out;
}

struct Pi1Result {
    bool connected = true;
    /// One presentation per connected component, in ascending least-vertex
    /// order except that the base vertex's component comes first.
    std::vector<GroupPresentation> components;

    const GroupPresentation& primary() const { return components.front(); }
};

/// Edge-path presentation from a BFS spanning tree rooted at base: one
/// generator per non-tree edge, one relator per triangle (boundary word with
/// tree edges collapsed, freely reduced; empty relators dropped).
inline Pi1Result pi1_presentation(const TwoComplex& c, std::uint32_t base = 0) {
    auto adj = skeleton_adjacency(c);
    Pi1Result out;
    std::vector<std::int64_t> comp(c.vertex_count, -1);
    std::vector<std::uint32_t> roots;
    // order components: base's first, then ascending unseen vertex
    std::vector<std::uint32_t> starts;
    if (c.vertex_count > 0) starts.push_back(base);
    for (std::uint32_t s = 0; s < c.vertex_count; ++s) starts.push_back(s);
    std::vector<bool> tree_edge(c.edges.size(), false);
    for (auto s : starts) {
        if (comp[s] >= 0) continue;
        std::int64_t id = static_cast<std::int64_t>(roots.size());
        roots.push_back(s);
        comp[s] = id;
        std::deque<std::uint32_t> dq{s};
        while (!dq.empty()) {
            std::uint32_t u = dq.front();
            dq.pop_front();
            for (auto v : adj[u]) {
                if (comp[v] >= 0) continue;
                comp[v] = id;
                tree_edge[c.edge_index(u, v)] = true;
                dq.push_back(v);
            }
        }
    }
    out.connected = roots.size() <= 1;
    // generators per component, numbered in canonical edge order
    std::vector<std::map<std::size_t, std::int32_t>> gen_of(roots.size());
    std::vector<GroupPresentation> pres(roots.size());
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        if (tree_edge[e]) continue;
        std::size_t k = static_cast<std::size_t>(comp[c.edges[e].first]);
        gen_of[k][e] = static_cast<std::int32_t>(++pres[k].generator_count);
    }
    for (std::size_t t = 0; t < c.triangles.size(); ++t) {
        const auto& tri = c.triangles[t];
        std::size_t k = static_cast<std::size_t>(comp[tri[0]]);
        std::vector<std::int32_t> word;
        auto push = [&](std::uint32_t u, std::uint32_t v) {
            std::size_t e = c.edge_index(u, v);
            if (tree_edge[e]) return;
            std::int32_t g = gen_of[k].at(e);
            word.push_back(u < v ? g : -g);
        };
        push(tri[0], tri[1]);
        push(tri[1], tri[2]);
        push(tri[2], tri[0]);
        // free reduction
        std::vector<std::int32_t> red;
        for (auto s : word) {
            if (!red.empty() && red.back() == -s)
                red.pop_back();
            else
                red.push_back(s);
        }
        if (!red.empty()) pres[k].relators.push_back(std::move(red));
    }
    out.components = std::move(pres);
    if (out.components.empty()) out.components.push_back({});
    return out;
}

/// Abelianization of a presentation, via SNF of the relator-exponent matrix.
inline AbelianInvariants abelianization(const GroupPresentation& p) {
    AbelianInvariants out;
    if (p.generator_count == 0) return out;
    if (p.relators.empty()) {
        out.free_rank = p.generator_count;
        return out;
    }
    std::vector<std::vector<std::int64_t>> m(p.generator_count,
                                             std::vector<std::int64_t>(p.relators.size(), 0));
    for (std::size_t r = 0; r < p.relators.size(); ++r)
        for (auto s : p.relators[r]) {
            std::size_t g = static_cast<std::size_t>(std::abs(s)) - 1;
            m[g][r] += s > 0 ? 1 : -1;
        }
    auto diag = snf::smith_normal_form(m);
    std::size_t rank = 0;
    for (const auto& d : diag) {
        if (d == 0) continue;
        ++rank;
        if (d > 1) out.torsion.push_back(static_cast<std::int64_t>(d));
    }
    out.free_rank = p.generator_count - rank;
    return out;
}

struct TriangleGeometricResult {
    bool geometric = false;
    std::optional<ortho::Subspace> witness;
};

/// A triangle a,b,c (pairwise spanning square-type lines) is geometric iff
/// some object is incident to all three points and all three lines; with
/// containment incidence this is exactly an object containing span(a,b,c).
inline TriangleGeometricResult triangle_geometric(const geometry::Geometry& g,
                                                  geometry::ObjectRef a, geometry::ObjectRef b,
                                                  geometry::ObjectRef c) {
    if (a.type != 1 || b.type != 1 || c.type != 1)
        throw NotATriangleError("triangle vertices must be points");
    if (a.index == b.index || a.index == c.index || b.index == c.index)
        throw NotATriangleError("triangle vertices must be distinct");
    const auto& A = g.object(a);
    const auto& B = g.object(b);
    const auto& C = g.object(c);
    auto line_ok = [&](const ortho::Subspace& x, const ortho::Subspace& y) {
        ortho::Subspace L =
            ortho::span(g.space_ptr(), {x.basis().row(0), y.basis().row(0)});
        return ortho::classify(L).kind == geometry::SubspaceKind::Square;
    };
    if (!line_ok(A, B) || !line_ok(A, C) || !line_ok(B, C))
        throw NotATriangleError("vertices are not pairwise collinear");
    ortho::Subspace U =
        ortho::span(g.space_ptr(), {A.basis().row(0), B.basis().row(0), C.basis().row(0)});
    if (auto ref = g.find(U)) return {true, g.object(*ref)}; // the span itself, when square
    for (std::size_t t = U.dim() + 1; t <= g.n(); ++t) {
        for (const auto& W : g.objects(t)) {
            if (ortho::contains(W, U)) return {true, W};
        }
    }
    return {false, std::nullopt};
}

/// Exports a presentation in generators/relators text form: generators
/// g1,g2,..., inverses G1,G2,..., one relator per line.
inline std::string presentation_text(const GroupPresentation& p) {
    std::string out = "generators: " + std::to_string(p.generator_count) + "\n";
    for (const auto& rel : p.relators) {
        for (std::size_t i = 0; i < rel.size(); ++i) {
            if (i) out += ' ';
            std::int32_t s = rel[i];
            out += (s > 0 ? "g" : "G") + std::to_string(s > 0 ? s : -s);
        }
        out += '\n';
    }
    return out;
}

} // namespace sqgeom::topology
