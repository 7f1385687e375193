#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "stripmis/graph.hpp"
#include "stripmis/matching.hpp"

// Independent reference computations for tests. They share nothing with the
// library beyond the Graph type.
namespace ref {

using namespace stripmis;

inline Graph make(Vertex n, std::vector<Edge> edges, std::vector<Weight> w = {}) {
    return Graph(n, edges, std::move(w));
}

/// Heaviest independent set by plain subset enumeration (n <= 22); the
/// first optimum in mask order.
inline VertexSet mwis_set(const Graph& g) {
    const Vertex n = g.size();
    std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : g.edges()) {
        nbr[static_cast<std::size_t>(u)] |= 1u << v;
        nbr[static_cast<std::size_t>(v)] |= 1u << u;
    }
    Weight best = 0;
    std::uint32_t arg = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        Weight w = 0;
        bool ok = true;
        for (Vertex v = 0; v < n && ok; ++v) {
            if (!(mask >> v & 1)) continue;
            if (nbr[static_cast<std::size_t>(v)] & mask) ok = false;
            w += g.weight(v);
        }
        if (ok && w > best) {
            best = w;
            arg = mask;
        }
    }
    VertexSet out;
    for (Vertex v = 0; v < n; ++v) {
        if (arg >> v & 1) out.push_back(v);
    }
    return out;
}

inline Weight mwis_weight(const Graph& g) { return g.weight_of(mwis_set(g)); }

/// Optimum of G[s], in G's ids.
inline VertexSet mwis_within(const Graph& g, const VertexSet& s) {
    auto sub = induced_subgraph(g, s);
    return sub.lift(mwis_set(sub.graph));
}

/// Heaviest matching by enumerating edge subsets (|E| <= 22).
inline std::int64_t matching_weight(const EdgeWeightedGraph& g) {
    const auto m = g.edges().size();
    std::int64_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<char> used(static_cast<std::size_t>(g.size()), 0);
        std::int64_t w = 0;
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            const auto& e = g.edges()[i];
            if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) ok = false;
            used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
            w += e.weight;
        }
        if (ok) best = std::max(best, w);
    }
    return best;
}

/// BFS distances from a single vertex; -1 when unreachable.
inline std::vector<int> bfs(const Graph& g, Vertex s) {
    std::vector<int> d(static_cast<std::size_t>(g.size()), -1);
    std::vector<Vertex> q{s};
    d[static_cast<std::size_t>(s)] = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (Vertex u : g.neighbors(q[i])) {
            if (d[static_cast<std::size_t>(u)] < 0) {
                d[static_cast<std::size_t>(u)] = d[static_cast<std::size_t>(q[i])] + 1;
                q.push_back(u);
            }
        }
    }
    return d;
}

/// G(n, p) without a degree cap, for adversarial inputs.
inline Graph random_graph(Vertex n, double p, std::uint64_t seed, Weight wmax = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0, 1);
    std::uniform_int_distribution<Weight> wd(1, wmax);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (coin(rng) < p) edges.emplace_back(u, v);
        }
    }
    std::vector<Weight> w;
    for (Vertex v = 0; v < n; ++v) w.push_back(wd(rng));
    return Graph(n, edges, w);
}

}  // namespace ref
