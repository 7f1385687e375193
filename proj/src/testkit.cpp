#include "stripmis/testkit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <string>

namespace stripmis {

namespace {

/// Fixed-size bitset over 0..n-1 sized at runtime.
class Bits {
public:
    explicit Bits(Vertex n = 0) : words_((static_cast<std::size_t>(n) + 63) / 64, 0) {}

    void set(Vertex v) { words_[word(v)] |= bit(v); }
    void reset(Vertex v) { words_[word(v)] &= ~bit(v); }
    bool test(Vertex v) const { return words_[word(v)] & bit(v); }

    bool none() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }
    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    int count_and(const Bits& o) const {
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }
    Bits minus(const Bits& o) const {
        Bits r = *this;
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
        return r;
    }
    Bits intersect(const Bits& o) const {
        Bits r = *this;
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
        return r;
    }
    void unite(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    }
    bool operator==(const Bits&) const = default;

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            for (std::uint64_t w = words_[i]; w; w &= w - 1) {
                f(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
            }
        }
    }
    Vertex first() const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i]) return static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i])));
        }
        return -1;
    }

private:
    static std::size_t word(Vertex v) { return static_cast<std::size_t>(v) / 64; }
    static std::uint64_t bit(Vertex v) { return std::uint64_t{1} << (static_cast<unsigned>(v) % 64); }

    std::vector<std::uint64_t> words_;
};

class Brancher {
public:
    explicit Brancher(const Graph& g) : g_(g) {
        for (Vertex v = 0; v < g.size(); ++v) {
            Bits b(g.size());
            for (Vertex u : g.neighbors(v)) b.set(u);
            adj_.push_back(std::move(b));
        }
    }

    IndependentSet solve_all() {
        Bits all(g_.size());
        for (Vertex v = 0; v < g_.size(); ++v) all.set(v);
        auto out = solve(all);
        std::sort(out.vertices.begin(), out.vertices.end());
        return out;
    }

private:
    IndependentSet solve(const Bits& p) {
        if (p.none()) return {};
        Bits comp = component_of(p, p.first());
        if (!(comp == p)) {
            auto a = solve_connected(comp);
            auto b = solve(p.minus(comp));
            a.vertices.insert(a.vertices.end(), b.vertices.begin(), b.vertices.end());
            a.weight += b.weight;
            return a;
        }
        return solve_connected(p);
    }

    IndependentSet solve_connected(const Bits& p) {
        Vertex pick = -1;
        int pick_degree = -1;
        Vertex leaf = -1;
        Vertex leaf_nbr = -1;
        p.for_each([&](Vertex v) {
            int d = adj_[static_cast<std::size_t>(v)].count_and(p);
            if (d > pick_degree) {
                pick = v;
                pick_degree = d;
            }
            if (d == 1 && leaf < 0) {
                Vertex y = adj_[static_cast<std::size_t>(v)].intersect(p).first();
                if (g_.weight(v) >= g_.weight(y)) {
                    leaf = v;
                    leaf_nbr = y;
                }
            }
        });
        if (pick_degree == 0) return {{pick}, g_.weight(pick)};
        if (leaf >= 0) {
            // Some optimum contains a leaf at least as heavy as its neighbour.
            Bits rest = p;
            rest.reset(leaf);
            rest.reset(leaf_nbr);
            auto out = solve(rest);
            out.vertices.push_back(leaf);
            out.weight += g_.weight(leaf);
            return out;
        }
        Bits without_closed = p.minus(adj_[static_cast<std::size_t>(pick)]);
        without_closed.reset(pick);
        auto take = solve(without_closed);
        take.vertices.push_back(pick);
        take.weight += g_.weight(pick);
        Bits without = p;
        without.reset(pick);
        auto skip = solve(without);
        return take.weight >= skip.weight ? take : skip;
    }

    Bits component_of(const Bits& p, Vertex s) const {
        Bits seen(g_.size());
        seen.set(s);
        Bits frontier = seen;
        while (!frontier.none()) {
            Bits next(g_.size());
            frontier.for_each([&](Vertex v) { next.unite(adj_[static_cast<std::size_t>(v)]); });
            next = next.intersect(p).minus(seen);
            seen.unite(next);
            frontier = next;
        }
        return seen;
    }

    const Graph& g_;
    std::vector<Bits> adj_;
};

/// Uniform helpers on raw 64-bit draws so results do not depend on the
/// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool coin(double p) { return unit() < p; }
    std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : engine_() % bound; }
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    Weight weight(WeightRange r) { return r.lo + below(r.hi - r.lo + 1); }

private:
    std::mt19937_64 engine_;
};

}  // namespace

IndependentSet branching_mwis(const Graph& g) { return Brancher(g).solve_all(); }

IndependentSet brute_force_mwis(const Graph& g, Vertex cap) {
    if (g.size() > cap) {
        throw OracleCapExceeded("brute-force oracle is capped at " + std::to_string(cap) + " vertices, got " +
                                std::to_string(g.size()));
    }
    return branching_mwis(g);
}

IndependentSet enumerate_mwis(const Graph& g) {
    if (g.size() > kEnumerationCap) {
        throw OracleCapExceeded("subset enumeration is capped at " + std::to_string(kEnumerationCap) +
                                " vertices, got " + std::to_string(g.size()));
    }
    const int n = g.size();
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : g.edges()) {
        adj[static_cast<std::size_t>(u)] |= 1u << v;
        adj[static_cast<std::size_t>(v)] |= 1u << u;
    }
    IndependentSet best;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool independent = true;
        Weight w = 0;
        for (int v = 0; v < n && independent; ++v) {
            if (!(mask >> v & 1)) continue;
            if (adj[static_cast<std::size_t>(v)] & mask) independent = false;
            w += g.weight(v);
        }
        if (!independent || w < best.weight) continue;
        VertexSet list;
        for (int v = 0; v < n; ++v) {
            if (mask >> v & 1) list.push_back(v);
        }
        if (w > best.weight || list < best.vertices) best = {std::move(list), w};
    }
    return best;
}

PoljakInstance poljak_subdivide(const Graph& base, int p) {
    if (p < 0) throw std::invalid_argument("p must be non-negative");
    PoljakInstance out;
    out.base = base;
    out.p = p;
    const auto base_edges = base.edges();
    out.alpha_shift = static_cast<std::uint64_t>(p) * base_edges.size();
    if (p == 0) {
        out.subdivided = base;
        return out;
    }
    const Vertex n = base.size();
    const Vertex inner = 2 * p;
    std::vector<Edge> edges;
    std::vector<Weight> weights = base.weights();
    for (std::size_t k = 0; k < base_edges.size(); ++k) {
        auto [u, v] = base_edges[k];
        Vertex first = n + static_cast<Vertex>(k) * inner;
        Vertex prev = u;
        for (Vertex j = 0; j < inner; ++j) {
            edges.push_back({prev, first + j});
            weights.push_back(1);
            prev = first + j;
        }
        edges.push_back({prev, v});
    }
    out.subdivided = Graph(n + static_cast<Vertex>(base_edges.size()) * inner, edges, std::move(weights));
    return out;
}

Graph gen_random_bounded_degree(Vertex n, std::size_t delta, double edge_prob, std::uint64_t seed, WeightRange weights) {
    if (n < 0 || edge_prob < 0 || edge_prob > 1 || weights.lo > weights.hi) {
        throw std::invalid_argument("generator parameters out of range");
    }
    Rng rng(seed);
    std::vector<std::size_t> deg(static_cast<std::size_t>(n), 0);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            bool keep = rng.coin(edge_prob);
            if (keep && deg[static_cast<std::size_t>(u)] < delta && deg[static_cast<std::size_t>(v)] < delta) {
                edges.push_back({u, v});
                ++deg[static_cast<std::size_t>(u)];
                ++deg[static_cast<std::size_t>(v)];
            }
        }
    }
    std::vector<Weight> w;
    for (Vertex v = 0; v < n; ++v) w.push_back(rng.weight(weights));
    return Graph(n, edges, std::move(w));
}

Graph gen_subdivided_claw(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("leg lengths must be non-negative");
    std::vector<Edge> edges;
    Vertex next = 1;
    for (int len : {a, b, c}) {
        Vertex prev = 0;
        for (int i = 0; i < len; ++i) {
            edges.push_back({prev, next});
            prev = next++;
        }
    }
    return Graph(next, edges);
}

Graph path_graph(Vertex n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    return Graph(n, edges);
}

Graph cycle_graph(Vertex n) {
    if (n < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    edges.push_back({0, n - 1});
    return Graph(n, edges);
}

Graph complete_graph(Vertex n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
    }
    return Graph(n, edges);
}

ExtendedStripDecomposition canonical_p4_esd() {
    ExtendedStripDecomposition esd;
    esd.host = path_graph(4);
    esd.pattern = PatternGraph(3, {{0, 1}, {1, 2}});
    esd.eta = EtaMap::empty_for(esd.pattern);
    esd.eta.edge = {{0, 1}, {2, 3}};
    esd.eta.edge_end = {{VertexSet{0}, VertexSet{1}}, {VertexSet{2}, VertexSet{3}}};
    esd.terminals = VertexSet{0, 3};
    return esd;
}

ExtendedStripDecomposition canonical_path_esd(Vertex n) {
    if (n < 1) throw std::invalid_argument("path needs at least one vertex");
    std::vector<PatternEdge> edges;
    for (Vertex i = 0; i < n; ++i) edges.push_back({i, i + 1});
    ExtendedStripDecomposition esd;
    esd.host = path_graph(n);
    esd.pattern = PatternGraph(n + 1, std::move(edges));
    esd.eta = EtaMap::empty_for(esd.pattern);
    for (Vertex i = 0; i < n; ++i) {
        esd.eta.edge[static_cast<std::size_t>(i)] = {i};
        esd.eta.edge_end[static_cast<std::size_t>(i)] = {VertexSet{i}, VertexSet{i}};
    }
    return esd;
}

ExtendedStripDecomposition line_graph_esd(const Graph& root, std::vector<Weight> host_weights) {
    const auto root_edges = root.edges();
    const auto m = static_cast<Vertex>(root_edges.size());
    std::vector<Edge> host_edges;
    for (Vertex i = 0; i < m; ++i) {
        for (Vertex j = i + 1; j < m; ++j) {
            auto [a, b] = root_edges[static_cast<std::size_t>(i)];
            auto [c, d] = root_edges[static_cast<std::size_t>(j)];
            if (a == c || a == d || b == c || b == d) host_edges.push_back({i, j});
        }
    }
    std::vector<PatternEdge> pattern_edges;
    for (auto [a, b] : root_edges) pattern_edges.push_back({a, b});

    ExtendedStripDecomposition esd;
    esd.host = Graph(m, host_edges, std::move(host_weights));
    esd.pattern = PatternGraph(root.size(), std::move(pattern_edges));
    esd.eta = EtaMap::empty_for(esd.pattern);
    for (Vertex i = 0; i < m; ++i) {
        esd.eta.edge[static_cast<std::size_t>(i)] = {i};
        esd.eta.edge_end[static_cast<std::size_t>(i)] = {VertexSet{i}, VertexSet{i}};
    }
    return esd;
}

ExtendedStripDecomposition with_isolated_components(const ExtendedStripDecomposition& esd,
                                                    const std::vector<Graph>& extras) {
    std::vector<Edge> edges = esd.host.edges();
    std::vector<Weight> weights = esd.host.weights();
    Vertex n = esd.host.size();
    std::vector<VertexSet> owned;
    for (const auto& extra : extras) {
        for (auto [u, v] : extra.edges()) edges.push_back({u + n, v + n});
        weights.insert(weights.end(), extra.weights().begin(), extra.weights().end());
        VertexSet ids;
        for (Vertex v = 0; v < extra.size(); ++v) ids.push_back(v + n);
        owned.push_back(std::move(ids));
        n += extra.size();
    }
    ExtendedStripDecomposition out;
    out.host = Graph(n, edges, std::move(weights));
    out.pattern = PatternGraph(esd.pattern.vertex_count() + static_cast<PatternVertex>(extras.size()),
                               esd.pattern.edges());
    out.eta = esd.eta;
    for (auto& s : owned) out.eta.vertex.push_back(std::move(s));
    out.terminals = esd.terminals;
    return out;
}

ExtendedStripDecomposition gen_random_esd(const RandomEsdParams& params, std::uint64_t seed) {
    if (params.pattern_vertices < 1 || params.max_strip_size < 1) throw std::invalid_argument("bad random ESD params");
    Rng rng(seed);
    const PatternVertex k = params.pattern_vertices;

    std::vector<PatternEdge> pattern_edges;
    std::set<std::pair<PatternVertex, PatternVertex>> have;
    for (PatternVertex a = 0; a < k; ++a) {
        for (PatternVertex b = a + 1; b < k; ++b) {
            if (rng.coin(params.pattern_edge_prob)) {
                pattern_edges.push_back({a, b});
                have.insert({a, b});
            }
        }
    }
    if (pattern_edges.size() < 2 && k >= 3) {
        for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}}) {
            if (have.insert({a, b}).second) pattern_edges.push_back({a, b});
        }
    }
    PatternGraph h(k, pattern_edges);
    EtaMap eta = EtaMap::empty_for(h);

    Vertex n = 0;
    std::set<Edge> host_edges;
    auto link = [&](Vertex x, Vertex y) { host_edges.insert({std::min(x, y), std::max(x, y)}); };
    auto fresh = [&] { return n++; };

    for (PatternEdgeId e = 0; e < h.edge_count(); ++e) {
        const auto& pe = h.edge(e);
        const bool leaf_u = params.terminals && h.degree(pe.u) == 1;
        const bool leaf_v = params.terminals && h.degree(pe.v) == 1;
        auto size = static_cast<int>(rng.between(1, params.max_strip_size));
        if (leaf_u && leaf_v) size = std::max(size, 2);
        VertexSet strip;
        for (int i = 0; i < size; ++i) strip.push_back(fresh());
        for (std::size_t i = 0; i < strip.size(); ++i) {
            for (std::size_t j = i + 1; j < strip.size(); ++j) {
                if (rng.coin(0.5)) link(strip[i], strip[j]);
            }
        }
        VertexSet at_u, at_v;
        for (Vertex x : strip) {
            switch (rng.below(4)) {
                case 0: at_u.push_back(x); break;
                case 1: at_v.push_back(x); break;
                case 2: at_u.push_back(x); at_v.push_back(x); break;
                default: break;
            }
        }
        if (at_u.empty()) at_u.push_back(strip[rng.below(strip.size())]);
        if (at_v.empty()) at_v.push_back(strip[rng.below(strip.size())]);
        if (leaf_u) at_u = {strip.front()};
        if (leaf_v) at_v = {leaf_u ? strip.back() : strip[rng.below(strip.size())]};
        eta.edge[static_cast<std::size_t>(e)] = strip;
        eta.edge_end[static_cast<std::size_t>(e)] = {canonical(at_u), canonical(at_v)};
    }

    // Segments meeting at a pattern vertex are complete to each other.
    for (PatternVertex p = 0; p < k; ++p) {
        const auto& inc = h.incident(p);
        for (std::size_t i = 0; i < inc.size(); ++i) {
            for (std::size_t j = i + 1; j < inc.size(); ++j) {
                for (Vertex x : eta.end(h, inc[i], p)) {
                    for (Vertex y : eta.end(h, inc[j], p)) link(x, y);
                }
            }
        }
    }

    auto grow_set = [&](int max_size, const VertexSet& allowed) {
        VertexSet own;
        auto size = rng.between(0, max_size);
        for (std::int64_t i = 0; i < size; ++i) own.push_back(fresh());
        for (std::size_t i = 0; i < own.size(); ++i) {
            for (std::size_t j = i + 1; j < own.size(); ++j) {
                if (rng.coin(0.5)) link(own[i], own[j]);
            }
            for (Vertex y : allowed) {
                if (rng.coin(0.5)) link(own[i], y);
            }
        }
        return own;
    };

    for (PatternVertex p = 0; p < k; ++p) {
        VertexSet pot;
        for (PatternEdgeId e : h.incident(p)) pot = set_union(pot, eta.end(h, e, p));
        eta.vertex[static_cast<std::size_t>(p)] = grow_set(params.max_vertex_set, pot);
    }
    for (std::size_t t = 0; t < h.triangles().size(); ++t) {
        const auto& tri = h.triangles()[t];
        VertexSet allowed;
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                PatternVertex a = tri.v[static_cast<std::size_t>(i)];
                PatternVertex b = tri.v[static_cast<std::size_t>(j)];
                for (PatternEdgeId e : h.edges_between(a, b)) {
                    allowed = set_union(allowed, set_intersection(eta.end(h, e, a), eta.end(h, e, b)));
                }
            }
        }
        eta.triangle[t] = grow_set(params.max_triangle_set, allowed);
    }

    std::vector<Weight> weights;
    for (Vertex v = 0; v < n; ++v) weights.push_back(rng.weight(params.weights));

    ExtendedStripDecomposition esd;
    esd.host = Graph(n, std::vector<Edge>(host_edges.begin(), host_edges.end()), std::move(weights));
    esd.pattern = std::move(h);
    esd.eta = std::move(eta);
    if (params.terminals) {
        VertexSet z;
        for (PatternVertex w : degree_one_vertices(esd.pattern)) {
            z.push_back(esd.end(esd.pattern.incident(w).front(), w).front());
        }
        esd.terminals = canonical(std::move(z));
    }
    return esd;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need two or more points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto k = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0 || y[i] <= 0) throw std::invalid_argument("loglog_slope: values must be positive");
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = k * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("loglog_slope: x values are all equal");
    return (k * sxy - sx * sy) / denom;
}

}  // namespace stripmis
