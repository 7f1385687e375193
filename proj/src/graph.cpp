#include "stripmis/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

namespace stripmis {

VertexSet canonical(VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

bool is_canonical(std::span<const Vertex> s) {
    return std::adjacent_find(s.begin(), s.end(), std::greater_equal<>{}) == s.end();
}

bool contains(std::span<const Vertex> s, Vertex v) {
    return std::binary_search(s.begin(), s.end(), v);
}

VertexSet set_union(std::span<const Vertex> a, std::span<const Vertex> b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersection(std::span<const Vertex> a, std::span<const Vertex> b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_difference(std::span<const Vertex> a, std::span<const Vertex> b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(std::span<const Vertex> a, std::span<const Vertex> b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(std::span<const Vertex> a, std::span<const Vertex> b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return false;
        if (*i < *j) ++i;
        else ++j;
    }
    return true;
}

VertexSet all_vertices(Vertex n) {
    VertexSet out(static_cast<std::size_t>(std::max<Vertex>(n, 0)));
    std::iota(out.begin(), out.end(), 0);
    return out;
}

Weight checked_add(Weight a, Weight b) {
    if (a > std::numeric_limits<Weight>::max() - b) throw std::overflow_error("vertex weight sum overflows 64 bits");
    return a + b;
}

Graph::Graph(Vertex n, std::span<const Edge> edges, std::vector<Weight> weights) {
    if (n < 0) throw GraphError("negative vertex count");
    adjacency_.resize(static_cast<std::size_t>(n));
    if (weights.empty()) weights.assign(static_cast<std::size_t>(n), 1);
    if (weights.size() != static_cast<std::size_t>(n)) throw GraphError("weight vector length differs from vertex count");
    weights_ = std::move(weights);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw GraphError("edge " + std::to_string(u) + " " + std::to_string(v) + " out of range");
        }
        if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
        adjacency_[static_cast<std::size_t>(u)].push_back(v);
        adjacency_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (Vertex v = 0; v < n; ++v) {
        auto& adj = adjacency_[static_cast<std::size_t>(v)];
        std::sort(adj.begin(), adj.end());
        if (std::adjacent_find(adj.begin(), adj.end()) != adj.end()) {
            throw GraphError("duplicate edge at vertex " + std::to_string(v));
        }
        edge_count_ += adj.size();
    }
    edge_count_ /= 2;
}

std::size_t Graph::check(Vertex v) const {
    if (v < 0 || v >= size()) throw GraphError("vertex " + std::to_string(v) + " out of range");
    return static_cast<std::size_t>(v);
}

std::size_t Graph::max_degree() const {
    std::size_t d = 0;
    for (const auto& adj : adjacency_) d = std::max(d, adj.size());
    return d;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
}

Weight Graph::weight_of(std::span<const Vertex> s) const {
    Weight total = 0;
    for (Vertex v : s) total = checked_add(total, weight(v));
    return total;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < size(); ++u) {
        for (Vertex v : adjacency_[static_cast<std::size_t>(u)]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

VertexSet Subgraph::lift(std::span<const Vertex> local) const {
    VertexSet out;
    out.reserve(local.size());
    for (Vertex v : local) out.push_back(to_parent.at(static_cast<std::size_t>(v)));
    return canonical(std::move(out));
}

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> x) {
    std::vector<Vertex> local(static_cast<std::size_t>(g.size()), -1);
    Subgraph sub;
    VertexSet sorted = canonical(VertexSet(x.begin(), x.end()));
    sub.to_parent = sorted;
    std::vector<Weight> weights;
    weights.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        Vertex v = sorted[i];
        if (v < 0 || v >= g.size()) throw GraphError("vertex " + std::to_string(v) + " out of range");
        local[static_cast<std::size_t>(v)] = static_cast<Vertex>(i);
        weights.push_back(g.weight(v));
    }
    std::vector<Edge> edges;
    for (Vertex v : sorted) {
        for (Vertex u : g.neighbors(v)) {
            if (v < u && local[static_cast<std::size_t>(u)] >= 0) {
                edges.emplace_back(local[static_cast<std::size_t>(v)], local[static_cast<std::size_t>(u)]);
            }
        }
    }
    sub.graph = Graph(static_cast<Vertex>(sorted.size()), edges, std::move(weights));
    return sub;
}

std::vector<VertexSet> components_without(const Graph& g, std::span<const Vertex> removed) {
    const auto n = static_cast<std::size_t>(g.size());
    std::vector<char> seen(n, 0);
    for (Vertex v : removed) seen.at(static_cast<std::size_t>(v)) = 1;
    std::vector<VertexSet> out;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.size(); ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        VertexSet comp;
        seen[static_cast<std::size_t>(s)] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex u : g.neighbors(v)) {
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    stack.push_back(u);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<VertexSet> connected_components(const Graph& g) { return components_without(g, {}); }

VertexSet closed_neighborhood(const Graph& g, std::span<const Vertex> s, int d) {
    if (d < 0) throw GraphError("negative radius");
    std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
    std::deque<Vertex> queue;
    for (Vertex v : s) {
        if (dist.at(static_cast<std::size_t>(v)) < 0) {
            dist[static_cast<std::size_t>(v)] = 0;
            queue.push_back(v);
        }
    }
    VertexSet out;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        out.push_back(v);
        if (dist[static_cast<std::size_t>(v)] == d) continue;
        for (Vertex u : g.neighbors(v)) {
            if (dist[static_cast<std::size_t>(u)] < 0) {
                dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(u);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

VertexSet open_neighborhood(const Graph& g, std::span<const Vertex> s) {
    VertexSet sorted = canonical(VertexSet(s.begin(), s.end()));
    return set_difference(closed_neighborhood(g, sorted, 1), sorted);
}

bool is_independent(const Graph& g, std::span<const Vertex> x) {
    VertexSet sorted = canonical(VertexSet(x.begin(), x.end()));
    for (Vertex v : sorted) {
        for (Vertex u : g.neighbors(v)) {
            if (contains(sorted, u)) return false;
        }
    }
    return true;
}

std::optional<int> distance(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y) {
    if (x.empty() || y.empty()) throw GraphError("distance needs non-empty sets");
    std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
    std::deque<Vertex> queue;
    for (Vertex v : x) {
        if (dist.at(static_cast<std::size_t>(v)) < 0) {
            dist[static_cast<std::size_t>(v)] = 0;
            queue.push_back(v);
        }
    }
    std::vector<char> target(static_cast<std::size_t>(g.size()), 0);
    for (Vertex v : y) target.at(static_cast<std::size_t>(v)) = 1;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        if (target[static_cast<std::size_t>(v)]) return dist[static_cast<std::size_t>(v)];
        for (Vertex u : g.neighbors(v)) {
            if (dist[static_cast<std::size_t>(u)] < 0) {
                dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(u);
            }
        }
    }
    return std::nullopt;
}

Separation Separation::make(const Graph& g, VertexSet a, VertexSet c, VertexSet b) {
    a = canonical(std::move(a));
    c = canonical(std::move(c));
    b = canonical(std::move(b));
    if (c.empty()) throw GraphError("separation needs a non-empty middle set");
    if (!disjoint(a, c) || !disjoint(a, b) || !disjoint(b, c)) throw GraphError("separation sets overlap");
    if (a.size() + b.size() + c.size() != static_cast<std::size_t>(g.size())) {
        throw GraphError("separation does not cover the vertex set");
    }
    for (Vertex v : a) {
        if (v < 0 || v >= g.size()) throw GraphError("separation vertex out of range");
        for (Vertex u : g.neighbors(v)) {
            if (contains(b, u)) {
                throw GraphError("edge " + std::to_string(v) + "-" + std::to_string(u) + " joins A and B");
            }
        }
    }
    for (Vertex v : set_union(b, c)) {
        if (v < 0 || v >= g.size()) throw GraphError("separation vertex out of range");
    }
    return Separation(std::move(a), std::move(c), std::move(b));
}

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den <= 0) throw std::invalid_argument("rational needs a positive denominator");
    if (num < 0) throw std::invalid_argument("rational must be non-negative");
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    auto lhs = static_cast<__int128>(num) * o.den;
    auto rhs = static_cast<__int128>(o.num) * den;
    return lhs <=> rhs;
}

Rational Rational::parse(const std::string& text) {
    auto fail = [&] { return std::invalid_argument("cannot parse rational '" + text + "'"); };
    if (text.empty()) throw fail();
    if (auto slash = text.find('/'); slash != std::string::npos) {
        std::size_t used = 0;
        auto n = std::stoll(text.substr(0, slash), &used);
        if (used != slash) throw fail();
        auto rest = text.substr(slash + 1);
        auto d = std::stoll(rest, &used);
        if (used != rest.size()) throw fail();
        return {n, d};
    }
    auto dot = text.find('.');
    std::string whole = text.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (frac.size() > 15) throw fail();
    for (char ch : whole + frac) {
        if (ch < '0' || ch > '9') throw fail();
    }
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t num = std::stoll(whole) * den + (frac.empty() ? 0 : std::stoll(frac));
    return {num, den};
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

WeightFn::WeightFn(std::vector<std::uint64_t> numerators, std::uint64_t denominator)
    : numerators_(std::move(numerators)), denominator_(denominator) {
    if (denominator_ == 0) throw std::invalid_argument("weight function needs a positive denominator");
    for (auto x : numerators_) total_ = checked_add(total_, x);
}

WeightFn WeightFn::uniform(Vertex n) {
    return WeightFn(std::vector<std::uint64_t>(static_cast<std::size_t>(n), 1),
                    static_cast<std::uint64_t>(std::max<Vertex>(n, 1)));
}

std::uint64_t WeightFn::numerator_of(std::span<const Vertex> s) const {
    std::uint64_t total = 0;
    for (Vertex v : s) total = checked_add(total, numerator(v));
    return total;
}

bool WeightFn::below(std::span<const Vertex> s, const Rational& c) const {
    // numerator_of(s) / denominator < c.num / c.den
    auto lhs = static_cast<unsigned __int128>(numerator_of(s)) * static_cast<std::uint64_t>(c.den);
    auto rhs = static_cast<unsigned __int128>(static_cast<std::uint64_t>(c.num)) * denominator_;
    return lhs < rhs;
}

}  // namespace stripmis
