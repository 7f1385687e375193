#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stripmis {

using Vertex = std::int32_t;
using Weight = std::uint64_t;

/// Sorted, duplicate-free list of vertex ids. Every set-valued result in the
/// library is returned in this canonical form.
using VertexSet = std::vector<Vertex>;

using Edge = std::pair<Vertex, Vertex>;

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Sorts and deduplicates in place; returns the argument for chaining.
VertexSet canonical(VertexSet s);
bool is_canonical(std::span<const Vertex> s);
bool contains(std::span<const Vertex> s, Vertex v);
VertexSet set_union(std::span<const Vertex> a, std::span<const Vertex> b);
VertexSet set_intersection(std::span<const Vertex> a, std::span<const Vertex> b);
VertexSet set_difference(std::span<const Vertex> a, std::span<const Vertex> b);
bool is_subset(std::span<const Vertex> a, std::span<const Vertex> b);
bool disjoint(std::span<const Vertex> a, std::span<const Vertex> b);
VertexSet all_vertices(Vertex n);

/// Throws std::overflow_error instead of wrapping.
Weight checked_add(Weight a, Weight b);

/// Immutable weighted simple undirected graph on vertices 0..n-1.
class Graph {
public:
    Graph() = default;

    /// Builds a simple graph; rejects loops, duplicate edges and ids out of
    /// range. Missing weights default to 1.
    Graph(Vertex n, std::span<const Edge> edges, std::vector<Weight> weights = {});

    Vertex size() const { return static_cast<Vertex>(adjacency_.size()); }
    bool empty() const { return adjacency_.empty(); }
    std::size_t edge_count() const { return edge_count_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[check(v)]; }
    std::size_t degree(Vertex v) const { return adjacency_[check(v)].size(); }
    std::size_t max_degree() const;
    bool adjacent(Vertex u, Vertex v) const;

    Weight weight(Vertex v) const { return weights_[check(v)]; }
    const std::vector<Weight>& weights() const { return weights_; }
    Weight weight_of(std::span<const Vertex> s) const;

    /// Edges as (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    bool operator==(const Graph&) const = default;

private:
    std::size_t check(Vertex v) const;

    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<Weight> weights_;
    std::size_t edge_count_ = 0;
};

/// An induced subgraph together with the map from its ids back to the parent.
struct Subgraph {
    Graph graph;
    std::vector<Vertex> to_parent;

    VertexSet lift(std::span<const Vertex> local) const;
};

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> x);

/// Components ordered by smallest member; each is canonical.
std::vector<VertexSet> connected_components(const Graph& g);

/// Components of G - removed.
std::vector<VertexSet> components_without(const Graph& g, std::span<const Vertex> removed);

/// N^d[S]: vertices at distance at most d from S.
VertexSet closed_neighborhood(const Graph& g, std::span<const Vertex> s, int d);

/// N(S) = N^1[S] \ S.
VertexSet open_neighborhood(const Graph& g, std::span<const Vertex> s);

bool is_independent(const Graph& g, std::span<const Vertex> x);

/// Shortest-path length between X and Y (0 when they meet); nullopt when no
/// path exists.
std::optional<int> distance(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y);

/// (A, C, B): pairwise disjoint cover of V(G), C non-empty, no A-B edge.
class Separation {
public:
    static Separation make(const Graph& g, VertexSet a, VertexSet c, VertexSet b);

    const VertexSet& a() const { return a_; }
    const VertexSet& c() const { return c_; }
    const VertexSet& b() const { return b_; }
    std::size_t order() const { return c_.size(); }

private:
    Separation(VertexSet a, VertexSet c, VertexSet b)
        : a_(std::move(a)), c_(std::move(c)), b_(std::move(b)) {}

    VertexSet a_, c_, b_;
};

/// Exact non-negative rational num/den with den > 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::strong_ordering operator<=>(const Rational& o) const;
    bool operator==(const Rational& o) const { return (*this <=> o) == 0; }

    /// Parses "p/q", an integer, or a finite decimal such as "0.975".
    static Rational parse(const std::string& text);
    std::string str() const;
};

/// Vertex weights w(v) = numerator[v] / denominator, all exact.
class WeightFn {
public:
    WeightFn(std::vector<std::uint64_t> numerators, std::uint64_t denominator);

    /// w(v) = 1/n for every vertex.
    static WeightFn uniform(Vertex n);

    std::uint64_t numerator(Vertex v) const { return numerators_.at(static_cast<std::size_t>(v)); }
    std::uint64_t denominator() const { return denominator_; }
    std::uint64_t total_numerator() const { return total_; }
    bool is_normalized() const { return total_ == denominator_; }

    std::uint64_t numerator_of(std::span<const Vertex> s) const;
    /// w(S) < c, compared exactly.
    bool below(std::span<const Vertex> s, const Rational& c) const;

private:
    std::vector<std::uint64_t> numerators_;
    std::uint64_t denominator_;
    std::uint64_t total_ = 0;
};

}  // namespace stripmis
