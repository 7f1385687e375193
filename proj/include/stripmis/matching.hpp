#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace stripmis {

struct WeightedEdge {
    std::int32_t u = 0;
    std::int32_t v = 0;
    std::int64_t weight = 0;
};

/// Simple undirected graph on 0..n-1 with signed integer edge weights. An
/// edge's id is its index.
class EdgeWeightedGraph {
public:
    EdgeWeightedGraph() = default;
    /// Rejects loops, parallel edges and ends out of range.
    EdgeWeightedGraph(std::int32_t n, std::vector<WeightedEdge> edges);

    std::int32_t size() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const WeightedEdge& edge(std::size_t id) const { return edges_.at(id); }
    const std::vector<WeightedEdge>& edges() const { return edges_; }

private:
    std::int32_t n_ = 0;
    std::vector<WeightedEdge> edges_;
};

struct Matching {
    /// Sorted edge ids.
    std::vector<std::size_t> edges;
    std::int64_t weight = 0;

    bool operator==(const Matching&) const = default;
};

/// Edge ids are distinct, in range and pairwise vertex-disjoint.
bool is_matching(const EdgeWeightedGraph& g, const std::vector<std::size_t>& edge_ids);

/// Maximum-weight matching (not necessarily of maximum cardinality). Only
/// positive edges are ever used; among optimal matchings of positive edges
/// the lexicographically smallest sorted id list is returned.
Matching max_weight_matching(const EdgeWeightedGraph& g);

/// Maximum-weight matching by blossom shrinking without the tie-break: the
/// returned optimum is whichever the primal-dual search finds.
Matching any_max_weight_matching(const EdgeWeightedGraph& g);

class MatchingCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kBruteForceMatchingEdgeCap = 25;

/// Enumerates all 2^|E| edge subsets. Same contract as max_weight_matching.
Matching brute_force_matching(const EdgeWeightedGraph& g);

}  // namespace stripmis
