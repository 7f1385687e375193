#pragma once

#include <cstdint>
#include <stdexcept>

#include "stripmis/esd.hpp"
#include "stripmis/graph.hpp"

namespace stripmis {

class OracleCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IndependentSet {
    VertexSet vertices;
    Weight weight = 0;

    bool operator==(const IndependentSet&) const = default;
};

inline constexpr Vertex kBruteForceCap = 30;
inline constexpr Vertex kEnumerationCap = 16;

/// Branch on a maximum-degree vertex (take it or drop it) with component
/// splitting. Deterministic: ties keep the branch that takes the vertex.
IndependentSet brute_force_mwis(const Graph& g, Vertex cap = kBruteForceCap);

/// Same search without a size cap; exponential.
IndependentSet branching_mwis(const Graph& g);

/// All 2^n subsets; ties go to the lexicographically smallest vertex list.
IndependentSet enumerate_mwis(const Graph& g);

struct PoljakInstance {
    Graph base;
    int p = 0;
    Graph subdivided;
    std::uint64_t alpha_shift = 0;
};

/// Replaces the k-th edge (u, v) of base.edges() by a path through 2p new
/// vertices n + 2pk, ..., n + 2pk + 2p - 1, walking from u to v. Base
/// vertices keep their ids and weights; new vertices weigh 1.
PoljakInstance poljak_subdivide(const Graph& base, int p);

struct WeightRange {
    Weight lo = 1;
    Weight hi = 1;
};

/// Visits vertex pairs (u, v), u < v, in lexicographic order and keeps each
/// with probability edge_prob unless an end already has degree delta.
/// Weights are then drawn uniformly from the range. Reproducible across
/// platforms for a given seed.
Graph gen_random_bounded_degree(Vertex n, std::size_t delta, double edge_prob, std::uint64_t seed,
                                WeightRange weights = {});

/// S_{a,b,c}: root 0, then leg vertices in order, leg by leg.
Graph gen_subdivided_claw(int a, int b, int c);

/// Path, cycle and complete graphs with unit weights.
Graph path_graph(Vertex n);
Graph cycle_graph(Vertex n);
Graph complete_graph(Vertex n);

/// The path x - y - z decomposition of P_4: eta(e0) = {0, 1}, eta(e1) =
/// {2, 3}, with the segments {0}, {1} | {2}, {3}. Terminals {0, 3}.
ExtendedStripDecomposition canonical_p4_esd();

/// P_n as the line graph of the path 0 - 1 - ... - n: strip i is {i} and
/// lies in both of its end sets.
ExtendedStripDecomposition canonical_path_esd(Vertex n);

/// Line graph L(root) with its canonical decomposition: pattern = root,
/// host vertex i = root edge i (in root.edges() order), every strip a
/// singleton lying in both end sets.
ExtendedStripDecomposition line_graph_esd(const Graph& root, std::vector<Weight> host_weights = {});

/// Appends each extra graph as a new host component owned by a new isolated
/// pattern vertex.
ExtendedStripDecomposition with_isolated_components(const ExtendedStripDecomposition& esd,
                                                    const std::vector<Graph>& extras);

/// Random valid decomposition: a random pattern graph (possibly with
/// triangles), strips with random internal structure and end segments,
/// vertex and triangle sets attached only where locality allows. Host
/// weights are drawn from the range. With terminals, every degree-one
/// pattern vertex gets a singleton segment and Z collects them.
struct RandomEsdParams {
    PatternVertex pattern_vertices = 5;
    double pattern_edge_prob = 0.5;
    int max_strip_size = 3;
    int max_vertex_set = 2;
    int max_triangle_set = 2;
    bool terminals = false;
    WeightRange weights{1, 10};
};

ExtendedStripDecomposition gen_random_esd(const RandomEsdParams& params, std::uint64_t seed);

/// Least-squares slope of log(y) against log(x). Needs two distinct x and
/// positive values.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace stripmis
