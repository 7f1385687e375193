#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stripmis/graph.hpp"

namespace stripmis {

/// Induced S_{a,b,c}: a root plus three legs. legs[i] lists the leg's
/// vertices walking away from the root (the root itself is not repeated), so
/// legs[i].size() is the leg length. A leg of length 0 is empty; S_{0,b,c} is
/// the path P_{b+c+1}.
struct ClawEmbedding {
    Vertex root = -1;
    std::array<std::vector<Vertex>, 3> legs;

    VertexSet vertices() const;
    bool operator==(const ClawEmbedding&) const = default;
};

/// Re-checks that G[embedding] is exactly S_{a,b,c} with the given legs.
bool is_valid_claw(const Graph& g, const ClawEmbedding& claw);

/// First induced S_{a,b,c} in lexicographic order of (root, leg 0, leg 1,
/// leg 2). Requires a >= 0 and b, c >= 1.
std::optional<ClawEmbedding> find_induced_subdivided_claw(const Graph& g, int a, int b, int c);

bool is_sttt_free(const Graph& g, int t);

/// All induced S_{a,b,c} rooted at v with 1 <= a, b, c <= t, one
/// representative per unordered leg triple; legs sorted within each result.
std::vector<ClawEmbedding> enumerate_rooted_claws(const Graph& g, Vertex v, int t);

struct InducedTree {
    VertexSet vertices;
    /// parent[i] is the parent of vertices[i]; -1 for the root.
    std::vector<Vertex> parent;
};

class SizeCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr Vertex kInducedTreeCap = 20;

/// Smallest (then lexicographically first) vertex set T containing Z such
/// that G[T] is a tree. nullopt means Z is constricted. Exhaustive: throws
/// SizeCapExceeded when |V(G)| > cap.
std::optional<InducedTree> find_induced_tree_containing(const Graph& g, const VertexSet& z,
                                                        Vertex cap = kInducedTreeCap);

}  // namespace stripmis
