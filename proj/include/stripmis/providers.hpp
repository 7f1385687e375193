#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stripmis/esd.hpp"

namespace stripmis {

struct ProviderContext {
    /// Ids of the subproblem's vertices in the root graph.
    const std::vector<Vertex>* to_root = nullptr;
    std::size_t z_max = 4;
    std::size_t delta = 1;
};

/// X ⊆ V(G) (local ids) and a decomposition of G - X whose host vertex i is
/// G's vertex host_to_graph[i].
struct ProviderResult {
    VertexSet deletion;
    ExtendedStripDecomposition esd;
    std::vector<Vertex> host_to_graph;
};

struct ProviderOutcome {
    std::optional<ProviderResult> result;
    std::string reason;
};

class DecompositionProvider {
public:
    virtual ~DecompositionProvider() = default;
    virtual std::string name() const = 0;
    virtual ProviderOutcome provide(const Graph& g, const ProviderContext& ctx) const = 0;
};

/// Edge partition of G into cliques with every vertex in at most two
/// cliques, found by backtracking; cliques are returned as vertex sets.
/// nullopt when none exists (G is not the line graph of a simple graph) or
/// the step budget runs out.
std::optional<std::vector<VertexSet>> krausz_partition(const Graph& g, std::size_t step_budget = 1'000'000);

/// G as a line graph: pattern = root graph recovered from a Krausz partition
/// (cliques first, then one pendant vertex per vertex lying in a single
/// clique), every strip a singleton in both end sets.
std::optional<ExtendedStripDecomposition> line_graph_decomposition(const Graph& g);

/// Recognises line graphs; X is always empty.
std::unique_ptr<DecompositionProvider> make_line_graph_provider();

/// Tries deletion sets X in order of size then lexicographically; G - X must
/// split into line graphs and components no larger than the atom bound
/// (the latter become isolated pattern vertices). Refuses graphs above n_cap.
std::unique_ptr<DecompositionProvider> make_exhaustive_provider(Vertex n_cap = 16);

/// A fixed decomposition over root-graph ids, restricted to each
/// subproblem; root vertices it does not cover form X.
struct FileDecomposition {
    ExtendedStripDecomposition esd;
    std::vector<Vertex> host_to_root;
};

/// Reads a decomposition written over root ids and relabels it onto the
/// vertices it covers. Not validated; throws EsdFormatError on bad input.
FileDecomposition read_file_decomposition(const Graph& root, const std::string& path);

std::unique_ptr<DecompositionProvider> make_file_provider(const Graph& root, const std::string& path);
std::unique_ptr<DecompositionProvider> make_fixed_provider(const Graph& root, ExtendedStripDecomposition esd,
                                                           std::vector<Vertex> host_to_root);

/// "line-graph", "exhaustive[:n_cap]" or "file:<path>".
std::unique_ptr<DecompositionProvider> make_provider(const std::string& spec, const Graph& root);

}  // namespace stripmis
