#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stripmis/graph.hpp"
#include "stripmis/providers.hpp"
#include "stripmis/testkit.hpp"

namespace stripmis {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SolverConfig {
    int t = 3;
    /// Defaults to the input's maximum degree (at least 1).
    std::optional<std::size_t> delta;
    /// Defaults to 1 - 1/(10 delta).
    std::optional<Rational> c;
    std::size_t d_max = 3;
    std::size_t z_max = 4;
    Vertex base_case_n = 8;
    /// Provider specs, tried in order; see make_provider.
    std::vector<std::string> providers{"line-graph", "exhaustive"};
    std::uint64_t seed = 0;
    /// Subproblem cache entries; 0 disables the cache.
    std::size_t memo_capacity = 0;
    unsigned threads = 1;
    bool trace = false;
};

struct SolverStats {
    std::uint64_t nodes = 0;
    std::uint64_t splits = 0;
    std::uint64_t base_cases = 0;
    std::uint64_t case1 = 0;
    std::uint64_t case1_branches = 0;
    std::uint64_t case2 = 0;
    std::uint64_t case2_branches = 0;
    std::uint64_t fallbacks = 0;
    std::uint64_t provider_rejections = 0;
    std::uint64_t particle_audit_violations = 0;
    std::uint64_t memo_hits = 0;
    std::uint64_t max_depth = 0;
};

struct TraceNode {
    std::string kind;
    Vertex n = 0;
    std::string detail;
    std::vector<TraceNode> children;
};

struct Solution {
    IndependentSet set;
    SolverStats stats;
    std::optional<TraceNode> trace;
    std::vector<std::string> warnings;
    std::size_t delta = 1;
    Rational c;
};

/// Smallest X with |X| <= d_max such that every component of G - X has
/// weight < c. Among the smallest, the one whose heaviest component is
/// lightest; remaining ties go to the lexicographically first.
std::optional<VertexSet> find_balanced_separator(const Graph& g, const WeightFn& w, const Rational& c,
                                                 std::size_t d_max);

struct LeftRight {
    VertexSet left;
    VertexSet right;
};

/// Splits the components of G - S into two anticomplete sides, each of size
/// at most ceil((c+1)/2 n). Throws std::invalid_argument if S is not a
/// c-balanced separator under uniform weights.
LeftRight partition_lr(const Graph& g, const VertexSet& s, const Rational& c);

/// Solves G[local] exactly and returns the set in G's ids.
using Recurse = std::function<VertexSet(const VertexSet& local)>;

struct CaseResult {
    IndependentSet set;
    std::uint64_t branches = 0;
};

/// max over independent I_S ⊆ S of w(I_S) + opt(L - N(I_S)) + opt(R - N(I_S)).
CaseResult solve_case1(const Graph& g, const VertexSet& s, const Rational& c, const Recurse& recurse);

/// max over independent I_X ⊆ X of w(I_X) + the matching reduction on the
/// decomposition restricted to G - X - N(I_X), particles solved by recurse.
CaseResult solve_case2(const Graph& g, const ProviderResult& provided, const Recurse& recurse);

/// Exact maximum-weight independent set. Throws ConfigError for invalid
/// settings.
Solution solve_mwis(const Graph& g, const SolverConfig& config = {});

/// Fills in delta and c and checks ranges.
void resolve_config(const Graph& g, SolverConfig& config);

}  // namespace stripmis
