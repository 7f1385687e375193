#include "stripmis/solver.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <mutex>

#include "stripmis/reduction.hpp"

namespace stripmis {

// ---------------------------------------------------------------------------
// Separators and the left/right split

namespace {

using i128 = __int128;

/// Components of G - removed as (size, weight numerator) pairs, stopping
/// early once one reaches the limit. Returns the heaviest numerator seen.
std::uint64_t heaviest_component(const Graph& g, const WeightFn& w, const std::vector<char>& removed,
                                 std::uint64_t limit, std::vector<char>& seen, std::vector<Vertex>& stack) {
    std::fill(seen.begin(), seen.end(), 0);
    std::uint64_t heaviest = 0;
    for (Vertex s = 0; s < g.size(); ++s) {
        if (removed[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)]) continue;
        std::uint64_t total = 0;
        stack.assign(1, s);
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            total += w.numerator(v);
            for (Vertex u : g.neighbors(v)) {
                if (!removed[static_cast<std::size_t>(u)] && !seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    stack.push_back(u);
                }
            }
        }
        heaviest = std::max(heaviest, total);
        if (heaviest >= limit) return heaviest;
    }
    return heaviest;
}

}  // namespace

std::optional<VertexSet> find_balanced_separator(const Graph& g, const WeightFn& w, const Rational& c,
                                                 std::size_t d_max) {
    // A component is light iff numerator * c.den < c.num * denominator; the
    // smallest numerator failing that is the limit.
    const i128 rhs = static_cast<i128>(c.num) * static_cast<i128>(w.denominator());
    const i128 limit128 = (rhs + c.den - 1) / c.den;
    const auto limit = static_cast<std::uint64_t>(std::min<i128>(limit128, static_cast<i128>(UINT64_MAX)));

    const auto n = static_cast<std::size_t>(g.size());
    std::vector<char> removed(n, 0);
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack;

    for (std::size_t k = 0; k <= std::min(d_max, n); ++k) {
        std::optional<VertexSet> best;
        std::uint64_t best_heaviest = 0;
        std::vector<Vertex> pick(k);
        for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<Vertex>(i);
        while (true) {
            for (Vertex v : pick) removed[static_cast<std::size_t>(v)] = 1;
            std::uint64_t cap = best ? std::min(limit, best_heaviest) : limit;
            std::uint64_t heaviest = heaviest_component(g, w, removed, cap, seen, stack);
            for (Vertex v : pick) removed[static_cast<std::size_t>(v)] = 0;
            if (heaviest < cap) {
                best = pick;
                best_heaviest = heaviest;
            }
            int i = static_cast<int>(k) - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == static_cast<Vertex>(n - k) + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (best) return best;
    }
    return std::nullopt;
}

LeftRight partition_lr(const Graph& g, const VertexSet& s, const Rational& c) {
    const auto n = static_cast<i128>(g.size());
    auto comps = components_without(g, s);
    for (const auto& comp : comps) {
        if (!(static_cast<i128>(comp.size()) * c.den < static_cast<i128>(c.num) * n)) {
            throw std::invalid_argument("partition_lr: S is not a balanced separator");
        }
    }
    std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });

    // |D| >= (1 - c)/2 * n  <=>  2 |D| c.den >= (c.den - c.num) n
    auto at_least_threshold = [&](std::size_t size) {
        return 2 * static_cast<i128>(size) * c.den >= static_cast<i128>(c.den - c.num) * n;
    };
    std::size_t take = 0;
    if (!comps.empty() && at_least_threshold(comps.front().size())) {
        take = 1;
    } else {
        std::size_t prefix = 0;
        std::size_t q = 0;
        while (q < comps.size() && !at_least_threshold(prefix + comps[q].size())) prefix += comps[q++].size();
        take = std::min(q + 1, comps.size());
    }
    LeftRight out;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        auto& side = i < take ? out.left : out.right;
        side.insert(side.end(), comps[i].begin(), comps[i].end());
    }
    out.left = canonical(std::move(out.left));
    out.right = canonical(std::move(out.right));

    // ceil((c + 1)/2 * n) = ceil((c.num + c.den) n / (2 c.den))
    const i128 bound = ((static_cast<i128>(c.num) + c.den) * n + 2 * c.den - 1) / (2 * c.den);
    if (static_cast<i128>(out.left.size()) > bound || static_cast<i128>(out.right.size()) > bound) {
        throw std::logic_error("partition_lr: side exceeds the size bound");
    }
    return out;
}

// ---------------------------------------------------------------------------
// The two cases

namespace {

using Tasks = std::vector<std::function<void()>>;
using BranchRunner = std::function<void(Tasks&)>;

void run_tasks(const BranchRunner& runner, Tasks& tasks) {
    if (runner) {
        runner(tasks);
    } else {
        for (auto& t : tasks) t();
    }
}

/// Independent subsets of s in increasing bitmask order over sorted s.
std::vector<VertexSet> independent_subsets(const Graph& g, const VertexSet& s) {
    if (s.size() > 20) throw std::invalid_argument("branching set too large to enumerate");
    std::vector<VertexSet> out;
    for (std::uint32_t mask = 0; mask < (1u << s.size()); ++mask) {
        VertexSet pick;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (mask >> i & 1) pick.push_back(s[i]);
        }
        if (is_independent(g, pick)) out.push_back(std::move(pick));
    }
    return out;
}

/// First strictly heaviest branch wins, so the result does not depend on
/// the order branches finish in.
IndependentSet pick_best(std::vector<IndependentSet>& values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i].weight > values[best].weight) best = i;
    }
    return std::move(values[best]);
}

CaseResult case1_impl(const Graph& g, const VertexSet& s, const Rational& c, const Recurse& recurse,
                      const BranchRunner& runner) {
    auto lr = partition_lr(g, s, c);
    auto choices = independent_subsets(g, canonical(s));
    std::vector<IndependentSet> values(choices.size());
    Tasks tasks;
    for (std::size_t i = 0; i < choices.size(); ++i) {
        tasks.push_back([&, i] {
            const auto& chosen = choices[i];
            VertexSet nb = open_neighborhood(g, chosen);
            VertexSet left = recurse(set_difference(lr.left, nb));
            VertexSet right = recurse(set_difference(lr.right, nb));
            VertexSet all = set_union(set_union(chosen, left), right);
            values[i] = {all, g.weight_of(all)};
        });
    }
    run_tasks(runner, tasks);
    return {pick_best(values), choices.size()};
}

class ProviderContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Empty when the provider output is a decomposition of G - X.
std::string check_provided(const Graph& g, const ProviderResult& p) {
    if (!is_canonical(p.deletion) || (!p.deletion.empty() && (p.deletion.front() < 0 || p.deletion.back() >= g.size()))) {
        return "deletion set is not a sorted set of vertices";
    }
    VertexSet keep = set_difference(all_vertices(g.size()), p.deletion);
    if (p.host_to_graph != keep) return "decomposition host is not G - X";
    if (!(induced_subgraph(g, keep).graph == p.esd.host)) return "decomposition host differs from G - X";
    auto report = validate_esd(p.esd, {.relaxed = true});
    if (!report.ok()) return "decomposition is invalid: " + report.summary();
    return {};
}

CaseResult case2_impl(const Graph& g, const ProviderResult& provided, const Recurse& recurse,
                      const BranchRunner& runner) {
    if (auto why = check_provided(g, provided); !why.empty()) throw ProviderContractError(why);
    std::vector<Vertex> graph_to_host(static_cast<std::size_t>(g.size()), -1);
    for (std::size_t h = 0; h < provided.host_to_graph.size(); ++h) {
        graph_to_host[static_cast<std::size_t>(provided.host_to_graph[h])] = static_cast<Vertex>(h);
    }

    auto choices = independent_subsets(g, provided.deletion);
    std::vector<IndependentSet> values(choices.size());
    Tasks tasks;
    for (std::size_t i = 0; i < choices.size(); ++i) {
        tasks.push_back([&, i] {
            const auto& chosen = choices[i];
            VertexSet removed;
            for (Vertex v : open_neighborhood(g, chosen)) {
                Vertex h = graph_to_host[static_cast<std::size_t>(v)];
                if (h >= 0) removed.push_back(h);
            }
            auto restricted = restrict_esd(provided.esd, canonical(std::move(removed)));
            // restricted host id -> G id, and back
            std::vector<Vertex> to_graph;
            std::vector<Vertex> from_graph(static_cast<std::size_t>(g.size()), -1);
            for (std::size_t r = 0; r < restricted.to_parent.size(); ++r) {
                Vertex v = provided.host_to_graph[static_cast<std::size_t>(restricted.to_parent[r])];
                to_graph.push_back(v);
                from_graph[static_cast<std::size_t>(v)] = static_cast<Vertex>(r);
            }
            auto to_g = [&](const VertexSet& s) {
                VertexSet out;
                for (Vertex x : s) out.push_back(to_graph[static_cast<std::size_t>(x)]);
                return canonical(std::move(out));
            };
            auto reduced = reduce_mwis(restricted.esd, [&](const Particle& particle) {
                VertexSet answer;
                for (Vertex v : recurse(to_g(particle.vertices))) answer.push_back(from_graph[static_cast<std::size_t>(v)]);
                return answer;
            });
            VertexSet all = set_union(chosen, to_g(reduced.set));
            values[i] = {all, g.weight_of(all)};
        });
    }
    run_tasks(runner, tasks);
    return {pick_best(values), choices.size()};
}

}  // namespace

CaseResult solve_case1(const Graph& g, const VertexSet& s, const Rational& c, const Recurse& recurse) {
    return case1_impl(g, s, c, recurse, {});
}

CaseResult solve_case2(const Graph& g, const ProviderResult& provided, const Recurse& recurse) {
    return case2_impl(g, provided, recurse, {});
}

// ---------------------------------------------------------------------------
// Driver

void resolve_config(const Graph& g, SolverConfig& config) {
    const std::size_t max_deg = std::max<std::size_t>(g.max_degree(), 1);
    if (!config.delta) config.delta = max_deg;
    if (*config.delta < 1) throw ConfigError("delta must be at least 1");
    if (*config.delta < g.max_degree()) {
        throw ConfigError("delta " + std::to_string(*config.delta) + " is below the input's maximum degree " +
                          std::to_string(g.max_degree()));
    }
    if (!config.c) {
        auto den = static_cast<std::int64_t>(10 * *config.delta);
        config.c = Rational(den - 1, den);
    }
    if (*config.c < Rational(1, 2) || !(*config.c < Rational(1, 1))) {
        throw ConfigError("c must satisfy 1/2 <= c < 1, got " + config.c->str());
    }
    if (config.t < 1) throw ConfigError("t must be at least 1");
    if (config.d_max > 20 || config.z_max > 20) throw ConfigError("d_max and z_max are capped at 20");
    if (config.base_case_n < 0) throw ConfigError("base_case_n must be non-negative");
    if (config.threads < 1) throw ConfigError("threads must be at least 1");
}

namespace {

class Engine {
public:
    Engine(const Graph& root, const SolverConfig& config) : root_(root), config_(config) {
        for (const auto& spec : config_.providers) {
            try {
                providers_.push_back(make_provider(spec, root_));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    }

    Solution run() {
        Solution out;
        TraceNode top{"root", root_.size(), {}, {}};
        out.set = solve(all_vertices(root_.size()), 0, config_.trace ? &top : nullptr);
        if (config_.trace) out.trace = std::move(top);
        out.stats = snapshot();
        out.warnings = warnings_;
        out.delta = *config_.delta;
        out.c = *config_.c;
        return out;
    }

private:
    struct Counters {
        std::atomic<std::uint64_t> nodes{0}, splits{0}, base_cases{0}, case1{0}, case1_branches{0}, case2{0},
            case2_branches{0}, fallbacks{0}, provider_rejections{0}, particle_audit_violations{0}, memo_hits{0},
            max_depth{0};
    };

    SolverStats snapshot() const {
        SolverStats s;
        s.nodes = counters_.nodes;
        s.splits = counters_.splits;
        s.base_cases = counters_.base_cases;
        s.case1 = counters_.case1;
        s.case1_branches = counters_.case1_branches;
        s.case2 = counters_.case2;
        s.case2_branches = counters_.case2_branches;
        s.fallbacks = counters_.fallbacks;
        s.provider_rejections = counters_.provider_rejections;
        s.particle_audit_violations = counters_.particle_audit_violations;
        s.memo_hits = counters_.memo_hits;
        s.max_depth = counters_.max_depth;
        return s;
    }

    void warn(std::string message) {
        std::lock_guard lock(mutex_);
        if (std::find(warnings_.begin(), warnings_.end(), message) == warnings_.end()) warnings_.push_back(std::move(message));
    }

    static TraceNode* child(TraceNode* parent, std::string kind, Vertex n, std::string detail = {}) {
        if (!parent) return nullptr;
        parent->children.push_back({std::move(kind), n, std::move(detail), {}});
        return &parent->children.back();
    }

    /// Optimum of root[vs]; vs and the result are in root ids.
    IndependentSet solve(const VertexSet& vs, std::uint64_t depth, TraceNode* trace) {
        ++counters_.nodes;
        auto seen = counters_.max_depth.load();
        while (depth > seen && !counters_.max_depth.compare_exchange_weak(seen, depth)) {
        }
        if (vs.empty()) return {};
        if (config_.memo_capacity > 0) {
            std::lock_guard lock(mutex_);
            if (auto it = memo_.find(vs); it != memo_.end()) {
                ++counters_.memo_hits;
                if (trace) trace->children.push_back({"memo", static_cast<Vertex>(vs.size()), {}, {}});
                return it->second;
            }
        }

        auto sub = induced_subgraph(root_, vs);
        auto comps = connected_components(sub.graph);
        IndependentSet out;
        if (comps.size() > 1) {
            ++counters_.splits;
            TraceNode* node = child(trace, "split", sub.graph.size(), std::to_string(comps.size()) + " components");
            for (const auto& comp : comps) {
                auto part = solve(sub.lift(comp), depth + 1, node);
                out.vertices.insert(out.vertices.end(), part.vertices.begin(), part.vertices.end());
                out.weight += part.weight;
            }
            out.vertices = canonical(std::move(out.vertices));
        } else {
            out = solve_connected(sub, depth, trace);
        }

        if (config_.memo_capacity > 0) {
            std::lock_guard lock(mutex_);
            if (memo_.size() < config_.memo_capacity) memo_.emplace(vs, out);
        }
        return out;
    }

    IndependentSet solve_connected(const Subgraph& sub, std::uint64_t depth, TraceNode* trace) {
        const Graph& g = sub.graph;
        const Vertex n = g.size();
        auto lift = [&](const VertexSet& local) {
            VertexSet out = sub.lift(local);
            return IndependentSet{out, root_.weight_of(out)};
        };

        if (n <= config_.base_case_n) {
            ++counters_.base_cases;
            child(trace, "base", n);
            return lift(branching_mwis(g).vertices);
        }

        auto make_recurse = [&](TraceNode* node) -> Recurse {
            return [this, &sub, depth, node](const VertexSet& local) {
                IndependentSet part = solve(sub.lift(local), depth + 1, node);
                VertexSet back;
                for (Vertex v : part.vertices) {
                    auto it = std::lower_bound(sub.to_parent.begin(), sub.to_parent.end(), v);
                    back.push_back(static_cast<Vertex>(it - sub.to_parent.begin()));
                }
                return back;
            };
        };
        // Branches run concurrently only at the top and only without a
        // trace, so the trace order stays deterministic.
        BranchRunner runner;
        if (depth == 0 && config_.threads > 1 && !config_.trace) {
            runner = [this](Tasks& tasks) {
                for (std::size_t start = 0; start < tasks.size(); start += config_.threads) {
                    std::vector<std::future<void>> running;
                    for (std::size_t i = start; i < std::min(tasks.size(), start + config_.threads); ++i) {
                        running.push_back(std::async(std::launch::async, tasks[i]));
                    }
                    for (auto& f : running) f.get();
                }
            };
        }

        const WeightFn uniform = WeightFn::uniform(n);
        if (auto s = find_balanced_separator(g, uniform, *config_.c, config_.d_max)) {
            ++counters_.case1;
            VertexSet in_root = sub.lift(*s);
            std::string detail = "S = {";
            for (std::size_t i = 0; i < in_root.size(); ++i) detail += (i ? "," : "") + std::to_string(in_root[i]);
            detail += "}";
            TraceNode* node = child(trace, "case1", n, detail);
            auto r = case1_impl(g, *s, *config_.c, make_recurse(node), runner);
            counters_.case1_branches += r.branches;
            return lift(r.set.vertices);
        }

        ProviderContext ctx{&sub.to_parent, config_.z_max, *config_.delta};
        for (const auto& provider : providers_) {
            ProviderOutcome outcome = provider->provide(g, ctx);
            if (!outcome.result) {
                child(trace, "provider-declined", n, provider->name() + ": " + outcome.reason);
                continue;
            }
            if (auto why = audit(g, *outcome.result); !why.empty()) {
                ++counters_.provider_rejections;
                warn("rejected output of provider " + provider->name() + ": " + why);
                child(trace, "provider-rejected", n, provider->name() + ": " + why);
                continue;
            }
            ++counters_.case2;
            TraceNode* node = child(trace, "case2", n,
                                    provider->name() + ", |X| = " + std::to_string(outcome.result->deletion.size()));
            auto r = case2_impl(g, *outcome.result, make_recurse(node), runner);
            counters_.case2_branches += r.branches;
            return lift(r.set.vertices);
        }

        ++counters_.fallbacks;
        warn("WARNING: no balanced separator of size <= " + std::to_string(config_.d_max) +
             " and no usable decomposition; solved a component by brute force");
        child(trace, "fallback", n, "brute force");
        return lift(branching_mwis(g).vertices);
    }

    /// Re-checks a provider's output; empty when usable.
    std::string audit(const Graph& g, const ProviderResult& r) {
        if (r.deletion.size() > config_.z_max) return "|X| exceeds z_max";
        if (auto why = check_provided(g, r); !why.empty()) return why;
        const auto n = static_cast<std::size_t>(g.size());
        const std::size_t delta = *config_.delta;
        if (largest_atom(r.esd) > atom_size_bound(n, delta)) return "an atom exceeds ceil(n / (10 delta))";
        auto parts = particles(r.esd);
        for (const auto& p : parts) {
            if (p.vertices.size() >= n) return "a particle is the whole graph, so recursion would not shrink";
        }
        if (n >= 30 * delta) {
            for (const auto& p : parts) {
                if (2 * p.vertices.size() > n) {
                    ++counters_.particle_audit_violations;
                    warn("particle larger than n/2 on an audited decomposition");
                    break;
                }
            }
        }
        return {};
    }

    const Graph& root_;
    SolverConfig config_;
    std::vector<std::unique_ptr<DecompositionProvider>> providers_;
    Counters counters_;
    std::mutex mutex_;
    std::vector<std::string> warnings_;
    std::map<VertexSet, IndependentSet> memo_;
};

}  // namespace

Solution solve_mwis(const Graph& g, const SolverConfig& config) {
    SolverConfig resolved = config;
    resolve_config(g, resolved);
    return Engine(g, resolved).run();
}

}  // namespace stripmis
