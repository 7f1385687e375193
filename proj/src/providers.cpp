#include "stripmis/providers.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "stripmis/esd_io.hpp"

namespace stripmis {

// ---------------------------------------------------------------------------
// Line graph recognition

namespace {

class KrauszSearch {
public:
    KrauszSearch(const Graph& g, std::size_t budget)
        : g_(g), budget_(budget), count_(static_cast<std::size_t>(g.size()), 0) {}

    std::optional<std::vector<VertexSet>> run() {
        if (search()) return cliques_;
        return std::nullopt;
    }

private:
    bool covered(Vertex a, Vertex b) const { return covered_.count({std::min(a, b), std::max(a, b)}) > 0; }

    bool search() {
        if (budget_ == 0) return false;
        --budget_;
        std::optional<Edge> next;
        for (auto e : g_.edges()) {
            if (!covered_.count(e)) {
                next = e;
                break;
            }
        }
        if (!next) return simple_root();
        auto [u, v] = *next;
        if (count_[static_cast<std::size_t>(u)] == 2 || count_[static_cast<std::size_t>(v)] == 2) return false;

        std::vector<Vertex> common;
        for (Vertex w : g_.neighbors(u)) {
            if (w != v && g_.adjacent(w, v) && count_[static_cast<std::size_t>(w)] < 2 && !covered(u, w) &&
                !covered(v, w)) {
                common.push_back(w);
            }
        }
        // Candidate extensions, larger cliques first.
        std::vector<VertexSet> options;
        const auto k = common.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            VertexSet pick;
            for (std::size_t i = 0; i < k; ++i) {
                if (mask >> i & 1) pick.push_back(common[i]);
            }
            bool ok = true;
            for (std::size_t i = 0; i < pick.size() && ok; ++i) {
                for (std::size_t j = i + 1; j < pick.size() && ok; ++j) {
                    ok = g_.adjacent(pick[i], pick[j]) && !covered(pick[i], pick[j]);
                }
            }
            if (ok) options.push_back(std::move(pick));
        }
        std::stable_sort(options.begin(), options.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });

        for (const auto& extra : options) {
            VertexSet clique = canonical(set_union(extra, VertexSet{std::min(u, v), std::max(u, v)}));
            for (std::size_t i = 0; i < clique.size(); ++i) {
                for (std::size_t j = i + 1; j < clique.size(); ++j) covered_.insert({clique[i], clique[j]});
                ++count_[static_cast<std::size_t>(clique[i])];
            }
            cliques_.push_back(clique);
            if (saturated_ok(clique) && search()) return true;
            cliques_.pop_back();
            for (std::size_t i = 0; i < clique.size(); ++i) {
                for (std::size_t j = i + 1; j < clique.size(); ++j) covered_.erase({clique[i], clique[j]});
                --count_[static_cast<std::size_t>(clique[i])];
            }
            if (budget_ == 0) return false;
        }
        return false;
    }

    /// A vertex already in two cliques must have no uncovered edge left.
    bool saturated_ok(const VertexSet& clique) const {
        for (Vertex x : clique) {
            if (count_[static_cast<std::size_t>(x)] < 2) continue;
            for (Vertex y : g_.neighbors(x)) {
                if (!covered(x, y)) return false;
            }
        }
        return true;
    }

    /// Two vertices in the same pair of cliques would be parallel root edges.
    bool simple_root() const {
        std::map<Vertex, std::vector<std::size_t>> member;
        for (std::size_t i = 0; i < cliques_.size(); ++i) {
            for (Vertex x : cliques_[i]) member[x].push_back(i);
        }
        std::set<std::vector<std::size_t>> pairs;
        for (auto& [x, ids] : member) {
            if (ids.size() == 2 && !pairs.insert(ids).second) return false;
        }
        return true;
    }

    const Graph& g_;
    std::size_t budget_;
    std::vector<int> count_;
    std::set<Edge> covered_;
    std::vector<VertexSet> cliques_;
};

}  // namespace

std::optional<std::vector<VertexSet>> krausz_partition(const Graph& g, std::size_t step_budget) {
    return KrauszSearch(g, step_budget).run();
}

std::optional<ExtendedStripDecomposition> line_graph_decomposition(const Graph& g) {
    auto cliques = krausz_partition(g);
    if (!cliques) return std::nullopt;
    std::vector<std::vector<PatternVertex>> member(static_cast<std::size_t>(g.size()));
    for (std::size_t i = 0; i < cliques->size(); ++i) {
        for (Vertex x : (*cliques)[i]) member[static_cast<std::size_t>(x)].push_back(static_cast<PatternVertex>(i));
    }
    auto next = static_cast<PatternVertex>(cliques->size());
    std::vector<PatternEdge> edges;
    for (Vertex x = 0; x < g.size(); ++x) {
        auto ends = member[static_cast<std::size_t>(x)];
        while (ends.size() < 2) ends.push_back(next++);
        edges.push_back({ends[0], ends[1]});
    }
    ExtendedStripDecomposition esd;
    esd.host = g;
    esd.pattern = PatternGraph(next, std::move(edges));
    esd.eta = EtaMap::empty_for(esd.pattern);
    for (Vertex x = 0; x < g.size(); ++x) {
        esd.eta.edge[static_cast<std::size_t>(x)] = {x};
        esd.eta.edge_end[static_cast<std::size_t>(x)] = {VertexSet{x}, VertexSet{x}};
    }
    return esd;
}

// ---------------------------------------------------------------------------
// Providers

namespace {

std::vector<Vertex> identity(Vertex n) { return all_vertices(n); }

class LineGraphProvider final : public DecompositionProvider {
public:
    std::string name() const override { return "line-graph"; }

    ProviderOutcome provide(const Graph& g, const ProviderContext&) const override {
        auto esd = line_graph_decomposition(g);
        if (!esd) return {std::nullopt, "not the line graph of a simple graph"};
        return {ProviderResult{{}, std::move(*esd), identity(g.size())}, {}};
    }
};

/// Largest particle would be the whole graph, so recursing on it makes no
/// progress.
bool makes_progress(const ExtendedStripDecomposition& esd, Vertex n) {
    for (const auto& p : particles(esd)) {
        if (static_cast<Vertex>(p.vertices.size()) >= n) return false;
    }
    return true;
}

class ExhaustiveProvider final : public DecompositionProvider {
public:
    explicit ExhaustiveProvider(Vertex n_cap) : n_cap_(n_cap) {}

    std::string name() const override { return "exhaustive:" + std::to_string(n_cap_); }

    ProviderOutcome provide(const Graph& g, const ProviderContext& ctx) const override {
        if (g.size() > n_cap_) {
            return {std::nullopt, "graph has " + std::to_string(g.size()) + " vertices, cap is " + std::to_string(n_cap_)};
        }
        const std::size_t bound = atom_size_bound(static_cast<std::size_t>(g.size()), ctx.delta);
        const auto n = static_cast<std::size_t>(g.size());
        for (std::size_t k = 0; k <= std::min(ctx.z_max, n); ++k) {
            std::vector<Vertex> pick(k);
            for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<Vertex>(i);
            while (true) {
                if (auto r = attempt(g, pick, bound)) return {std::move(r), {}};
                int i = static_cast<int>(k) - 1;
                while (i >= 0 && pick[static_cast<std::size_t>(i)] == static_cast<Vertex>(n - k) + i) --i;
                if (i < 0) break;
                ++pick[static_cast<std::size_t>(i)];
                for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
        return {std::nullopt, "no deletion set of size <= " + std::to_string(ctx.z_max) + " leaves line graphs and small atoms"};
    }

private:
    static std::optional<ProviderResult> attempt(const Graph& g, const VertexSet& x, std::size_t bound) {
        VertexSet keep = set_difference(all_vertices(g.size()), x);
        auto rest = induced_subgraph(g, keep);
        const Graph& host = rest.graph;

        std::vector<PatternEdge> edges;
        std::vector<VertexSet> strips;
        std::vector<VertexSet> owned;  // per pattern vertex
        PatternVertex count = 0;
        for (const auto& comp : connected_components(host)) {
            auto sub = induced_subgraph(host, comp);
            if (auto piece = line_graph_decomposition(sub.graph)) {
                for (const auto& e : piece->pattern.edges()) edges.push_back({e.u + count, e.v + count});
                for (const auto& s : piece->eta.edge) strips.push_back(sub.lift(s));
                owned.resize(owned.size() + static_cast<std::size_t>(piece->pattern.vertex_count()));
                count += piece->pattern.vertex_count();
            } else if (comp.size() <= bound) {
                owned.push_back(comp);
                ++count;
            } else {
                return std::nullopt;
            }
        }
        ExtendedStripDecomposition esd;
        esd.host = host;
        esd.pattern = PatternGraph(count, std::move(edges));
        esd.eta = EtaMap::empty_for(esd.pattern);
        for (std::size_t e = 0; e < strips.size(); ++e) {
            esd.eta.edge[e] = strips[e];
            esd.eta.edge_end[e] = {strips[e], strips[e]};
        }
        esd.eta.vertex = std::move(owned);
        if (!validate_esd(esd, {.relaxed = true}).ok()) return std::nullopt;
        if (largest_atom(esd) > bound || !makes_progress(esd, g.size())) return std::nullopt;
        return ProviderResult{x, std::move(esd), rest.to_parent};
    }

    Vertex n_cap_;
};

class FixedProvider final : public DecompositionProvider {
public:
    FixedProvider(const Graph& root, ExtendedStripDecomposition esd, std::vector<Vertex> host_to_root,
                  std::string label)
        : esd_(std::move(esd)), host_to_root_(std::move(host_to_root)), label_(std::move(label)) {
        root_to_host_.assign(static_cast<std::size_t>(root.size()), -1);
        for (std::size_t i = 0; i < host_to_root_.size(); ++i) root_to_host_[static_cast<std::size_t>(host_to_root_[i])] = static_cast<Vertex>(i);
        auto report = validate_esd(esd_, {.relaxed = true});
        if (!report.ok()) broken_ = "decomposition is invalid: " + report.summary();
    }

    std::string name() const override { return label_; }

    ProviderOutcome provide(const Graph& g, const ProviderContext& ctx) const override {
        if (!broken_.empty()) return {std::nullopt, broken_};
        if (!ctx.to_root) return {std::nullopt, "no root mapping for the subproblem"};
        const auto& to_root = *ctx.to_root;
        VertexSet deletion;
        std::vector<Vertex> host_to_local(host_to_root_.size(), -1);
        for (Vertex local = 0; local < g.size(); ++local) {
            Vertex h = root_to_host_.at(static_cast<std::size_t>(to_root[static_cast<std::size_t>(local)]));
            if (h < 0) {
                deletion.push_back(local);
            } else {
                host_to_local[static_cast<std::size_t>(h)] = local;
            }
        }
        if (deletion.size() > ctx.z_max) {
            return {std::nullopt, std::to_string(deletion.size()) + " uncovered vertices exceed z_max"};
        }
        VertexSet removed;
        for (std::size_t h = 0; h < host_to_local.size(); ++h) {
            if (host_to_local[h] < 0) removed.push_back(static_cast<Vertex>(h));
        }
        try {
            auto restricted = restrict_esd(esd_, removed);
            std::vector<Vertex> host_to_graph;
            for (Vertex h : restricted.to_parent) host_to_graph.push_back(host_to_local[static_cast<std::size_t>(h)]);
            return {ProviderResult{deletion, std::move(restricted.esd), std::move(host_to_graph)}, {}};
        } catch (const InvariantBreach& e) {
            return {std::nullopt, e.what()};
        }
    }

private:
    ExtendedStripDecomposition esd_;
    std::vector<Vertex> host_to_root_;
    std::vector<Vertex> root_to_host_;
    std::string label_;
    std::string broken_;
};

}  // namespace

std::unique_ptr<DecompositionProvider> make_line_graph_provider() { return std::make_unique<LineGraphProvider>(); }

std::unique_ptr<DecompositionProvider> make_exhaustive_provider(Vertex n_cap) {
    return std::make_unique<ExhaustiveProvider>(n_cap);
}

std::unique_ptr<DecompositionProvider> make_fixed_provider(const Graph& root, ExtendedStripDecomposition esd,
                                                           std::vector<Vertex> host_to_root) {
    return std::make_unique<FixedProvider>(root, std::move(esd), std::move(host_to_root), "fixed");
}

FileDecomposition read_file_decomposition(const Graph& root, const std::string& path) {
    // Read over root ids, then drop the vertices the file leaves uncovered.
    auto over_root = read_esd_file(path, root);
    VertexSet covered;
    auto take = [&](const VertexSet& s) { covered.insert(covered.end(), s.begin(), s.end()); };
    for (const auto& s : over_root.eta.edge) take(s);
    for (const auto& s : over_root.eta.vertex) take(s);
    for (const auto& s : over_root.eta.triangle) take(s);
    covered = canonical(std::move(covered));

    auto sub = induced_subgraph(root, covered);
    std::vector<Vertex> to_host(static_cast<std::size_t>(root.size()), -1);
    for (std::size_t i = 0; i < covered.size(); ++i) to_host[static_cast<std::size_t>(covered[i])] = static_cast<Vertex>(i);
    auto relabel = [&](const VertexSet& s) {
        VertexSet out;
        for (Vertex x : s) out.push_back(to_host[static_cast<std::size_t>(x)]);
        return out;
    };
    // Overlapping sets survive relabelling and are reported by validation.
    ExtendedStripDecomposition esd;
    esd.host = std::move(sub.graph);
    esd.pattern = over_root.pattern;
    esd.eta = EtaMap::empty_for(esd.pattern);
    for (std::size_t e = 0; e < esd.eta.edge.size(); ++e) {
        esd.eta.edge[e] = relabel(over_root.eta.edge[e]);
        esd.eta.edge_end[e] = {relabel(over_root.eta.edge_end[e][0]), relabel(over_root.eta.edge_end[e][1])};
    }
    for (std::size_t v = 0; v < esd.eta.vertex.size(); ++v) esd.eta.vertex[v] = relabel(over_root.eta.vertex[v]);
    for (std::size_t t = 0; t < esd.eta.triangle.size(); ++t) esd.eta.triangle[t] = relabel(over_root.eta.triangle[t]);
    if (over_root.terminals) esd.terminals = relabel(*over_root.terminals);
    return {std::move(esd), std::move(sub.to_parent)};
}

std::unique_ptr<DecompositionProvider> make_file_provider(const Graph& root, const std::string& path) {
    auto file = read_file_decomposition(root, path);
    return std::make_unique<FixedProvider>(root, std::move(file.esd), std::move(file.host_to_root), "file:" + path);
}

std::unique_ptr<DecompositionProvider> make_provider(const std::string& spec, const Graph& root) {
    if (spec == "line-graph") return make_line_graph_provider();
    if (spec == "exhaustive") return make_exhaustive_provider();
    if (spec.rfind("exhaustive:", 0) == 0) {
        auto text = spec.substr(11);
        std::size_t used = 0;
        int cap = 0;
        try {
            cap = std::stoi(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != text.size() || cap < 0) throw std::invalid_argument("bad exhaustive cap in '" + spec + "'");
        return make_exhaustive_provider(cap);
    }
    if (spec.rfind("file:", 0) == 0) return make_file_provider(root, spec.substr(5));
    throw std::invalid_argument("unknown provider '" + spec + "'");
}

}  // namespace stripmis
