#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "mutations.hpp"
#include "stripmis/matching.hpp"
#include "stripmis/providers.hpp"
#include "stripmis/reduction.hpp"
#include "stripmis/solver.hpp"
#include "stripmis/testkit.hpp"
#include "support.hpp"

using namespace stripmis;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

Graph reweighted(const Graph& g, std::mt19937_64& rng, Weight lo, Weight hi) {
    std::uniform_int_distribution<Weight> wd(lo, hi);
    std::vector<Weight> w;
    for (Vertex v = 0; v < g.size(); ++v) w.push_back(wd(rng));
    return Graph(g.size(), g.edges(), w);
}

ExtendedStripDecomposition with_host(ExtendedStripDecomposition esd, Graph host) {
    esd.host = std::move(host);
    return esd;
}

bool balanced(const Graph& g, const VertexSet& x, const Rational& c) {
    auto rest = induced_subgraph(g, set_difference(all_vertices(g.size()), x));
    const WeightFn w = WeightFn::uniform(g.size());
    for (const auto& comp : connected_components(rest.graph)) {
        if (!w.below(rest.lift(comp), c)) return false;
    }
    return true;
}

Outcome oracle_equivalence() {
    int agree = 0;
    const int total = 300;
    for (std::uint64_t seed = 0; seed < total; ++seed) {
        Graph g = gen_random_bounded_degree(static_cast<Vertex>(1 + seed % 18), 1 + seed % 4, 0.35, seed, {1, 100});
        auto got = solve_mwis(g);
        auto want = brute_force_mwis(g);
        if (got.set.weight == want.weight && is_independent(g, got.set.vertices) &&
            g.weight_of(got.set.vertices) == got.set.weight) {
            ++agree;
        }
    }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " instances match brute force"};
}

Outcome poljak_identity() {
    int agree = 0, total = 0;
    std::size_t largest = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Graph base = gen_random_bounded_degree(static_cast<Vertex>(3 + seed % 6), 3, 0.5, 7000 + seed);
        const Weight alpha = brute_force_mwis(base).weight;
        for (int p = 1; p <= 2; ++p) {
            auto inst = poljak_subdivide(base, p);
            largest = std::max(largest, static_cast<std::size_t>(inst.subdivided.size()));
            ++total;
            auto got = solve_mwis(inst.subdivided);
            if (got.set.weight == alpha + p * static_cast<Weight>(base.edge_count()) &&
                is_independent(inst.subdivided, got.set.vertices)) {
                ++agree;
            }
        }
    }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) +
                                " subdivided graphs hit alpha(G) + p|E(G)| (largest n = " + std::to_string(largest) + ")"};
}

/// Valid decompositions for the reduction criteria: paths, line graphs,
/// line graphs with isolated extra components, and exhaustive-provider
/// outputs. All hosts have at most 16 vertices and random weights.
std::vector<ExtendedStripDecomposition> reduction_instances() {
    std::vector<ExtendedStripDecomposition> out;
    std::mt19937_64 rng(42);
    for (std::uint64_t i = 0; out.size() < 50; ++i) {
        auto esd = canonical_path_esd(static_cast<Vertex>(2 + i % 15));
        out.push_back(with_host(esd, reweighted(esd.host, rng, 1, 20)));
    }
    for (std::uint64_t seed = 0; out.size() < 100; ++seed) {
        Graph root = gen_random_bounded_degree(static_cast<Vertex>(4 + seed % 6), 4, 0.5, 100 + seed);
        if (root.edge_count() < 2 || root.edge_count() > 16) continue;
        auto esd = line_graph_esd(root);
        out.push_back(with_host(esd, reweighted(esd.host, rng, 1, 20)));
    }
    for (std::uint64_t seed = 0; out.size() < 150; ++seed) {
        Graph root = gen_random_bounded_degree(static_cast<Vertex>(3 + seed % 5), 3, 0.5, 300 + seed);
        if (root.edge_count() < 2 || root.edge_count() > 10) continue;
        Graph extra = gen_random_bounded_degree(static_cast<Vertex>(1 + seed % 4), 3, 0.6, 400 + seed);
        auto esd = with_isolated_components(line_graph_esd(root), {extra});
        if (esd.host.size() > 16) continue;
        out.push_back(with_host(esd, reweighted(esd.host, rng, 1, 20)));
    }
    auto provider = make_exhaustive_provider(16);
    for (std::uint64_t seed = 0; out.size() < 200; ++seed) {
        Graph g = gen_random_bounded_degree(static_cast<Vertex>(5 + seed % 10), 3, 0.3, 500 + seed);
        ProviderContext ctx;
        ctx.z_max = 0;
        ctx.delta = std::max<std::size_t>(g.max_degree(), 1);
        auto res = provider->provide(g, ctx).result;
        if (!res) continue;
        out.push_back(with_host(res->esd, reweighted(res->esd.host, rng, 1, 20)));
    }
    return out;
}

Outcome reduction_exact(const std::vector<ExtendedStripDecomposition>& instances) {
    int agree = 0, invalid = 0;
    for (const auto& esd : instances) {
        if (!validate_esd(esd, {.relaxed = true}).ok()) {
            ++invalid;
            continue;
        }
        auto r = reduce_mwis(esd, [&esd](const Particle& p) { return ref::mwis_within(esd.host, p.vertices); });
        if (r.weight == ref::mwis_weight(esd.host) && is_independent(esd.host, r.set)) ++agree;
    }
    const auto total = static_cast<int>(instances.size());
    return {agree == total && invalid == 0, std::to_string(agree) + "/" + std::to_string(total) +
                                                " decompositions reduce to the optimum (" + std::to_string(invalid) +
                                                " invalid inputs)"};
}

Outcome auxiliary_nonnegative(const std::vector<ExtendedStripDecomposition>& instances) {
    std::size_t values = 0, negative = 0;
    for (const auto& esd : instances) {
        auto sols = solve_particles(esd, [&esd](const Particle& p) { return ref::mwis_within(esd.host, p.vertices); });
        auto aux = build_auxiliary(esd, sols);
        for (const auto* list : {&aux.end_u_weight, &aux.end_v_weight, &aux.full_weight}) {
            for (auto w : *list) {
                ++values;
                negative += w < 0;
            }
        }
        for (const auto& e : aux.graph.edges()) {
            ++values;
            negative += e.weight < 0;
        }
    }
    return {negative == 0 && values > 0,
            std::to_string(negative) + " negative among " + std::to_string(values) + " auxiliary weights"};
}

Outcome blossom_vs_enumeration() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coin(0, 1);
    std::uniform_int_distribution<std::int64_t> wd(-10, 10);
    int agree = 0, total = 0;
    while (total < 500) {
        std::uniform_int_distribution<std::int32_t> nd(2, 10);
        const std::int32_t n = nd(rng);
        std::vector<WeightedEdge> edges;
        for (std::int32_t u = 0; u < n; ++u) {
            for (std::int32_t v = u + 1; v < n; ++v) {
                if (coin(rng) < 0.35) edges.push_back({u, v, wd(rng)});
            }
        }
        if (edges.size() > 16) continue;
        EdgeWeightedGraph g(n, edges);
        ++total;
        auto m = max_weight_matching(g);
        std::int64_t w = 0;
        for (auto id : m.edges) w += g.edge(id).weight;
        if (is_matching(g, m.edges) && w == m.weight && m.weight == ref::matching_weight(g)) ++agree;
    }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " graphs match 2^|E| enumeration"};
}

Outcome validator_soundness() {
    const auto& mutations = mutate::all();
    int originals_ok = 0, used = 0;
    std::vector<int> caught(mutations.size(), 0);
    for (std::uint64_t seed = 0; used < 50 && seed < 5000; ++seed) {
        RandomEsdParams params;
        params.terminals = true;
        auto esd = gen_random_esd(params, seed);
        std::vector<std::optional<ExtendedStripDecomposition>> broken;
        bool all_apply = true;
        for (const auto& m : mutations) {
            broken.push_back(m.apply(esd));
            all_apply = all_apply && broken.back().has_value();
        }
        if (!all_apply) continue;
        ++used;
        originals_ok += validate_esd(esd).ok();
        for (std::size_t i = 0; i < mutations.size(); ++i) {
            auto report = validate_esd(*broken[i]);
            if (!report.ok() && report.has(mutations[i].expect)) ++caught[i];
        }
    }
    bool pass = used == 50 && originals_ok == 50;
    std::string detail = std::to_string(originals_ok) + "/" + std::to_string(used) + " originals accepted;";
    for (std::size_t i = 0; i < mutations.size(); ++i) {
        pass = pass && caught[i] == used;
        detail += std::string(" ") + mutations[i].name + " " + std::to_string(caught[i]) + "/" + std::to_string(used);
    }
    return {pass, detail};
}

Outcome particle_bound() {
    auto provider = make_line_graph_provider();
    int outputs = 0, oversized = 0, solver_runs = 0;
    std::uint64_t audit_violations = 0, case2 = 0;
    std::size_t largest_n = 0;
    auto check = [&](const Graph& g) {
        const std::size_t delta = std::max<std::size_t>(g.max_degree(), 1);
        const auto n = static_cast<std::size_t>(g.size());
        if (n < 30 * delta) return;
        ProviderContext ctx;
        ctx.delta = delta;
        auto res = provider->provide(g, ctx).result;
        if (!res || largest_atom(res->esd) > atom_size_bound(n, delta)) return;
        ++outputs;
        largest_n = std::max(largest_n, n);
        for (const auto& p : particles(res->esd)) {
            if (2 * p.vertices.size() > n) ++oversized;
        }
    };
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph root = gen_random_bounded_degree(static_cast<Vertex>(70 + seed), 3, 0.2, 900 + seed);
        check(line_graph_esd(root).host);
    }
    for (Vertex n = 60; n <= 120; n += 20) check(cycle_graph(n));
    // The solver's own audit over every case-2 node of the recursion.
    SolverConfig cfg;
    cfg.d_max = 0;
    cfg.providers = {"line-graph"};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Graph root = gen_random_bounded_degree(static_cast<Vertex>(80 + 5 * seed), 3, 0.2, 950 + seed);
        auto s = solve_mwis(line_graph_esd(root).host, cfg);
        audit_violations += s.stats.particle_audit_violations;
        case2 += s.stats.case2;
        ++solver_runs;
    }
    return {outputs >= 20 && oversized == 0 && audit_violations == 0 && case2 > 0,
            std::to_string(oversized) + " particles above n/2 in " + std::to_string(outputs) +
                " audited decompositions (largest n = " + std::to_string(largest_n) + "); " +
                std::to_string(audit_violations) + " audit violations over " + std::to_string(case2) + " decomposition nodes in " +
                std::to_string(solver_runs) + " solver runs"};
}

Outcome separator_sides() {
    const std::vector<Rational> cs{Rational(1, 2), Rational(2, 3), Rational(3, 4), Rational(9, 10), Rational(39, 40)};
    int ok = 0, pairs = 0;
    std::mt19937_64 rng(77);
    for (std::uint64_t seed = 0; pairs < 100 && seed < 10000; ++seed) {
        Graph g = gen_random_bounded_degree(static_cast<Vertex>(8 + seed % 30), 3, 0.15, 1200 + seed);
        const Rational& c = cs[seed % cs.size()];
        std::optional<VertexSet> s;
        if (seed % 2 == 0) {
            s = find_balanced_separator(g, WeightFn::uniform(g.size()), c, 3);
        } else {
            // A random set, kept only if it happens to be balanced.
            VertexSet pick;
            std::bernoulli_distribution in(0.2);
            for (Vertex v = 0; v < g.size(); ++v) {
                if (in(rng)) pick.push_back(v);
            }
            s = pick;
        }
        if (!s || !balanced(g, *s, c)) continue;
        ++pairs;
        auto lr = partition_lr(g, *s, c);
        const auto n = static_cast<std::int64_t>(g.size());
        const auto cap = static_cast<std::size_t>(((c.num + c.den) * n + 2 * c.den - 1) / (2 * c.den));
        bool good = lr.left.size() <= cap && lr.right.size() <= cap &&
                    set_intersection(lr.left, lr.right).empty() &&
                    set_union(set_union(lr.left, lr.right), *s) == all_vertices(g.size());
        for (Vertex a : lr.left) {
            for (Vertex b : lr.right) good = good && !g.adjacent(a, b);
        }
        ok += good;
    }
    return {pairs == 100 && ok == pairs, std::to_string(ok) + "/" + std::to_string(pairs) +
                                             " splits within ceil((c+1)n/2) and anticomplete"};
}

Outcome scaling() {
    std::vector<double> ns, nodes;
    bool exact = true;
    std::string counts;
    for (int p = 1; p <= 6; ++p) {
        auto inst = poljak_subdivide(complete_graph(3), p);
        auto s = solve_mwis(inst.subdivided);
        exact = exact && s.set.weight == static_cast<Weight>(1 + 3 * p);
        ns.push_back(inst.subdivided.size());
        nodes.push_back(static_cast<double>(s.stats.nodes));
        counts += (counts.empty() ? "" : ",") + std::to_string(s.stats.nodes);
    }
    const double slope = loglog_slope(ns, nodes);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", slope);
    return {exact && slope < 4.0, std::string("node counts ") + counts + ", log-log exponent " + buf};
}

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](const char* id, const char* name, const std::function<Outcome()>& fn) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %s %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    };
    report("AC1", "oracle equivalence", oracle_equivalence);
    report("AC2", "subdivision identity", poljak_identity);
    const auto instances = reduction_instances();
    report("AC3", "matching reduction with exact particles", [&] { return reduction_exact(instances); });
    report("AC4", "blossom matching", blossom_vs_enumeration);
    report("AC5", "decomposition validator", validator_soundness);
    report("AC6", "nonnegative auxiliary weights", [&] { return auxiliary_nonnegative(instances); });
    report("AC7", "particle size bound", particle_bound);
    report("AC8", "separator sides", separator_sides);
    report("AC9", "scaling", scaling);
    std::printf("%d of 9 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
