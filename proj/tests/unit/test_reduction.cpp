#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "stripmis/reduction.hpp"
#include "stripmis/testkit.hpp"
#include "support.hpp"

using namespace stripmis;

namespace {

ParticleSolver exact(const ExtendedStripDecomposition& esd) {
    return [&esd](const Particle& p) { return ref::mwis_within(esd.host, p.vertices); };
}

std::size_t aux_edge(const Auxiliary& aux, PatternEdgeId e, AuxRole role) {
    for (std::size_t i = 0; i < aux.roles.size(); ++i) {
        if (aux.roles[i] == std::pair{e, role}) return i;
    }
    throw std::logic_error("no such auxiliary edge");
}

Matching matching_of(const Auxiliary& aux, std::vector<std::size_t> ids) {
    std::sort(ids.begin(), ids.end());
    std::int64_t w = 0;
    for (auto id : ids) w += aux.graph.edge(id).weight;
    return {ids, w};
}

Graph petersen() {
    std::vector<Edge> e;
    for (Vertex i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    for (auto& [a, b] : e) {
        if (a > b) std::swap(a, b);
    }
    return Graph(10, e);
}

}  // namespace

TEST(Auxiliary, CanonicalPathWeights) {
    auto esd = canonical_p4_esd();
    auto aux = build_auxiliary(esd, solve_particles(esd, exact(esd)));
    EXPECT_EQ(aux.graph.size(), 3 + 2);
    EXPECT_EQ(aux.graph.edge(aux_edge(aux, 0, AuxRole::EndU)).weight, 1);
    EXPECT_EQ(aux.graph.edge(aux_edge(aux, 0, AuxRole::EndV)).weight, 1);
    EXPECT_EQ(aux.graph.edge(aux_edge(aux, 0, AuxRole::Full)).weight, 1);
    const auto& x = aux.graph.edge(aux_edge(aux, 0, AuxRole::EndU));
    EXPECT_EQ(std::pair(x.u, x.v), std::pair(3, 0));
}

TEST(Auxiliary, EmptyDecompositionHasZeroWeights) {
    ExtendedStripDecomposition esd;
    esd.pattern = PatternGraph(3, {{0, 1}, {1, 2}});
    esd.eta = EtaMap::empty_for(esd.pattern);
    ASSERT_TRUE(validate_esd(esd, {.relaxed = true}).ok());
    auto aux = build_auxiliary(esd, solve_particles(esd, exact(esd)));
    for (const auto& e : aux.graph.edges()) EXPECT_EQ(e.weight, 0);
    EXPECT_TRUE(reduce_mwis(esd, exact(esd)).set.empty());
}

TEST(Auxiliary, TriangleTermsAreSubtracted) {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 200 && checked < 30; ++seed) {
        RandomEsdParams p;
        p.pattern_vertices = 4;
        p.pattern_edge_prob = 0.9;
        auto esd = gen_random_esd(p, seed);
        const auto& h = esd.pattern;
        bool has_triangle_mass = false;
        for (const auto& t : esd.eta.triangle) has_triangle_mass |= !t.empty();
        if (!has_triangle_mass) continue;
        ++checked;
        auto sols = solve_particles(esd, exact(esd));
        auto aux = build_auxiliary(esd, sols);
        auto w = [&](ParticleKind k, std::int32_t f) {
            return static_cast<std::int64_t>(ref::mwis_weight(induced_subgraph(esd.host, particle_vertices(esd, {k, f})).graph));
        };
        for (PatternEdgeId e = 0; e < h.edge_count(); ++e) {
            const auto& pe = h.edge(e);
            std::int64_t expect = w(ParticleKind::EdgeFull, e) - w(ParticleKind::Vertex, pe.u) -
                                  w(ParticleKind::Vertex, pe.v) - w(ParticleKind::EdgeInterior, e);
            for (std::size_t t = 0; t < h.triangles().size(); ++t) {
                if (h.triangles()[t].has(pe.u) && h.triangles()[t].has(pe.v)) {
                    expect -= w(ParticleKind::Triangle, static_cast<std::int32_t>(t));
                }
            }
            EXPECT_EQ(aux.full_weight[static_cast<std::size_t>(e)], expect);
            EXPECT_EQ(aux.end_u_weight[static_cast<std::size_t>(e)],
                      w(ParticleKind::EdgeEndU, e) - w(ParticleKind::Vertex, pe.u) - w(ParticleKind::EdgeInterior, e));
        }
    }
    EXPECT_EQ(checked, 30);
}

TEST(Auxiliary, MissingSolutionIsAnError) {
    auto esd = canonical_p4_esd();
    auto sols = solve_particles(esd, exact(esd));
    sols.erase(sols.begin());
    EXPECT_THROW(build_auxiliary(esd, sols), ReductionError);
}

TEST(Auxiliary, ParallelEdgesAndLoops) {
    // Two parallel strips between the same pattern vertices plus a loop.
    ExtendedStripDecomposition esd;
    esd.host = Graph(3, std::vector<Edge>{}, {1, 5, 2});
    esd.pattern = PatternGraph(2, {{0, 1}, {0, 1}, {1, 1}});
    esd.eta = EtaMap::empty_for(esd.pattern);
    esd.eta.edge = {{0}, {1}, {2}};
    esd.eta.edge_end = {{VertexSet{}, VertexSet{}}, {VertexSet{}, VertexSet{}}, {VertexSet{}, VertexSet{}}};
    ASSERT_TRUE(validate_esd(esd, {.relaxed = true}).ok()) << validate_esd(esd, {.relaxed = true}).summary();
    auto aux = build_auxiliary(esd, solve_particles(esd, exact(esd)));
    // x_0, x_1, x_2 each keep their own id; one u - v copy survives.
    EXPECT_EQ(aux.graph.size(), 5);
    EXPECT_EQ(aux.graph.edge_count(), 2u + 2u + 1u + 1u);
    auto result = reduce_mwis(esd, exact(esd));
    EXPECT_EQ(result.weight, 8u);
}

TEST(Family, CanonicalPathExamples) {
    auto esd = canonical_p4_esd();
    auto aux = build_auxiliary(esd, solve_particles(esd, exact(esd)));

    auto m1 = matching_of(aux, {aux_edge(aux, 0, AuxRole::EndU), aux_edge(aux, 1, AuxRole::EndV)});
    EXPECT_EQ(assemble_family(esd, aux, m1), (std::vector<ParticleKey>{
                                                  {ParticleKind::Vertex, 1},
                                                  {ParticleKind::EdgeEndU, 0},
                                                  {ParticleKind::EdgeEndV, 1},
                                              }));

    auto empty = assemble_family(esd, aux, {});
    EXPECT_EQ(empty, (std::vector<ParticleKey>{{ParticleKind::Vertex, 0},
                                               {ParticleKind::Vertex, 1},
                                               {ParticleKind::Vertex, 2},
                                               {ParticleKind::EdgeInterior, 0},
                                               {ParticleKind::EdgeInterior, 1}}));

    auto m3 = matching_of(aux, {aux_edge(aux, 0, AuxRole::Full), aux_edge(aux, 1, AuxRole::EndV)});
    EXPECT_EQ(assemble_family(esd, aux, m3),
              (std::vector<ParticleKey>{{ParticleKind::EdgeEndV, 1}, {ParticleKind::EdgeFull, 0}}));

    auto clash = matching_of(aux, {aux_edge(aux, 0, AuxRole::Full), aux_edge(aux, 0, AuxRole::EndU)});
    EXPECT_THROW(assemble_family(esd, aux, clash), ReductionError);
}

TEST(Combine, CanonicalPath) {
    auto esd = canonical_p4_esd();
    auto r = reduce_mwis(esd, exact(esd));
    // {0, 3} is equally heavy; the tie-breaks pick {0, 2}.
    EXPECT_EQ(r.weight, 2u);
    EXPECT_EQ(r.set, (VertexSet{0, 2}));
    EXPECT_TRUE(is_independent(esd.host, r.set));
}

TEST(Combine, EmptySolutions) {
    auto esd = canonical_p4_esd();
    ParticleSolutions sols;
    for (const auto& p : particles(esd)) sols[p.key] = {};
    auto aux = build_auxiliary(esd, sols);
    EXPECT_TRUE(combine(esd, assemble_family(esd, aux, max_weight_matching(aux.graph)), sols).empty());
}

TEST(Combine, TwoDisjointStrips) {
    ExtendedStripDecomposition esd;
    esd.host = ref::make(4, {{0, 1}, {2, 3}});
    esd.pattern = PatternGraph(4, {{0, 1}, {2, 3}});
    esd.eta = EtaMap::empty_for(esd.pattern);
    esd.eta.edge = {{0, 1}, {2, 3}};
    esd.eta.edge_end = {{VertexSet{0}, VertexSet{1}}, {VertexSet{2}, VertexSet{3}}};
    ASSERT_TRUE(validate_esd(esd).ok());
    EXPECT_EQ(reduce_mwis(esd, exact(esd)).weight, 2u);
}

TEST(Combine, DependentUnionIsRejected) {
    auto esd = canonical_p4_esd();
    ParticleSolutions sols;
    for (const auto& p : particles(esd)) sols[p.key] = {};
    sols[{ParticleKind::EdgeEndV, 0}] = {1};
    sols[{ParticleKind::EdgeEndU, 1}] = {2};
    EXPECT_THROW(combine(esd, {{ParticleKind::EdgeEndV, 0}, {ParticleKind::EdgeEndU, 1}}, sols), ReductionError);
}

TEST(Reduce, IsolatedComponentsAddUp) {
    auto esd = with_isolated_components(canonical_p4_esd(), {cycle_graph(5), complete_graph(3)});
    auto r = reduce_mwis(esd, exact(esd));
    EXPECT_EQ(r.weight, 2u + 2u + 1u);
    EXPECT_EQ(r.weight, ref::mwis_weight(esd.host));
}

TEST(Reduce, PetersenLineGraph) {
    auto esd = line_graph_esd(petersen());
    EXPECT_EQ(esd.host.size(), 15);
    auto r = reduce_mwis(esd, exact(esd));
    EXPECT_EQ(r.weight, 5u);
    EXPECT_EQ(ref::mwis_weight(esd.host), 5u);
}

TEST(Reduce, InvalidParticleAnswerIsRejected) {
    auto esd = canonical_p4_esd();
    EXPECT_THROW(reduce_mwis(esd, [](const Particle&) { return VertexSet{0, 1}; }), ReductionError);
}

TEST(Reduce, ExactOptimaGiveOptimumAndNonNegativeWeights) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        RandomEsdParams p;
        p.terminals = seed % 3 == 0;
        p.weights = {1, 20};
        auto esd = gen_random_esd(p, seed);
        if (esd.host.size() > 16) continue;
        auto r = reduce_mwis(esd, exact(esd));
        EXPECT_EQ(r.weight, ref::mwis_weight(esd.host)) << seed;
        for (const auto& e : r.auxiliary.graph.edges()) EXPECT_GE(e.weight, 0) << seed;
        EXPECT_TRUE(is_independent(esd.host, r.set));
    }
}

TEST(Reduce, AnyMatchingGivesIndependentUnion) {
    std::mt19937_64 rng(7);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto esd = gen_random_esd({}, seed);
        auto sols = solve_particles(esd, exact(esd));
        auto aux = build_auxiliary(esd, sols);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<std::size_t> order(aux.graph.edge_count());
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            std::vector<char> used(static_cast<std::size_t>(aux.graph.size()), 0);
            std::vector<std::size_t> pick;
            for (auto id : order) {
                const auto& e = aux.graph.edge(id);
                if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)] || rng() % 2) continue;
                used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
                pick.push_back(id);
            }
            auto family = assemble_family(esd, aux, matching_of(aux, pick));
            VertexSet s;
            EXPECT_NO_THROW(s = combine(esd, family, sols)) << seed;
            EXPECT_TRUE(is_independent(esd.host, s));
        }
    }
}

TEST(Reduce, ScalingWeightsScalesResult) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto esd = gen_random_esd({}, seed);
        auto scaled = esd;
        std::vector<Weight> w = esd.host.weights();
        for (auto& x : w) x *= 3;
        auto edges = esd.host.edges();
        scaled.host = Graph(esd.host.size(), edges, w);
        auto a = reduce_mwis(esd, exact(esd));
        auto b = reduce_mwis(scaled, exact(scaled));
        EXPECT_EQ(b.weight, 3 * a.weight);
        EXPECT_EQ(a.family, b.family);
    }
}
