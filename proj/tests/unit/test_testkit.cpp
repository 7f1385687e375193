#include <gtest/gtest.h>

#include "stripmis/testkit.hpp"
#include "support.hpp"

using namespace stripmis;

TEST(BruteForce, Examples) {
    EXPECT_EQ(brute_force_mwis(cycle_graph(5)).weight, 2);
    for (Vertex n = 1; n <= 6; ++n) {
        Graph k(n, complete_graph(n).edges(), std::vector<Weight>(static_cast<std::size_t>(n), n));
        EXPECT_EQ(brute_force_mwis(k).weight, n);
    }
    Graph p6(6, path_graph(6).edges(), {5, 1, 1, 5, 1, 8});
    EXPECT_EQ(brute_force_mwis(p6).weight, 18);
    EXPECT_EQ(brute_force_mwis(Graph()).weight, 0);
}

TEST(BruteForce, Cap) {
    EXPECT_THROW(brute_force_mwis(path_graph(31)), OracleCapExceeded);
    EXPECT_THROW(enumerate_mwis(path_graph(17)), OracleCapExceeded);
    EXPECT_EQ(branching_mwis(path_graph(41)).weight, 21);
}

TEST(BruteForce, AgreesWithEnumeration) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        Graph g = gen_random_bounded_degree(static_cast<Vertex>(1 + seed % 16), 4, 0.35, seed, {1, 30});
        auto fast = brute_force_mwis(g);
        auto slow = enumerate_mwis(g);
        EXPECT_EQ(fast.weight, slow.weight) << seed;
        EXPECT_EQ(fast.weight, ref::mwis_weight(g)) << seed;
        EXPECT_TRUE(is_independent(g, fast.vertices));
        EXPECT_EQ(g.weight_of(fast.vertices), fast.weight);
        EXPECT_EQ(branching_mwis(g), fast);
    }
}

TEST(Enumerate, TieGoesToSmallestList) {
    // C_4 has optima {0, 2} and {1, 3}.
    EXPECT_EQ(enumerate_mwis(cycle_graph(4)).vertices, (VertexSet{0, 2}));
}

TEST(Poljak, TriangleBecomesNineCycle) {
    auto inst = poljak_subdivide(complete_graph(3), 1);
    EXPECT_EQ(inst.subdivided.size(), 9);
    EXPECT_EQ(inst.subdivided.edge_count(), 9u);
    EXPECT_EQ(inst.subdivided.max_degree(), 2u);
    EXPECT_EQ(connected_components(inst.subdivided).size(), 1u);
    EXPECT_EQ(inst.alpha_shift, 3u);
    EXPECT_EQ(brute_force_mwis(inst.subdivided).weight, 4);
}

TEST(Poljak, K4TwiceSubdivided) {
    auto inst = poljak_subdivide(complete_graph(4), 2);
    EXPECT_EQ(inst.subdivided.size(), 28);
    EXPECT_EQ(inst.alpha_shift, 12u);
    EXPECT_EQ(brute_force_mwis(inst.subdivided).weight, 13);
}

TEST(Poljak, ZeroIsIdentity) {
    Graph g = gen_random_bounded_degree(7, 3, 0.5, 3, {1, 9});
    auto inst = poljak_subdivide(g, 0);
    EXPECT_EQ(inst.subdivided.edges(), g.edges());
    EXPECT_EQ(inst.subdivided.weights(), g.weights());
    EXPECT_EQ(inst.alpha_shift, 0u);
    EXPECT_THROW(poljak_subdivide(g, -1), std::invalid_argument);
}

TEST(Poljak, AlphaShiftsByPTimesEdges) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Graph g = gen_random_bounded_degree(7, 3, 0.4, seed);
        for (int p = 1; p <= 2; ++p) {
            auto inst = poljak_subdivide(g, p);
            if (inst.subdivided.size() > 30) continue;
            EXPECT_EQ(inst.alpha_shift, static_cast<std::uint64_t>(p) * g.edge_count());
            EXPECT_EQ(brute_force_mwis(inst.subdivided).weight,
                      ref::mwis_weight(g) + static_cast<Weight>(inst.alpha_shift))
                << seed;
            EXPECT_LE(inst.subdivided.max_degree(), std::max<std::size_t>(g.max_degree(), 2));
        }
    }
}

TEST(Generators, DeterministicAndDegreeCapped) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph a = gen_random_bounded_degree(25, 3, 0.3, seed, {1, 100});
        Graph b = gen_random_bounded_degree(25, 3, 0.3, seed, {1, 100});
        EXPECT_EQ(a.edges(), b.edges());
        EXPECT_EQ(a.weights(), b.weights());
        EXPECT_LE(a.max_degree(), 3u);
        for (Vertex v = 0; v < a.size(); ++v) {
            EXPECT_GE(a.weight(v), 1);
            EXPECT_LE(a.weight(v), 100);
        }
    }
    EXPECT_NE(gen_random_bounded_degree(25, 3, 0.3, 1).edges(), gen_random_bounded_degree(25, 3, 0.3, 2).edges());
}

TEST(Generators, ClawSizes) {
    Graph s = gen_subdivided_claw(1, 2, 3);
    EXPECT_EQ(s.size(), 7);
    EXPECT_EQ(s.edge_count(), 6u);
    EXPECT_EQ(s.degree(0), 3u);
    EXPECT_EQ(path_graph(5).edge_count(), 4u);
    EXPECT_EQ(cycle_graph(5).edge_count(), 5u);
    EXPECT_EQ(complete_graph(5).edge_count(), 10u);
}

TEST(Generators, RandomEsdsAreValid) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        RandomEsdParams params;
        params.terminals = seed % 2 == 0;
        auto esd = gen_random_esd(params, seed);
        EXPECT_TRUE(validate_esd(esd).ok()) << seed << " " << validate_esd(esd).summary();
    }
}

TEST(LogLogSlope, Examples) {
    EXPECT_NEAR(loglog_slope({1, 2, 4, 8}, {1, 4, 16, 64}), 2.0, 1e-9);
    EXPECT_NEAR(loglog_slope({2, 3}, {5, 5}), 0.0, 1e-9);
    EXPECT_THROW(loglog_slope({1, 1}, {1, 2}), std::invalid_argument);
    EXPECT_THROW(loglog_slope({1, 2}, {0, 2}), std::invalid_argument);
}
