#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "mutations.hpp"
#include "stripmis/esd_io.hpp"
#include "stripmis/graph_io.hpp"
#include "stripmis/testkit.hpp"
#include "support.hpp"

using namespace stripmis;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("stripmis_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string file(const std::string& name) const { return (dir_ / name).string(); }

    std::string graph(const std::string& name, const Graph& g) const {
        write_graph_file(file(name), g);
        return file(name);
    }

    std::filesystem::path dir_;
};

nlohmann::json without_timing(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    j.erase("timing");
    return j;
}

}  // namespace

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run({"--help"}).code, cli::kOk);
    EXPECT_EQ(run({"solve", file("missing.graph")}).code, cli::kParseError);
    EXPECT_EQ(run({"solve", "--bogus", graph("c5", cycle_graph(5))}).code, cli::kConfigError);
    EXPECT_EQ(run({"solve", "--delta", "1", graph("c5", cycle_graph(5))}).code, cli::kConfigError);
    EXPECT_EQ(run({"solve", "--c", "2/1", graph("c5", cycle_graph(5))}).code, cli::kConfigError);
    std::ofstream(file("junk")) << "not a graph\n";
    EXPECT_EQ(run({"solve", file("junk")}).code, cli::kParseError);
}

TEST_F(Cli, GenRoundTrip) {
    auto r = run({"gen", "random", "--n", "20", "--delta", "3", "--edge-prob", "0.3", "--seed", "5", "--wmax", "9",
                  "-o", file("g")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    Graph g = read_graph_file(file("g"));
    Graph want = gen_random_bounded_degree(20, 3, 0.3, 5, {1, 9});
    EXPECT_EQ(g.edges(), want.edges());
    EXPECT_EQ(g.weights(), want.weights());
}

TEST_F(Cli, SolveMatchesOracle) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Graph g = gen_random_bounded_degree(16, 4, 0.3, seed, {1, 100});
        auto path = graph("g" + std::to_string(seed), g);
        auto r = run({"solve", "--json", path});
        ASSERT_EQ(r.code, cli::kOk) << r.err;
        auto j = nlohmann::json::parse(r.out);
        EXPECT_EQ(j["result"]["weight"].get<Weight>(), ref::mwis_weight(g)) << seed;
        auto o = run({"oracle", "--json", path});
        ASSERT_EQ(o.code, cli::kOk);
        EXPECT_EQ(nlohmann::json::parse(o.out)["result"]["weight"], j["result"]["weight"]);
    }
}

TEST_F(Cli, JsonIsStableApartFromTiming) {
    auto path = graph("g", gen_random_bounded_degree(30, 3, 0.15, 2, {1, 20}));
    auto a = run({"solve", "--json", "--trace", path});
    auto b = run({"solve", "--json", "--trace", path});
    ASSERT_EQ(a.code, cli::kOk);
    EXPECT_EQ(without_timing(a.out).dump(), without_timing(b.out).dump());
    auto j = nlohmann::json::parse(a.out);
    for (const char* key : {"command", "inputs", "config", "result", "stats", "warnings", "trace", "timing", "exit"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["inputs"]["graph"]["digest"].get<std::string>().size(), 16u);
}

TEST_F(Cli, HumanOutput) {
    auto r = run({"solve", graph("c9", cycle_graph(9))});
    ASSERT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("weight 4"), std::string::npos) << r.out;
}

TEST_F(Cli, ValidateEsd) {
    auto g = graph("p4", path_graph(4));
    write_esd_file(file("ok.esd"), canonical_p4_esd());
    EXPECT_EQ(run({"validate-esd", g, file("ok.esd")}).code, cli::kOk);
    auto tame = run({"validate-esd", "--tame-check", "--json", g, file("ok.esd")});
    EXPECT_EQ(tame.code, cli::kOk);
    EXPECT_TRUE(nlohmann::json::parse(tame.out).contains("tame"));

    std::ofstream(file("bad.esd")) << "{ nope";
    EXPECT_EQ(run({"validate-esd", g, file("bad.esd")}).code, cli::kBadEsd);

    auto base = gen_random_esd({.terminals = true}, 11);
    auto gp = graph("host", base.host);
    for (const auto& m : mutate::all()) {
        auto broken = m.apply(base);
        if (!broken) continue;
        auto hp = graph(std::string("host_") + m.name, broken->host);
        write_esd_file(file(std::string(m.name) + ".esd"), *broken);
        auto r = run({"validate-esd", hp, file(std::string(m.name) + ".esd")});
        EXPECT_EQ(r.code, cli::kNegative) << m.name;
        EXPECT_NE(r.out.find(to_string(m.expect)), std::string::npos) << m.name << "\n" << r.out;
    }
    write_esd_file(file("base.esd"), base);
    EXPECT_EQ(run({"validate-esd", gp, file("base.esd")}).code, cli::kOk);
}

TEST_F(Cli, StrictModeNeedsTwoPatternEdges) {
    ExtendedStripDecomposition esd = with_isolated_components(ExtendedStripDecomposition{}, {path_graph(3)});
    auto g = graph("p3", esd.host);
    write_esd_file(file("iso.esd"), esd);
    EXPECT_EQ(run({"validate-esd", g, file("iso.esd")}).code, cli::kNegative);
    EXPECT_EQ(run({"validate-esd", "--relaxed", g, file("iso.esd")}).code, cli::kOk);
}

TEST_F(Cli, Detect) {
    auto claw = graph("claw", gen_subdivided_claw(1, 1, 1));
    auto r = run({"detect", claw, "1", "1", "1"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("found root 0"), std::string::npos) << r.out;
    auto c9 = graph("c9", cycle_graph(9));
    auto none = run({"detect", c9, "1", "1", "1"});
    EXPECT_EQ(none.code, cli::kNegative);
    EXPECT_NE(none.out.find("not found"), std::string::npos);
    EXPECT_EQ(run({"detect", c9, "0", "0", "2"}).code, cli::kConfigError);
}

TEST_F(Cli, OracleOnWeightedPath) {
    auto g = graph("p6", Graph(6, path_graph(6).edges(), {5, 1, 1, 5, 1, 8}));
    auto r = run({"oracle", "--json", g});
    ASSERT_EQ(r.code, cli::kOk);
    EXPECT_EQ(nlohmann::json::parse(r.out)["result"]["weight"].get<Weight>(), 18);
}

TEST_F(Cli, GenPoljakOnTriangle) {
    auto base = graph("k3", complete_graph(3));
    ASSERT_EQ(run({"gen", "poljak", "--base", base, "-p", "1", "-o", file("c9")}).code, cli::kOk);
    Graph g = read_graph_file(file("c9"));
    EXPECT_EQ(g.size(), 9);
    EXPECT_EQ(g.edge_count(), 9u);
    EXPECT_EQ(g.max_degree(), 2u);
    EXPECT_EQ(connected_components(g).size(), 1u);
}

TEST_F(Cli, SolveWithDecompositionFile) {
    Graph root = cycle_graph(10);
    auto esd = line_graph_esd(root);
    auto g = graph("lg", esd.host);
    write_esd_file(file("lg.esd"), esd);
    auto r = run({"solve", "--json", "--d-max", "0", "--esd", file("lg.esd"), g});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["result"]["weight"].get<Weight>(), 5);
    EXPECT_EQ(j["stats"]["fallbacks"].get<int>(), 0);
    EXPECT_GT(j["stats"]["case2"].get<int>(), 0);

    std::ofstream(file("broken.esd")) << "[]";
    EXPECT_EQ(run({"solve", "--esd", file("broken.esd"), g}).code, cli::kBadEsd);
}

TEST(CliDigest, Fnv1a) {
    EXPECT_EQ(cli::fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(cli::fnv1a_hex("a"), "af63dc4c8601ec8c");
}
