#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "stripmis/esd_io.hpp"
#include "stripmis/graph_io.hpp"
#include "stripmis/pattern.hpp"
#include "stripmis/providers.hpp"
#include "stripmis/solver.hpp"
#include "stripmis/testkit.hpp"

namespace stripmis::cli {

using json = nlohmann::ordered_json;

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

namespace {

struct Failure {
    int code;
    std::string message;
};

std::string slurp(const std::string& path, int code) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{code, "cannot open " + path};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct LoadedGraph {
    Graph graph;
    std::string digest;
};

LoadedGraph load_graph(const std::string& path) {
    std::string bytes = slurp(path, kParseError);
    std::istringstream in(bytes);
    try {
        return {read_graph(in), fnv1a_hex(bytes)};
    } catch (const std::exception& e) {
        throw Failure{kParseError, path + ": " + e.what()};
    }
}

std::string join(const VertexSet& s, const char* sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? sep : "") + std::to_string(s[i]);
    return out;
}

json trace_json(const TraceNode& node) {
    json j{{"kind", node.kind}, {"n", node.n}};
    if (!node.detail.empty()) j["detail"] = node.detail;
    if (!node.children.empty()) {
        j["children"] = json::array();
        for (const auto& c : node.children) j["children"].push_back(trace_json(c));
    }
    return j;
}

void count_kinds(const TraceNode& node, std::map<std::string, std::uint64_t>& counts) {
    ++counts[node.kind];
    for (const auto& c : node.children) count_kinds(c, counts);
}

void print_trace(std::ostream& out, const TraceNode& node, int depth) {
    out << std::string(static_cast<std::size_t>(2 * depth), ' ') << node.kind << " n=" << node.n;
    if (!node.detail.empty()) out << " " << node.detail;
    out << "\n";
    for (const auto& c : node.children) print_trace(out, c, depth + 1);
}

json stats_json(const SolverStats& s) {
    return {{"nodes", s.nodes},
            {"splits", s.splits},
            {"base_cases", s.base_cases},
            {"case1", s.case1},
            {"case1_branches", s.case1_branches},
            {"case2", s.case2},
            {"case2_branches", s.case2_branches},
            {"fallbacks", s.fallbacks},
            {"provider_rejections", s.provider_rejections},
            {"particle_audit_violations", s.particle_audit_violations},
            {"memo_hits", s.memo_hits},
            {"max_depth", s.max_depth}};
}

json result_json(const IndependentSet& s) {
    return {{"weight", s.weight}, {"size", s.vertices.size()}, {"vertices", s.vertices}};
}

void print_result(std::ostream& out, const IndependentSet& s) {
    out << "weight " << s.weight << "\n";
    out << "size " << s.vertices.size() << "\n";
    out << "vertices " << join(s.vertices) << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

struct SolveOpts {
    std::string graph;
    int t = 3;
    std::optional<std::size_t> delta;
    std::string c;
    std::size_t d_max = 3;
    std::size_t z_max = 4;
    Vertex base_case_n = 8;
    std::vector<std::string> providers{"line-graph", "exhaustive"};
    std::string esd;
    bool trace = false;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::size_t memo = 0;
};

SolverConfig make_config(const SolveOpts& o) {
    SolverConfig cfg;
    cfg.t = o.t;
    cfg.delta = o.delta;
    if (!o.c.empty()) {
        try {
            cfg.c = Rational::parse(o.c);
        } catch (const std::exception& e) {
            throw Failure{kConfigError, "bad value for --c: " + std::string(e.what())};
        }
    }
    cfg.d_max = o.d_max;
    cfg.z_max = o.z_max;
    cfg.base_case_n = o.base_case_n;
    cfg.providers = o.providers;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    cfg.memo_capacity = o.memo;
    cfg.trace = o.trace;
    return cfg;
}

int cmd_solve(const SolveOpts& o, bool as_json, const json& command, std::ostream& out, std::ostream& err) {
    auto t0 = std::chrono::steady_clock::now();
    auto input = load_graph(o.graph);
    SolverConfig cfg = make_config(o);
    json inputs{{"graph", {{"path", o.graph}, {"digest", input.digest}}}};

    if (!o.esd.empty()) {
        std::string bytes = slurp(o.esd, kBadEsd);
        inputs["esd"] = {{"path", o.esd}, {"digest", fnv1a_hex(bytes)}};
        FileDecomposition file;
        try {
            file = read_file_decomposition(input.graph, o.esd);
        } catch (const std::exception& e) {
            throw Failure{kBadEsd, o.esd + ": " + e.what()};
        }
        auto report = validate_esd(file.esd, {.relaxed = true});
        if (!report.ok()) throw Failure{kBadEsd, o.esd + ": invalid decomposition\n" + report.summary()};
        cfg.providers.insert(cfg.providers.begin(), "file:" + o.esd);
    }

    Solution sol;
    try {
        sol = solve_mwis(input.graph, cfg);
    } catch (const ConfigError& e) {
        throw Failure{kConfigError, e.what()};
    }
    if (!is_independent(input.graph, sol.set.vertices)) {
        throw std::logic_error("solver returned a dependent set");
    }
    for (const auto& w : sol.warnings) err << w << "\n";

    if (as_json) {
        json report{{"command", command},
                    {"inputs", inputs},
                    {"config",
                     {{"t", cfg.t},
                      {"delta", sol.delta},
                      {"c", sol.c.str()},
                      {"d_max", cfg.d_max},
                      {"z_max", cfg.z_max},
                      {"base_case_n", cfg.base_case_n},
                      {"providers", cfg.providers},
                      {"seed", cfg.seed},
                      {"threads", cfg.threads},
                      {"memo", cfg.memo_capacity}}},
                    {"result", result_json(sol.set)},
                    {"stats", stats_json(sol.stats)},
                    {"warnings", sol.warnings}};
        if (sol.trace) {
            std::map<std::string, std::uint64_t> counts;
            count_kinds(*sol.trace, counts);
            report["trace_summary"] = counts;
            report["trace"] = trace_json(*sol.trace);
        }
        report["timing"] = {{"seconds", seconds_since(t0)}};
        report["exit"] = kOk;
        out << report.dump(2) << "\n";
    } else {
        print_result(out, sol.set);
        out << "delta " << sol.delta << "  c " << sol.c.str() << "\n";
        out << "nodes " << sol.stats.nodes << "  case1 " << sol.stats.case1 << "  case2 " << sol.stats.case2
            << "  fallbacks " << sol.stats.fallbacks << "\n";
        if (sol.trace) print_trace(out, *sol.trace, 0);
    }
    return kOk;
}

int cmd_validate(const std::string& graph_path, const std::string& esd_path, bool relaxed, bool tame, bool as_json,
                 const json& command, std::ostream& out) {
    auto input = load_graph(graph_path);
    std::string bytes = slurp(esd_path, kBadEsd);
    ExtendedStripDecomposition esd;
    try {
        std::istringstream in(bytes);
        esd = read_esd(in, input.graph);
    } catch (const std::exception& e) {
        throw Failure{kBadEsd, esd_path + ": " + e.what()};
    }
    auto report = validate_esd(esd, {.relaxed = relaxed});
    std::optional<TamenessReport> semi, full;
    if (tame && report.ok()) {
        semi = check_semi_tame(esd);
        full = check_tame(esd);
    }
    int code = report.ok() ? kOk : kNegative;

    if (as_json) {
        json violations = json::array();
        for (const auto& v : report.violations) {
            violations.push_back({{"kind", to_string(v.kind)}, {"message", v.message}, {"witnesses", v.witnesses}});
        }
        json j{{"command", command},
               {"inputs",
                {{"graph", {{"path", graph_path}, {"digest", input.digest}}},
                 {"esd", {{"path", esd_path}, {"digest", fnv1a_hex(bytes)}}}}},
               {"valid", report.ok()},
               {"violations", violations}};
        if (semi) {
            j["semi_tame"] = {{"verdict", to_string(semi->verdict)}, {"reasons", semi->reasons}};
            j["tame"] = {{"verdict", to_string(full->verdict)}, {"reasons", full->reasons}};
        }
        j["exit"] = code;
        out << j.dump(2) << "\n";
    } else {
        out << (report.ok() ? "valid" : "invalid") << "\n";
        for (const auto& v : report.violations) {
            out << "  " << to_string(v.kind) << ": " << v.message;
            if (!v.witnesses.empty()) out << " [" << join(v.witnesses, ",") << "]";
            out << "\n";
        }
        if (semi) {
            out << "semi-tame " << to_string(semi->verdict) << "\n";
            for (const auto& r : semi->reasons) out << "  " << r << "\n";
            out << "tame " << to_string(full->verdict) << "\n";
            for (const auto& r : full->reasons) out << "  " << r << "\n";
        }
    }
    return code;
}

int cmd_detect(const std::string& graph_path, std::array<int, 3> legs, bool as_json, const json& command,
               std::ostream& out) {
    auto input = load_graph(graph_path);
    std::sort(legs.begin(), legs.end());
    if (legs[0] < 0 || legs[1] < 1) throw Failure{kConfigError, "leg lengths must be >= 0 with at most one zero"};
    auto claw = find_induced_subdivided_claw(input.graph, legs[0], legs[1], legs[2]);
    int code = claw ? kOk : kNegative;
    if (as_json) {
        json j{{"command", command},
               {"inputs", {{"graph", {{"path", graph_path}, {"digest", input.digest}}}}},
               {"found", claw.has_value()}};
        if (claw) {
            j["root"] = claw->root;
            j["legs"] = json::array({claw->legs[0], claw->legs[1], claw->legs[2]});
        }
        j["exit"] = code;
        out << j.dump(2) << "\n";
    } else if (claw) {
        out << "found root " << claw->root;
        for (const auto& leg : claw->legs) out << " leg [" << join(leg, ",") << "]";
        out << "\n";
    } else {
        out << "not found\n";
    }
    return code;
}

int cmd_oracle(const std::string& graph_path, bool as_json, const json& command, std::ostream& out) {
    auto t0 = std::chrono::steady_clock::now();
    auto input = load_graph(graph_path);
    auto best = branching_mwis(input.graph);
    if (as_json) {
        json j{{"command", command},
               {"inputs", {{"graph", {{"path", graph_path}, {"digest", input.digest}}}}},
               {"result", result_json(best)},
               {"timing", {{"seconds", seconds_since(t0)}}},
               {"exit", kOk}};
        out << j.dump(2) << "\n";
    } else {
        print_result(out, best);
    }
    return kOk;
}

struct GenOpts {
    std::string kind;
    Vertex n = 10;
    std::size_t delta = 3;
    double edge_prob = 0.3;
    std::uint64_t seed = 0;
    Weight wmin = 1;
    Weight wmax = 1;
    int a = 1, b = 1, c = 1;
    std::string base;
    int p = 1;
    std::string out;
};

int cmd_gen(const GenOpts& o, std::ostream& out) {
    Graph g;
    if (o.kind == "random") {
        if (o.n < 0 || o.edge_prob < 0 || o.edge_prob > 1 || o.wmin > o.wmax) {
            throw Failure{kConfigError, "need n >= 0, 0 <= edge-prob <= 1, wmin <= wmax"};
        }
        g = gen_random_bounded_degree(o.n, o.delta, o.edge_prob, o.seed, {o.wmin, o.wmax});
    } else if (o.kind == "claw") {
        if (o.a < 0 || o.b < 0 || o.c < 0) throw Failure{kConfigError, "leg lengths must be non-negative"};
        g = gen_subdivided_claw(o.a, o.b, o.c);
    } else if (o.kind == "poljak") {
        if (o.base.empty()) throw Failure{kConfigError, "poljak needs --base"};
        if (o.p < 0) throw Failure{kConfigError, "-p must be non-negative"};
        g = poljak_subdivide(load_graph(o.base).graph, o.p).subdivided;
    } else if (o.kind == "path" || o.kind == "cycle" || o.kind == "complete") {
        if (o.n < 0 || (o.kind == "cycle" && o.n < 3)) throw Failure{kConfigError, "bad --n for " + o.kind};
        g = o.kind == "path" ? path_graph(o.n) : o.kind == "cycle" ? cycle_graph(o.n) : complete_graph(o.n);
    } else {
        throw Failure{kConfigError, "unknown generator '" + o.kind + "'"};
    }
    if (o.out.empty()) {
        write_graph(out, g);
    } else {
        write_graph_file(o.out, g);
    }
    return kOk;
}

int cmd_bench(const SolveOpts& base, int max_p, int repeat, bool as_json, const json& command, std::ostream& out) {
    if (max_p < 1 || repeat < 1) throw Failure{kConfigError, "need --max-p >= 1 and --repeat >= 1"};
    json rows = json::array();
    std::vector<double> ns, nodes;
    SolveOpts o = base;
    for (int p = 1; p <= max_p; ++p) {
        Graph g = poljak_subdivide(complete_graph(3), p).subdivided;
        Solution sol;
        auto t0 = std::chrono::steady_clock::now();
        try {
            for (int r = 0; r < repeat; ++r) sol = solve_mwis(g, make_config(o));
        } catch (const ConfigError& e) {
            throw Failure{kConfigError, e.what()};
        }
        double secs = seconds_since(t0) / repeat;
        ns.push_back(g.size());
        nodes.push_back(static_cast<double>(sol.stats.nodes));
        rows.push_back({{"p", p}, {"n", g.size()}, {"weight", sol.set.weight}, {"nodes", sol.stats.nodes},
                        {"seconds", secs}});
        if (!as_json) {
            out << "p " << p << "  n " << g.size() << "  weight " << sol.set.weight << "  nodes " << sol.stats.nodes
                << "  seconds " << secs << "\n";
        }
    }
    std::optional<double> slope;
    if (ns.size() >= 2) slope = loglog_slope(ns, nodes);
    if (as_json) {
        json j{{"command", command}, {"family", "K3 subdivided"}, {"rows", rows}};
        if (slope) j["node_exponent"] = *slope;
        j["exit"] = kOk;
        out << j.dump(2) << "\n";
    } else if (slope) {
        out << "node exponent " << *slope << "\n";
    }
    return kOk;
}

void add_solver_flags(CLI::App* sub, SolveOpts& o) {
    sub->add_option("--t", o.t, "Leg length t of the excluded S_{t,t,t}");
    sub->add_option("--delta", o.delta, "Degree bound (default: the input's maximum degree)");
    sub->add_option("--c", o.c, "Balance parameter, e.g. 39/40 (default 1 - 1/(10 delta))");
    sub->add_option("--d-max", o.d_max, "Largest separator size searched");
    sub->add_option("--z-max", o.z_max, "Largest deletion set accepted from a provider");
    sub->add_option("--base-case-n", o.base_case_n, "Solve components up to this size directly");
    sub->add_option("--providers", o.providers, "Comma-separated provider chain")->delimiter(',');
    sub->add_option("--seed", o.seed, "Recorded in the report");
    sub->add_option("--threads", o.threads, "Concurrent top-level branches")->check(CLI::PositiveNumber);
    sub->add_option("--memo", o.memo, "Subproblem cache entries (0 = off)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact maximum-weight independent sets via strip decompositions"};
    app.name("stripmis");
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Machine-readable report");

    SolveOpts solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve MWIS exactly");
    solve_cmd->add_option("graph", solve.graph, "Graph file")->required();
    add_solver_flags(solve_cmd, solve);
    solve_cmd->add_option("--esd", solve.esd, "Decomposition file over the graph's vertex ids");
    solve_cmd->add_flag("--trace", solve.trace, "Record the case tree");
    solve_cmd->add_flag("--json", as_json, "Machine-readable report");

    std::string v_graph, v_esd;
    bool relaxed = false, tame = false;
    auto* validate_cmd = app.add_subcommand("validate-esd", "Check a decomposition file");
    validate_cmd->add_option("graph", v_graph, "Graph file")->required();
    validate_cmd->add_option("esd", v_esd, "Decomposition file")->required();
    validate_cmd->add_flag("--relaxed", relaxed, "Accept patterns with fewer than two edges");
    validate_cmd->add_flag("--tame-check", tame, "Also report semi-tame and tame verdicts");
    validate_cmd->add_flag("--json", as_json, "Machine-readable report");

    std::string d_graph;
    std::array<int, 3> legs{};
    auto* detect_cmd = app.add_subcommand("detect", "Find an induced S_{a,b,c}");
    detect_cmd->add_option("graph", d_graph, "Graph file")->required();
    detect_cmd->add_option("a", legs[0])->required();
    detect_cmd->add_option("b", legs[1])->required();
    detect_cmd->add_option("c", legs[2])->required();
    detect_cmd->add_flag("--json", as_json, "Machine-readable report");

    std::string o_graph;
    auto* oracle_cmd = app.add_subcommand("oracle", "Reference branch-and-reduce solver");
    oracle_cmd->add_option("graph", o_graph, "Graph file")->required();
    oracle_cmd->add_flag("--json", as_json, "Machine-readable report");

    GenOpts gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write a generated graph");
    gen_cmd->add_option("kind", gen.kind, "random | claw | poljak | path | cycle | complete")->required();
    gen_cmd->add_option("--n", gen.n, "Vertex count");
    gen_cmd->add_option("--delta", gen.delta, "Degree cap (random)");
    gen_cmd->add_option("--edge-prob", gen.edge_prob, "Edge probability (random)");
    gen_cmd->add_option("--seed", gen.seed, "Generator seed");
    gen_cmd->add_option("--wmin", gen.wmin, "Smallest weight (random)");
    gen_cmd->add_option("--wmax", gen.wmax, "Largest weight (random)");
    gen_cmd->add_option("--a", gen.a);
    gen_cmd->add_option("--b", gen.b);
    gen_cmd->add_option("--c", gen.c);
    gen_cmd->add_option("--base", gen.base, "Base graph file (poljak)");
    gen_cmd->add_option("-p", gen.p, "Subdivision parameter (poljak)");
    gen_cmd->add_option("-o,--out", gen.out, "Output file (default stdout)");

    SolveOpts bench;
    int max_p = 6, repeat = 1;
    auto* bench_cmd = app.add_subcommand("bench", "Time the solver on subdivided triangles");
    add_solver_flags(bench_cmd, bench);
    bench_cmd->add_option("--max-p", max_p, "Largest subdivision parameter");
    bench_cmd->add_option("--repeat", repeat, "Runs per instance");
    bench_cmd->add_flag("--json", as_json, "Machine-readable report");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        // Subcommand help surfaces as CallForHelp from the parent.
        err << e.what() << "\n";
        return kConfigError;
    }

    const char* env = std::getenv("STRIPMIS_TRACE");
    if (env && std::string(env) == "1") solve.trace = true;
    json command = args;

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve, as_json, command, out, err);
        if (validate_cmd->parsed()) return cmd_validate(v_graph, v_esd, relaxed, tame, as_json, command, out);
        if (detect_cmd->parsed()) return cmd_detect(d_graph, legs, as_json, command, out);
        if (oracle_cmd->parsed()) return cmd_oracle(o_graph, as_json, command, out);
        if (gen_cmd->parsed()) return cmd_gen(gen, out);
        if (bench_cmd->parsed()) return cmd_bench(bench, max_p, repeat, as_json, command, out);
    } catch (const Failure& f) {
        err << "error: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    }
    return kConfigError;
}

}  // namespace stripmis::cli
