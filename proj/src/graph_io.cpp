#include "stripmis/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace stripmis {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

Graph read_graph(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    long long n = -1;
    long long m = -1;
    std::vector<Weight> weights;
    std::vector<char> weight_seen;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "c") continue;
        if (tag == "p") {
            if (n >= 0) fail(lineno, "duplicate problem line");
            if (!(ls >> n >> m) || n < 0 || m < 0) fail(lineno, "malformed problem line");
            weights.assign(static_cast<std::size_t>(n), 1);
            weight_seen.assign(static_cast<std::size_t>(n), 0);
        } else if (tag == "v") {
            if (n < 0) fail(lineno, "vertex line before problem line");
            long long id = -1;
            if (!(ls >> id) || id < 0 || id >= n) fail(lineno, "bad vertex id");
            long long w = 1;
            if (ls >> w) {
                if (w < 0) fail(lineno, "negative weight");
            } else if (!ls.eof()) {
                fail(lineno, "bad weight");
            }
            if (weight_seen[static_cast<std::size_t>(id)]) fail(lineno, "duplicate vertex line");
            weight_seen[static_cast<std::size_t>(id)] = 1;
            weights[static_cast<std::size_t>(id)] = static_cast<Weight>(w);
        } else if (tag == "e") {
            if (n < 0) fail(lineno, "edge line before problem line");
            long long u = -1;
            long long v = -1;
            if (!(ls >> u >> v) || u < 0 || v < 0 || u >= n || v >= n) fail(lineno, "bad edge endpoints");
            edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        } else {
            fail(lineno, "unknown line tag '" + tag + "'");
        }
        std::string extra;
        if (tag != "c" && (ls >> extra)) fail(lineno, "trailing tokens");
    }
    if (n < 0) throw ParseError("missing problem line");
    if (static_cast<long long>(edges.size()) != m) {
        throw ParseError("problem line declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    }
    try {
        return Graph(static_cast<Vertex>(n), edges, std::move(weights));
    } catch (const GraphError& e) {
        throw ParseError(e.what());
    }
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << "p " << g.size() << ' ' << g.edge_count() << '\n';
    for (Vertex v = 0; v < g.size(); ++v) out << "v " << v << ' ' << g.weight(v) << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
}

void write_graph_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_graph(out, g);
}

}  // namespace stripmis
