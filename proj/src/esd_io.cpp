#include "stripmis/esd_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace stripmis {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw EsdFormatError(what); }

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) fail(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) fail("unknown key '" + key + "' in " + where);
    }
}

std::int64_t integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where + " must be an integer");
    return v.get<std::int64_t>();
}

std::int32_t parse_id(const std::string& text, const std::string& where) {
    std::size_t used = 0;
    long long value = -1;
    try {
        value = std::stoll(text, &used);
    } catch (const std::exception&) {
        fail("bad id '" + text + "' in " + where);
    }
    if (used != text.size() || value < 0 || value > std::numeric_limits<std::int32_t>::max()) fail("bad id '" + text + "' in " + where);
    return static_cast<std::int32_t>(value);
}

VertexSet vertex_list(const json& v, const Graph& host, const std::string& where) {
    if (!v.is_array()) fail(where + " must be a list");
    VertexSet out;
    for (const auto& x : v) {
        auto id = integer(x, where);
        if (id < 0 || id >= host.size()) fail(where + " names vertex " + std::to_string(id) + " outside the host");
        out.push_back(static_cast<Vertex>(id));
    }
    if (!is_canonical(out)) fail(where + " must be sorted without repeats");
    return out;
}

}  // namespace

ExtendedStripDecomposition read_esd(std::istream& in, const Graph& host) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    only_keys(doc, {"pattern", "eta", "terminals"}, "document");
    if (!doc.contains("pattern")) fail("missing 'pattern'");

    const auto& pat = doc["pattern"];
    only_keys(pat, {"vertices", "edges"}, "pattern");
    PatternVertex count = 0;
    if (pat.contains("vertices")) {
        if (!pat["vertices"].is_array()) fail("pattern.vertices must be a list");
        for (const auto& v : pat["vertices"]) {
            if (integer(v, "pattern.vertices") != count) fail("pattern vertices must be 0..N-1 in order");
            ++count;
        }
    }
    std::vector<PatternEdge> edges;
    if (pat.contains("edges")) {
        if (!pat["edges"].is_array()) fail("pattern.edges must be a list");
        for (const auto& e : pat["edges"]) {
            if (!e.is_array() || e.size() != 3) fail("pattern edges are [u, v, id] triples");
            auto u = integer(e[0], "pattern edge end");
            auto v = integer(e[1], "pattern edge end");
            auto id = integer(e[2], "pattern edge id");
            if (id != static_cast<std::int64_t>(edges.size())) fail("pattern edge ids must be 0..M-1 in order");
            if (u < 0 || v < 0 || u >= count || v >= count) fail("pattern edge " + std::to_string(id) + " has an unknown end");
            edges.push_back({static_cast<PatternVertex>(u), static_cast<PatternVertex>(v)});
        }
    }

    ExtendedStripDecomposition esd;
    esd.host = host;
    esd.pattern = PatternGraph(count, std::move(edges));
    esd.eta = EtaMap::empty_for(esd.pattern);
    const auto& h = esd.pattern;

    if (doc.contains("eta")) {
        const auto& eta = doc["eta"];
        only_keys(eta, {"edge", "edge_end", "vertex", "triangle"}, "eta");
        auto entries = [&](const char* key) -> const json& {
            static const json empty = json::object();
            if (!eta.contains(key)) return empty;
            if (!eta[key].is_object()) fail(std::string("eta.") + key + " must be an object");
            return eta[key];
        };
        for (const auto& [key, value] : entries("edge").items()) {
            auto e = parse_id(key, "eta.edge");
            if (e >= h.edge_count()) fail("eta.edge names unknown edge " + key);
            esd.eta.edge[static_cast<std::size_t>(e)] = vertex_list(value, host, "eta.edge[" + key + "]");
        }
        for (const auto& [key, value] : entries("edge_end").items()) {
            auto slash = key.find('/');
            if (slash == std::string::npos) fail("eta.edge_end keys look like 'edge/endpoint', got " + key);
            auto e = parse_id(key.substr(0, slash), "eta.edge_end");
            auto x = parse_id(key.substr(slash + 1), "eta.edge_end");
            if (e >= h.edge_count() || !h.edge(e).has_end(x)) fail("eta.edge_end names unknown edge end " + key);
            auto set = vertex_list(value, host, "eta.edge_end[" + key + "]");
            auto& slots = esd.eta.edge_end[static_cast<std::size_t>(e)];
            if (h.edge(e).is_loop()) {
                slots[0] = slots[1] = set;
            } else {
                esd.eta.end(h, e, x) = std::move(set);
            }
        }
        for (const auto& [key, value] : entries("vertex").items()) {
            auto v = parse_id(key, "eta.vertex");
            if (v >= h.vertex_count()) fail("eta.vertex names unknown pattern vertex " + key);
            esd.eta.vertex[static_cast<std::size_t>(v)] = vertex_list(value, host, "eta.vertex[" + key + "]");
        }
        for (const auto& [key, value] : entries("triangle").items()) {
            Triangle t;
            std::istringstream parts(key);
            std::string part;
            int i = 0;
            while (std::getline(parts, part, ',')) {
                if (i == 3) fail("eta.triangle key " + key + " has too many vertices");
                t.v[static_cast<std::size_t>(i++)] = parse_id(part, "eta.triangle");
            }
            if (i != 3 || !(t.v[0] < t.v[1] && t.v[1] < t.v[2])) fail("eta.triangle keys are sorted 'u,v,w', got " + key);
            auto idx = h.triangle_index(t);
            if (!idx) fail("eta.triangle names " + key + ", which is not a triangle of the pattern");
            esd.eta.triangle[*idx] = vertex_list(value, host, "eta.triangle[" + key + "]");
        }
    }
    if (doc.contains("terminals")) esd.terminals = vertex_list(doc["terminals"], host, "terminals");
    return esd;
}

ExtendedStripDecomposition read_esd_file(const std::string& path, const Graph& host) {
    std::ifstream in(path);
    if (!in) throw EsdFormatError("cannot open " + path);
    return read_esd(in, host);
}

void write_esd(std::ostream& out, const ExtendedStripDecomposition& esd) {
    const auto& h = esd.pattern;
    json doc;
    json vertices = json::array();
    for (PatternVertex v = 0; v < h.vertex_count(); ++v) vertices.push_back(v);
    json edges = json::array();
    for (PatternEdgeId e = 0; e < h.edge_count(); ++e) edges.push_back({h.edge(e).u, h.edge(e).v, e});
    doc["pattern"] = {{"vertices", vertices}, {"edges", edges}};

    // nlohmann orders object keys lexicographically, which keeps output stable.
    json edge = json::object(), edge_end = json::object(), vertex = json::object(), triangle = json::object();
    for (PatternEdgeId e = 0; e < h.edge_count(); ++e) {
        edge[std::to_string(e)] = esd.eta.edge[static_cast<std::size_t>(e)];
        for (PatternVertex x : {h.edge(e).u, h.edge(e).v}) {
            edge_end[std::to_string(e) + "/" + std::to_string(x)] = esd.end(e, x);
        }
    }
    for (PatternVertex v = 0; v < h.vertex_count(); ++v) vertex[std::to_string(v)] = esd.eta.vertex[static_cast<std::size_t>(v)];
    for (std::size_t t = 0; t < h.triangles().size(); ++t) {
        const auto& tri = h.triangles()[t];
        triangle[std::to_string(tri.v[0]) + "," + std::to_string(tri.v[1]) + "," + std::to_string(tri.v[2])] =
            esd.eta.triangle[t];
    }
    doc["eta"] = {{"edge", edge}, {"edge_end", edge_end}, {"vertex", vertex}, {"triangle", triangle}};
    if (esd.terminals) doc["terminals"] = *esd.terminals;
    out << doc.dump(2) << '\n';
}

void write_esd_file(const std::string& path, const ExtendedStripDecomposition& esd) {
    std::ofstream out(path);
    if (!out) throw EsdFormatError("cannot write " + path);
    write_esd(out, esd);
}

}  // namespace stripmis
