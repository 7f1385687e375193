#include "stripmis/esd.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace stripmis {

// ---------------------------------------------------------------------------
// PatternGraph

PatternGraph::PatternGraph(PatternVertex vertex_count, std::vector<PatternEdge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ < 0) throw std::invalid_argument("negative pattern vertex count");
    incident_.resize(static_cast<std::size_t>(vertex_count_));
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (e.u < 0 || e.v < 0 || e.u >= vertex_count_ || e.v >= vertex_count_) {
            throw std::invalid_argument("pattern edge " + std::to_string(i) + " has an end out of range");
        }
        incident_[static_cast<std::size_t>(e.u)].push_back(static_cast<PatternEdgeId>(i));
        if (e.v != e.u) incident_[static_cast<std::size_t>(e.v)].push_back(static_cast<PatternEdgeId>(i));
    }

    std::vector<std::set<PatternVertex>> nbrs(static_cast<std::size_t>(vertex_count_));
    for (const auto& e : edges_) {
        if (e.is_loop()) continue;
        nbrs[static_cast<std::size_t>(e.u)].insert(e.v);
        nbrs[static_cast<std::size_t>(e.v)].insert(e.u);
    }
    for (PatternVertex a = 0; a < vertex_count_; ++a) {
        for (PatternVertex b : nbrs[static_cast<std::size_t>(a)]) {
            if (b <= a) continue;
            for (PatternVertex c : nbrs[static_cast<std::size_t>(b)]) {
                if (c <= b) continue;
                if (nbrs[static_cast<std::size_t>(a)].count(c)) triangles_.push_back(Triangle{{a, b, c}});
            }
        }
    }
    std::sort(triangles_.begin(), triangles_.end());
}

std::size_t PatternGraph::degree(PatternVertex v) const {
    std::size_t d = 0;
    for (PatternEdgeId e : incident(v)) d += edge(e).is_loop() ? 2 : 1;
    return d;
}

std::size_t PatternGraph::max_degree() const {
    std::size_t d = 0;
    for (PatternVertex v = 0; v < vertex_count_; ++v) d = std::max(d, degree(v));
    return d;
}

std::vector<PatternEdgeId> PatternGraph::edges_between(PatternVertex a, PatternVertex b) const {
    std::vector<PatternEdgeId> out;
    if (a == b) return out;
    for (PatternEdgeId e : incident(a)) {
        if (edge(e).has_end(b)) out.push_back(e);
    }
    return out;
}

std::vector<std::size_t> PatternGraph::triangles_on_edge(PatternEdgeId e) const {
    std::vector<std::size_t> out;
    const auto& pe = edge(e);
    if (pe.is_loop()) return out;
    for (std::size_t i = 0; i < triangles_.size(); ++i) {
        if (triangles_[i].has(pe.u) && triangles_[i].has(pe.v)) out.push_back(i);
    }
    return out;
}

std::optional<std::size_t> PatternGraph::triangle_index(const Triangle& t) const {
    auto sorted = t;
    std::sort(sorted.v.begin(), sorted.v.end());
    auto it = std::lower_bound(triangles_.begin(), triangles_.end(), sorted);
    if (it == triangles_.end() || *it != sorted) return std::nullopt;
    return static_cast<std::size_t>(it - triangles_.begin());
}

EtaMap EtaMap::empty_for(const PatternGraph& h) {
    EtaMap eta;
    eta.edge.resize(static_cast<std::size_t>(h.edge_count()));
    eta.edge_end.resize(static_cast<std::size_t>(h.edge_count()));
    eta.vertex.resize(static_cast<std::size_t>(h.vertex_count()));
    eta.triangle.resize(h.triangles().size());
    return eta;
}

const VertexSet& EtaMap::end(const PatternGraph& h, PatternEdgeId e, PatternVertex x) const {
    const auto& pe = h.edge(e);
    if (x == pe.u) return edge_end.at(static_cast<std::size_t>(e))[0];
    if (x == pe.v) return edge_end.at(static_cast<std::size_t>(e))[1];
    throw std::out_of_range("pattern vertex " + std::to_string(x) + " is not an end of edge " + std::to_string(e));
}

VertexSet& EtaMap::end(const PatternGraph& h, PatternEdgeId e, PatternVertex x) {
    return const_cast<VertexSet&>(std::as_const(*this).end(h, e, x));
}

// ---------------------------------------------------------------------------
// Validation

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Shape: return "shape";
        case ViolationKind::TooFewEdges: return "too-few-edges";
        case ViolationKind::Containment: return "containment";
        case ViolationKind::StripOverlap: return "strip-overlap";
        case ViolationKind::UnjustifiedAdjacency: return "unjustified-adjacency";
        case ViolationKind::MissingAdjacency: return "missing-adjacency";
        case ViolationKind::EmptyStrip: return "empty-strip";
        case ViolationKind::NotPartition: return "not-partition";
        case ViolationKind::PotatoNotClique: return "potato-not-clique";
        case ViolationKind::SetOverlap: return "set-overlap";
        case ViolationKind::NotCovering: return "not-covering";
        case ViolationKind::VertexLocality: return "vertex-locality";
        case ViolationKind::TriangleLocality: return "triangle-locality";
        case ViolationKind::TerminalMismatch: return "terminal-mismatch";
    }
    return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::ostringstream out;
    for (const auto& v : violations) out << to_string(v.kind) << ": " << v.message << '\n';
    return out.str();
}

namespace {

class Reporter {
public:
    explicit Reporter(ValidationReport& r) : report_(r) {}

    void add(ViolationKind kind, std::string message, std::vector<Vertex> witnesses = {}) {
        report_.violations.push_back({kind, std::move(message), std::move(witnesses)});
    }

private:
    ValidationReport& report_;
};

std::string edge_name(PatternEdgeId e) { return "e" + std::to_string(e); }

bool check_set(const Graph& g, const VertexSet& s) {
    if (!is_canonical(s)) return false;
    return s.empty() || (s.front() >= 0 && s.back() < g.size());
}

/// Returns false (after reporting) when the map cannot be indexed safely.
bool check_shape(const Graph& g, const PatternGraph& h, const EtaMap& eta, Reporter& rep) {
    bool ok = true;
    if (eta.edge.size() != static_cast<std::size_t>(h.edge_count()) ||
        eta.edge_end.size() != static_cast<std::size_t>(h.edge_count()) ||
        eta.vertex.size() != static_cast<std::size_t>(h.vertex_count()) ||
        eta.triangle.size() != h.triangles().size()) {
        rep.add(ViolationKind::Shape, "eta is not shaped like the pattern graph");
        return false;
    }
    auto check = [&](const VertexSet& s, const std::string& what) {
        if (!check_set(g, s)) {
            rep.add(ViolationKind::Shape, what + " is not a sorted set of host vertices");
            ok = false;
        }
    };
    for (PatternEdgeId e = 0; e < h.edge_count(); ++e) {
        check(eta.edge[static_cast<std::size_t>(e)], "eta(" + edge_name(e) + ")");
        check(eta.edge_end[static_cast<std::size_t>(e)][0], "eta(" + edge_name(e) + ", u)");
        check(eta.edge_end[static_cast<std::size_t>(e)][1], "eta(" + edge_name(e) + ", v)");
        if (h.edge(e).is_loop() && eta.edge_end[static_cast<std::size_t>(e)][0] != eta.edge_end[static_cast<std::size_t>(e)][1]) {
            rep.add(ViolationKind::Shape, "loop " + edge_name(e) + " has two different end sets");
            ok = false;
        }
    }
    for (std::size_t v = 0; v < eta.vertex.size(); ++v) check(eta.vertex[v], "eta(vertex " + std::to_string(v) + ")");
    for (std::size_t t = 0; t < eta.triangle.size(); ++t) check(eta.triangle[t], "eta(triangle " + std::to_string(t) + ")");
    return ok;
}

void check_strips(const Graph& g, const PatternGraph& h, const EtaMap& eta, ValidationOptions options,
                  Reporter& rep) {
    if (!options.relaxed && h.edge_count() < 2) {
        rep.add(ViolationKind::TooFewEdges,
                "pattern has " + std::to_string(h.edge_count()) + " edges; at least 2 required outside relaxed mode");
    }
    std::vector<PatternEdgeId> strip_of(static_cast<std::size_t>(g.size()), -1);
    for (PatternEdgeId e = 0; e < h.edge_count(); ++e) {
        const auto& strip = eta.edge[static_cast<std::size_t>(e)];
        for (int side = 0; side < 2; ++side) {
            auto extra = set_difference(eta.edge_end[static_cast<std::size_t>(e)][static_cast<std::size_t>(side)], strip);
            if (!extra.empty()) {
                rep.add(ViolationKind::Containment, "end set of " + edge_name(e) + " leaves eta(" + edge_name(e) + ")",
                        extra);
            }
        }
        for (Vertex x : strip) {
            auto& owner = strip_of[static_cast<std::size_t>(x)];
            if (owner >= 0) {
                rep.add(ViolationKind::StripOverlap,
                        "vertex " + std::to_string(x) + " lies in " + edge_name(owner) + " and " + edge_name(e), {x});
            } else {
                owner = e;
            }
        }
    }

    // Cross-strip edges must be explained by a shared end.
    for (auto [x, y] : g.edges()) {
        PatternEdgeId e = strip_of[static_cast<std::size_t>(x)];
        PatternEdgeId f = strip_of[static_cast<std::size_t>(y)];
        if (e < 0 || f < 0 || e == f) continue;
        bool justified = false;
        for (PatternVertex p : {h.edge(e).u, h.edge(e).v}) {
            if (!h.edge(f).has_end(p)) continue;
            if (contains(eta.end(h, e, p), x) && contains(eta.end(h, f, p), y)) justified = true;
        }
        if (!justified) {
            rep.add(ViolationKind::UnjustifiedAdjacency,
                    "edge " + std::to_string(x) + "-" + std::to_string(y) + " joins " + edge_name(e) + " and " +
                        edge_name(f) + " outside a shared end",
                    {x, y});
        }
    }

    // Segments meeting at a pattern vertex are complete to each other.
    for (PatternVertex p = 0; p < h.vertex_count(); ++p) {
        const auto& inc = h.incident(p);
        for (std::size_t i = 0; i < inc.size(); ++i) {
            for (std::size_t j = i + 1; j < inc.size(); ++j) {
                for (Vertex x : eta.end(h, inc[i], p)) {
                    for (Vertex y : eta.end(h, inc[j], p)) {
                        if (x != y && !g.adjacent(x, y)) {
                            rep.add(ViolationKind::MissingAdjacency,
                                    "segments of " + edge_name(inc[i]) + " and " + edge_name(inc[j]) + " at pattern vertex " +
                                        std::to_string(p) + " miss edge " + std::to_string(x) + "-" + std::to_string(y),
                                    {x, y});
                        }
                    }
                }
            }
        }
    }
}

}  // namespace

ValidationReport validate_strip_structure(const Graph& g, const PatternGraph& h, const EtaMap& eta,
                                          ValidationOptions options) {
    ValidationReport report;
    Reporter rep(report);
    if (!check_shape(g, h, eta, rep)) return report;
    check_strips(g, h, eta, options, rep);
    return report;
}

ValidationReport validate_elementary(const Graph& g, const PatternGraph& h, const EtaMap& eta,
                                     ValidationOptions options) {
    ValidationReport report;
    Reporter rep(report);
    if (!check_shape(g, h, eta, rep)) return report;
    check_strips(g, h, eta, options, rep);

    VertexSet covered;
    for (PatternEdgeId e = 0; e < h.edge_count(); ++e) {
        const auto& strip = eta.edge[static_cast<std::size_t>(e)];
        if (strip.empty()) rep.add(ViolationKind::EmptyStrip, "eta(" + edge_name(e) + ") is empty");
        covered = set_union(covered, strip);
    }
    auto missing = set_difference(all_vertices(g.size()), covered);
    if (!missing.empty()) rep.add(ViolationKind::NotPartition, "strips do not cover the host", missing);

    for (PatternVertex p = 0; p < h.vertex_count(); ++p) {
        VertexSet pot;
        for (PatternEdgeId e : h.incident(p)) pot = set_union(pot, eta.end(h, e, p));
        for (std::size_t i = 0; i < pot.size(); ++i) {
            for (std::size_t j = i + 1; j < pot.size(); ++j) {
                if (!g.adjacent(pot[i], pot[j])) {
                    rep.add(ViolationKind::PotatoNotClique,
                            "potato(" + std::to_string(p) + ") misses edge " + std::to_string(pot[i]) + "-" +
                                std::to_string(pot[j]),
                            {pot[i], pot[j]});
                }
            }
        }
    }
    return report;
}

ValidationReport validate_esd(const Graph& g, const PatternGraph& h, const EtaMap& eta,
                              const std::optional<VertexSet>& terminals, ValidationOptions options) {
    ValidationReport report;
    Reporter rep(report);
    if (!check_shape(g, h, eta, rep)) return report;
    if (terminals && !check_set(g, *terminals)) {
        rep.add(ViolationKind::Shape, "terminal set is not a sorted set of host vertices");
        return report;
    }
    check_strips(g, h, eta, options, rep);

    // Disjointness and cover across all three kinds of sets. Strip-strip
    // overlaps were reported above.
    enum Kind : char { None, Strip, Vert, Tri };
    std::vector<Kind> kind(static_cast<std::size_t>(g.size()), None);
    std::vector<std::int32_t> owner(static_cast<std::size_t>(g.size()), -1);
    auto claim = [&](const VertexSet& s, Kind k, std::int32_t feature, const std::string& name) {
        for (Vertex x : s) {
            auto& slot = kind[static_cast<std::size_t>(x)];
            if (slot == None) {
                slot = k;
                owner[static_cast<std::size_t>(x)] = feature;
            } else if (!(slot == Strip && k == Strip)) {
                rep.add(ViolationKind::SetOverlap, "vertex " + std::to_string(x) + " lies in " + name + " and another set",
                        {x});
            }
        }
    };
    for (PatternEdgeId e = 0; e < h.edge_count(); ++e) claim(eta.edge[static_cast<std::size_t>(e)], Strip, e, edge_name(e));
    for (PatternVertex p = 0; p < h.vertex_count(); ++p) {
        claim(eta.vertex[static_cast<std::size_t>(p)], Vert, p, "eta(vertex " + std::to_string(p) + ")");
    }
    for (std::size_t t = 0; t < h.triangles().size(); ++t) {
        claim(eta.triangle[t], Tri, static_cast<std::int32_t>(t), "eta(triangle " + std::to_string(t) + ")");
    }
    VertexSet uncovered;
    for (Vertex x = 0; x < g.size(); ++x) {
        if (kind[static_cast<std::size_t>(x)] == None) uncovered.push_back(x);
    }
    if (!uncovered.empty()) rep.add(ViolationKind::NotCovering, "host vertices outside every eta set", uncovered);

    for (PatternVertex p = 0; p < h.vertex_count(); ++p) {
        const auto& own = eta.vertex[static_cast<std::size_t>(p)];
        for (Vertex x : own) {
            for (Vertex y : g.neighbors(x)) {
                if (contains(own, y)) continue;
                bool ok = std::any_of(h.incident(p).begin(), h.incident(p).end(),
                                      [&](PatternEdgeId e) { return contains(eta.end(h, e, p), y); });
                if (!ok) {
                    rep.add(ViolationKind::VertexLocality,
                            "vertex " + std::to_string(x) + " of eta(vertex " + std::to_string(p) + ") sees " +
                                std::to_string(y) + " outside potato(" + std::to_string(p) + ")",
                            {x, y});
                }
            }
        }
    }

    for (std::size_t t = 0; t < h.triangles().size(); ++t) {
        const auto& tri = h.triangles()[t];
        const auto& own = eta.triangle[t];
        for (Vertex x : own) {
            for (Vertex y : g.neighbors(x)) {
                if (contains(own, y)) continue;
                bool ok = false;
                for (int i = 0; i < 3 && !ok; ++i) {
                    for (int j = i + 1; j < 3 && !ok; ++j) {
                        PatternVertex a = tri.v[static_cast<std::size_t>(i)];
                        PatternVertex b = tri.v[static_cast<std::size_t>(j)];
                        for (PatternEdgeId e : h.edges_between(a, b)) {
                            if (contains(eta.end(h, e, a), y) && contains(eta.end(h, e, b), y)) ok = true;
                        }
                    }
                }
                if (!ok) {
                    rep.add(ViolationKind::TriangleLocality,
                            "vertex " + std::to_string(x) + " of eta(triangle " + std::to_string(t) + ") sees " +
                                std::to_string(y) + " outside the triangle's edge cores",
                            {x, y});
                }
            }
        }
    }

    if (terminals) {
        auto w = degree_one_vertices(h);
        if (terminals->size() != w.size()) {
            rep.add(ViolationKind::TerminalMismatch,
                    std::to_string(terminals->size()) + " terminals but " + std::to_string(w.size()) +
                        " degree-one pattern vertices",
                    *terminals);
        }
        for (Vertex z : *terminals) {
            bool ok = std::any_of(w.begin(), w.end(), [&](PatternVertex leaf) {
                PatternEdgeId e = h.incident(leaf).front();
                return eta.end(h, e, leaf) == VertexSet{z};
            });
            if (!ok) {
                rep.add(ViolationKind::TerminalMismatch,
                        "terminal " + std::to_string(z) + " is not the whole end set at any degree-one vertex", {z});
            }
        }
    }
    return report;
}

ValidationReport validate_esd(const ExtendedStripDecomposition& esd, ValidationOptions options) {
    return validate_esd(esd.host, esd.pattern, esd.eta, esd.terminals, options);
}

// ---------------------------------------------------------------------------
// Rungs, frames and tameness

std::vector<std::vector<Vertex>> e_rungs(const ExtendedStripDecomposition& esd, PatternEdgeId e, RungLimits limits) {
    const auto& g = esd.host;
    const auto& pe = esd.pattern.edge(e);
    const auto& strip = esd.eta.edge.at(static_cast<std::size_t>(e));
    const auto& at_u = esd.end(e, pe.u);
    const auto& at_v = esd.end(e, pe.v);

    std::vector<std::vector<Vertex>> rungs;
    std::vector<Vertex> path;
    std::vector<char> on_path(static_cast<std::size_t>(g.size()), 0);
    std::size_t partial = 0;

    auto tick = [&] {
        if (++partial > limits.max_partial_paths) {
            throw CapExceeded("rung enumeration for " + edge_name(e) + " exceeded " +
                              std::to_string(limits.max_partial_paths) + " partial paths");
        }
    };
    // A candidate may touch only the current path end.
    auto induced_ok = [&](Vertex x) {
        for (Vertex y : g.neighbors(x)) {
            if (on_path[static_cast<std::size_t>(y)] && y != path.back()) return false;
        }
        return true;
    };

    auto dfs = [&](auto&& self) -> void {
        tick();
        Vertex last = path.back();
        for (Vertex x : g.neighbors(last)) {
            if (on_path[static_cast<std::size_t>(x)] || !contains(strip, x) || !induced_ok(x)) continue;
            bool in_u = contains(at_u, x);
            bool in_v = contains(at_v, x);
            if (in_u) continue;
            path.push_back(x);
            on_path[static_cast<std::size_t>(x)] = 1;
            if (in_v) {
                tick();
                rungs.push_back(path);
            } else {
                self(self);
            }
            on_path[static_cast<std::size_t>(x)] = 0;
            path.pop_back();
        }
    };

    for (Vertex s : at_u) {
        if (contains(at_v, s)) {
            tick();
            rungs.push_back({s});
            continue;
        }
        path.assign(1, s);
        on_path[static_cast<std::size_t>(s)] = 1;
        dfs(dfs);
        on_path[static_cast<std::size_t>(s)] = 0;
    }
    return rungs;
}

VertexSet tilde_eta(const ExtendedStripDecomposition& esd, PatternEdgeId e, RungLimits limits) {
    VertexSet on_rung;
    for (const auto& rung : e_rungs(esd, e, limits)) on_rung.insert(on_rung.end(), rung.begin(), rung.end());
    return set_difference(esd.eta.edge.at(static_cast<std::size_t>(e)), canonical(std::move(on_rung)));
}

std::vector<PatternVertex> degree_one_vertices(const PatternGraph& h) {
    std::vector<PatternVertex> out;
    for (PatternVertex v = 0; v < h.vertex_count(); ++v) {
        if (h.degree(v) == 1) out.push_back(v);
    }
    return out;
}

namespace {

std::vector<std::vector<PatternVertex>> pattern_components(const PatternGraph& h, const std::vector<char>& removed) {
    std::vector<char> seen = removed;
    std::vector<std::vector<PatternVertex>> out;
    for (PatternVertex s = 0; s < h.vertex_count(); ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<PatternVertex> comp{s};
        seen[static_cast<std::size_t>(s)] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (PatternEdgeId e : h.incident(comp[i])) {
                PatternVertex o = h.edge(e).other(comp[i]);
                if (!seen[static_cast<std::size_t>(o)]) {
                    seen[static_cast<std::size_t>(o)] = 1;
                    comp.push_back(o);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

/// H[A u C] is a path whose two ends are the two vertices of C.
bool is_path_between(const PatternGraph& h, const std::vector<PatternVertex>& a, PatternVertex c1, PatternVertex c2) {
    std::vector<char> in(static_cast<std::size_t>(h.vertex_count()), 0);
    for (PatternVertex x : a) in[static_cast<std::size_t>(x)] = 1;
    in[static_cast<std::size_t>(c1)] = in[static_cast<std::size_t>(c2)] = 1;
    std::size_t vertices = a.size() + 2;
    std::size_t edges = 0;
    std::vector<std::size_t> deg(static_cast<std::size_t>(h.vertex_count()), 0);
    for (const auto& e : h.edges()) {
        if (!in[static_cast<std::size_t>(e.u)] || !in[static_cast<std::size_t>(e.v)]) continue;
        if (e.is_loop()) return false;
        ++edges;
        ++deg[static_cast<std::size_t>(e.u)];
        ++deg[static_cast<std::size_t>(e.v)];
    }
    if (edges != vertices - 1) return false;
    if (deg[static_cast<std::size_t>(c1)] != 1 || deg[static_cast<std::size_t>(c2)] != 1) return false;
    for (PatternVertex x : a) {
        if (deg[static_cast<std::size_t>(x)] != 2) return false;
    }
    // A is a connected component of H - C attached to C, so the union is
    // connected and the counts above make it a path.
    return true;
}

}  // namespace

bool is_frame(const PatternGraph& h, const std::vector<PatternVertex>& w) {
    if (h.vertex_count() == 0) return false;
    std::vector<char> none(static_cast<std::size_t>(h.vertex_count()), 0);
    if (pattern_components(h, none).size() != 1) return false;
    if (w.size() < 3) return false;
    std::vector<char> in_w(static_cast<std::size_t>(h.vertex_count()), 0);
    for (PatternVertex x : w) {
        if (x < 0 || x >= h.vertex_count() || h.degree(x) != 1) return false;
        in_w[static_cast<std::size_t>(x)] = 1;
    }

    // Every separation (A, C, B) with A a non-empty union of W-free
    // components of H - C. Two or more W-free components can never make a
    // path through C, so only single components need checking.
    auto check_cut = [&](const std::vector<PatternVertex>& cut) {
        std::vector<char> removed(static_cast<std::size_t>(h.vertex_count()), 0);
        for (PatternVertex x : cut) removed[static_cast<std::size_t>(x)] = 1;
        std::vector<std::vector<PatternVertex>> free_parts;
        for (auto& comp : pattern_components(h, removed)) {
            bool touches_w = std::any_of(comp.begin(), comp.end(), [&](PatternVertex x) { return in_w[static_cast<std::size_t>(x)]; });
            if (!touches_w) free_parts.push_back(std::move(comp));
        }
        if (free_parts.empty()) return true;
        if (cut.size() != 2 || free_parts.size() > 1) return false;
        return is_path_between(h, free_parts.front(), cut[0], cut[1]);
    };

    if (!check_cut({})) return false;
    for (PatternVertex a = 0; a < h.vertex_count(); ++a) {
        if (!check_cut({a})) return false;
        for (PatternVertex b = a + 1; b < h.vertex_count(); ++b) {
            if (!check_cut({a, b})) return false;
        }
    }
    return true;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

namespace {

TamenessReport tameness(const ExtendedStripDecomposition& esd, RungLimits limits, bool require_empty_tilde) {
    TamenessReport report;
    auto fail = [&](std::string why) {
        if (report.verdict != Verdict::Indeterminate) report.verdict = Verdict::No;
        report.reasons.push_back(std::move(why));
    };
    if (!esd.terminals) {
        fail("no terminal set; tameness is defined for decompositions of (G, Z)");
    } else {
        auto valid = validate_esd(esd, {.relaxed = false});
        if (!valid.ok()) fail("not a valid decomposition of (G, Z): " + valid.summary());
    }
    const auto& h = esd.pattern;
    for (PatternVertex v = 0; v < h.vertex_count(); ++v) {
        if (h.degree(v) == 2) fail("pattern vertex " + std::to_string(v) + " has degree two");
    }
    if (!is_frame(h, degree_one_vertices(h))) fail("(H, W) is not a frame");
    for (PatternEdgeId e = 0; e < h.edge_count(); ++e) {
        VertexSet tilde;
        try {
            tilde = tilde_eta(esd, e, limits);
        } catch (const CapExceeded& ex) {
            report.verdict = Verdict::Indeterminate;
            report.reasons.emplace_back(ex.what());
            continue;
        }
        const auto& strip = esd.eta.edge[static_cast<std::size_t>(e)];
        if (set_difference(strip, tilde).empty()) fail("eta(" + edge_name(e) + ") has no vertex on a rung");
        for (PatternVertex x : {h.edge(e).u, h.edge(e).v}) {
            if (!disjoint(esd.end(e, x), tilde)) {
                fail("an end set of " + edge_name(e) + " meets the off-rung vertices");
                break;
            }
        }
        if (require_empty_tilde && !tilde.empty()) fail("eta(" + edge_name(e) + ") has vertices on no rung");
    }
    return report;
}

}  // namespace

TamenessReport check_semi_tame(const ExtendedStripDecomposition& esd, RungLimits limits) {
    return tameness(esd, limits, false);
}

TamenessReport check_tame(const ExtendedStripDecomposition& esd, RungLimits limits) {
    return tameness(esd, limits, true);
}

// ---------------------------------------------------------------------------
// Atoms and particles

std::vector<Atom> atoms(const ExtendedStripDecomposition& esd) {
    const auto& h = esd.pattern;
    std::vector<Atom> out;
    for (PatternVertex v = 0; v < h.vertex_count(); ++v) {
        out.push_back({AtomKind::Vertex, v, esd.eta.vertex[static_cast<std::size_t>(v)]});
    }
    for (PatternEdgeId e = 0; e < h.edge_count(); ++e) {
        const auto& pe = h.edge(e);
        out.push_back({AtomKind::Edge, e,
                       set_difference(esd.eta.edge[static_cast<std::size_t>(e)], set_union(esd.end(e, pe.u), esd.end(e, pe.v)))});
    }
    for (std::size_t t = 0; t < h.triangles().size(); ++t) {
        out.push_back({AtomKind::Triangle, static_cast<std::int32_t>(t), esd.eta.triangle[t]});
    }
    return out;
}

VertexSet potato(const ExtendedStripDecomposition& esd, PatternVertex v) {
    VertexSet out;
    for (PatternEdgeId e : esd.pattern.incident(v)) out = set_union(out, esd.end(e, v));
    return out;
}

VertexSet boundary(const ExtendedStripDecomposition& esd, const Atom& atom) {
    switch (atom.kind) {
        case AtomKind::Vertex: return potato(esd, atom.feature);
        case AtomKind::Edge: {
            const auto& pe = esd.pattern.edge(atom.feature);
            return set_union(potato(esd, pe.u), potato(esd, pe.v));
        }
        case AtomKind::Triangle: {
            const auto& tri = esd.pattern.triangles().at(static_cast<std::size_t>(atom.feature));
            return set_union(set_union(potato(esd, tri.v[0]), potato(esd, tri.v[1])), potato(esd, tri.v[2]));
        }
    }
    return {};
}

std::size_t atom_size_bound(std::size_t n, std::size_t delta) {
    std::size_t denom = 10 * std::max<std::size_t>(delta, 1);
    return (n + denom - 1) / denom;
}

std::size_t largest_atom(const ExtendedStripDecomposition& esd) {
    std::size_t best = 0;
    for (const auto& a : atoms(esd)) best = std::max(best, a.vertices.size());
    return best;
}

const char* to_string(ParticleKind kind) {
    switch (kind) {
        case ParticleKind::Vertex: return "A_v";
        case ParticleKind::EdgeInterior: return "A_uv^perp";
        case ParticleKind::Triangle: return "A_uvw";
        case ParticleKind::EdgeEndU: return "A_uv^u";
        case ParticleKind::EdgeEndV: return "A_uv^v";
        case ParticleKind::EdgeFull: return "A_uv^uv";
    }
    return "unknown";
}

VertexSet particle_vertices(const ExtendedStripDecomposition& esd, ParticleKey key) {
    const auto& h = esd.pattern;
    const auto& eta = esd.eta;
    switch (key.kind) {
        case ParticleKind::Vertex: return eta.vertex.at(static_cast<std::size_t>(key.feature));
        case ParticleKind::Triangle: return eta.triangle.at(static_cast<std::size_t>(key.feature));
        default: break;
    }
    const PatternEdgeId e = key.feature;
    const auto& pe = h.edge(e);
    const auto& strip = eta.edge.at(static_cast<std::size_t>(e));
    const auto& ev_u = eta.vertex[static_cast<std::size_t>(pe.u)];
    const auto& ev_v = eta.vertex[static_cast<std::size_t>(pe.v)];
    switch (key.kind) {
        case ParticleKind::EdgeInterior: return set_difference(strip, set_union(esd.end(e, pe.u), esd.end(e, pe.v)));
        case ParticleKind::EdgeEndU: return set_union(ev_u, set_difference(strip, esd.end(e, pe.v)));
        case ParticleKind::EdgeEndV: return set_union(ev_v, set_difference(strip, esd.end(e, pe.u)));
        case ParticleKind::EdgeFull: {
            VertexSet out = set_union(set_union(ev_u, ev_v), strip);
            for (std::size_t t : h.triangles_on_edge(e)) out = set_union(out, eta.triangle[t]);
            return out;
        }
        default: break;
    }
    throw std::logic_error("unhandled particle kind");
}

std::vector<Particle> particles(const ExtendedStripDecomposition& esd) {
    const auto& h = esd.pattern;
    std::vector<Particle> out;
    auto add = [&](ParticleKind kind, std::int32_t feature) {
        ParticleKey key{kind, feature};
        out.push_back({key, particle_vertices(esd, key)});
    };
    for (PatternVertex v = 0; v < h.vertex_count(); ++v) add(ParticleKind::Vertex, v);
    for (PatternEdgeId e = 0; e < h.edge_count(); ++e) {
        add(ParticleKind::EdgeInterior, e);
        add(ParticleKind::EdgeEndU, e);
        add(ParticleKind::EdgeEndV, e);
        add(ParticleKind::EdgeFull, e);
    }
    for (std::size_t t = 0; t < h.triangles().size(); ++t) add(ParticleKind::Triangle, static_cast<std::int32_t>(t));
    return out;
}

// ---------------------------------------------------------------------------
// Restriction

RestrictedEsd restrict_esd(const ExtendedStripDecomposition& esd, const VertexSet& removed, ValidationOptions options) {
    const auto& g = esd.host;
    std::vector<Vertex> new_id(static_cast<std::size_t>(g.size()), -1);
    VertexSet removed_sorted = canonical(removed);
    VertexSet keep = set_difference(all_vertices(g.size()), removed_sorted);
    for (std::size_t i = 0; i < keep.size(); ++i) new_id[static_cast<std::size_t>(keep[i])] = static_cast<Vertex>(i);

    auto map_set = [&](const VertexSet& s) {
        VertexSet out;
        for (Vertex x : s) {
            Vertex y = new_id.at(static_cast<std::size_t>(x));
            if (y >= 0) out.push_back(y);
        }
        return out;
    };

    RestrictedEsd out;
    auto sub = induced_subgraph(g, keep);
    out.esd.host = std::move(sub.graph);
    out.to_parent = std::move(sub.to_parent);
    out.esd.pattern = esd.pattern;
    auto& eta = out.esd.eta;
    for (const auto& s : esd.eta.edge) eta.edge.push_back(map_set(s));
    for (const auto& ends : esd.eta.edge_end) eta.edge_end.push_back({map_set(ends[0]), map_set(ends[1])});
    for (const auto& s : esd.eta.vertex) eta.vertex.push_back(map_set(s));
    for (const auto& s : esd.eta.triangle) eta.triangle.push_back(map_set(s));
    if (esd.terminals && disjoint(*esd.terminals, removed_sorted)) out.esd.terminals = map_set(*esd.terminals);

    auto report = validate_esd(out.esd, options);
    if (!report.ok()) throw InvariantBreach("restricted decomposition failed validation: " + report.summary());
    return out;
}

}  // namespace stripmis
