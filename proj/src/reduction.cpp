#include "stripmis/reduction.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace stripmis {

namespace {

std::int64_t signed_weight(Weight w) {
    if (w > static_cast<Weight>(std::numeric_limits<std::int64_t>::max() / 4)) {
        throw ReductionError("particle weight too large for auxiliary weights");
    }
    return static_cast<std::int64_t>(w);
}

std::int64_t solution_weight(const ExtendedStripDecomposition& esd, const ParticleSolutions& sols, ParticleKey key) {
    auto it = sols.find(key);
    if (it == sols.end()) {
        throw ReductionError(std::string("missing solution for particle ") + to_string(key.kind) + " " +
                             std::to_string(key.feature));
    }
    return signed_weight(esd.host.weight_of(it->second));
}

}  // namespace

Auxiliary build_auxiliary(const ExtendedStripDecomposition& esd, const ParticleSolutions& sols) {
    const auto& h = esd.pattern;
    const PatternVertex n = h.vertex_count();
    auto w = [&](ParticleKind kind, std::int32_t feature) { return solution_weight(esd, sols, {kind, feature}); };

    Auxiliary aux;
    const auto m = static_cast<std::size_t>(h.edge_count());
    aux.end_u_weight.resize(m);
    aux.end_v_weight.resize(m);
    aux.full_weight.resize(m);

    std::vector<WeightedEdge> edges;
    std::map<std::pair<PatternVertex, PatternVertex>, std::size_t> full_slot;
    for (PatternEdgeId e = 0; e < h.edge_count(); ++e) {
        const auto& pe = h.edge(e);
        const auto i = static_cast<std::size_t>(e);
        const std::int64_t perp = w(ParticleKind::EdgeInterior, e);
        aux.end_u_weight[i] = w(ParticleKind::EdgeEndU, e) - w(ParticleKind::Vertex, pe.u) - perp;
        aux.end_v_weight[i] = w(ParticleKind::EdgeEndV, e) - w(ParticleKind::Vertex, pe.v) - perp;
        std::int64_t full = w(ParticleKind::EdgeFull, e) - w(ParticleKind::Vertex, pe.u) - perp;
        if (!pe.is_loop()) full -= w(ParticleKind::Vertex, pe.v);
        for (std::size_t t : h.triangles_on_edge(e)) full -= w(ParticleKind::Triangle, static_cast<std::int32_t>(t));
        aux.full_weight[i] = full;

        const std::int32_t x = n + e;
        if (pe.is_loop()) {
            edges.push_back({x, pe.u, std::max(aux.end_u_weight[i], aux.end_v_weight[i])});
            aux.roles.emplace_back(e, AuxRole::EndU);
            continue;
        }
        edges.push_back({x, pe.u, aux.end_u_weight[i]});
        aux.roles.emplace_back(e, AuxRole::EndU);
        edges.push_back({x, pe.v, aux.end_v_weight[i]});
        aux.roles.emplace_back(e, AuxRole::EndV);

        auto key = std::minmax(pe.u, pe.v);
        auto [it, fresh] = full_slot.try_emplace(key, edges.size());
        if (fresh) {
            edges.push_back({pe.u, pe.v, full});
            aux.roles.emplace_back(e, AuxRole::Full);
        } else if (full > edges[it->second].weight) {
            edges[it->second].weight = full;
            aux.roles[it->second].first = e;
        }
    }
    aux.graph = EdgeWeightedGraph(n + h.edge_count(), std::move(edges));
    return aux;
}

std::vector<ParticleKey> assemble_family(const ExtendedStripDecomposition& esd, const Auxiliary& aux,
                                         const Matching& m) {
    const auto& h = esd.pattern;
    if (!is_matching(aux.graph, m.edges)) throw ReductionError("edge set is not a matching of the auxiliary graph");

    std::vector<char> vertex_covered(static_cast<std::size_t>(h.vertex_count()), 0);
    std::vector<char> edge_touched(static_cast<std::size_t>(h.edge_count()), 0);
    std::vector<ParticleKey> chosen;
    for (std::size_t id : m.edges) {
        const auto& ae = aux.graph.edge(id);
        for (std::int32_t end : {ae.u, ae.v}) {
            if (end < h.vertex_count()) vertex_covered[static_cast<std::size_t>(end)] = 1;
        }
        auto [e, role] = aux.roles[id];
        edge_touched[static_cast<std::size_t>(e)] = 1;
        switch (role) {
            case AuxRole::EndU: chosen.push_back({ParticleKind::EdgeEndU, e}); break;
            case AuxRole::EndV: chosen.push_back({ParticleKind::EdgeEndV, e}); break;
            case AuxRole::Full: chosen.push_back({ParticleKind::EdgeFull, e}); break;
        }
    }

    std::vector<ParticleKey> family;
    for (PatternVertex v = 0; v < h.vertex_count(); ++v) {
        if (!vertex_covered[static_cast<std::size_t>(v)]) family.push_back({ParticleKind::Vertex, v});
    }
    for (PatternEdgeId e = 0; e < h.edge_count(); ++e) {
        if (!edge_touched[static_cast<std::size_t>(e)]) family.push_back({ParticleKind::EdgeInterior, e});
    }
    // A triangle survives when none of its sides is matched, i.e. no matched
    // u - v edge has both ends in it.
    for (std::size_t t = 0; t < h.triangles().size(); ++t) {
        const auto& tri = h.triangles()[t];
        bool side_matched = false;
        for (std::size_t id : m.edges) {
            if (aux.roles[id].second != AuxRole::Full) continue;
            const auto& ae = aux.graph.edge(id);
            if (tri.has(ae.u) && tri.has(ae.v)) side_matched = true;
        }
        if (!side_matched) family.push_back({ParticleKind::Triangle, static_cast<std::int32_t>(t)});
    }
    family.insert(family.end(), chosen.begin(), chosen.end());
    std::sort(family.begin(), family.end());
    return family;
}

VertexSet combine(const ExtendedStripDecomposition& esd, const std::vector<ParticleKey>& family,
                  const ParticleSolutions& sols) {
    VertexSet out;
    for (const auto& key : family) {
        auto it = sols.find(key);
        if (it == sols.end()) throw ReductionError("family names a particle without a solution");
        out.insert(out.end(), it->second.begin(), it->second.end());
    }
    std::size_t total = out.size();
    out = canonical(std::move(out));
    if (out.size() != total || !is_independent(esd.host, out)) {
        throw ReductionError("combined particle solutions are not independent; the decomposition or family is invalid");
    }
    return out;
}

ParticleSolutions solve_particles(const ExtendedStripDecomposition& esd, const ParticleSolver& solver) {
    ParticleSolutions sols;
    std::map<VertexSet, VertexSet> by_set;
    for (const auto& particle : particles(esd)) {
        if (particle.vertices.empty()) {
            sols[particle.key] = {};
            continue;
        }
        auto it = by_set.find(particle.vertices);
        if (it == by_set.end()) {
            VertexSet answer = canonical(solver(particle));
            if (!is_subset(answer, particle.vertices) || !is_independent(esd.host, answer)) {
                throw ReductionError(std::string("particle solver returned an invalid set for ") +
                                     to_string(particle.key.kind) + " " + std::to_string(particle.key.feature));
            }
            it = by_set.emplace(particle.vertices, std::move(answer)).first;
        }
        sols[particle.key] = it->second;
    }
    return sols;
}

ReductionResult reduce_mwis(const ExtendedStripDecomposition& esd, const ParticleSolutions& sols) {
    ReductionResult out;
    out.auxiliary = build_auxiliary(esd, sols);
    out.matching = max_weight_matching(out.auxiliary.graph);
    out.family = assemble_family(esd, out.auxiliary, out.matching);
    out.set = combine(esd, out.family, sols);
    out.weight = esd.host.weight_of(out.set);
    return out;
}

ReductionResult reduce_mwis(const ExtendedStripDecomposition& esd, const ParticleSolver& solver) {
    return reduce_mwis(esd, solve_particles(esd, solver));
}

}  // namespace stripmis
