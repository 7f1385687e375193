#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "stripmis/esd.hpp"
#include "stripmis/matching.hpp"

namespace stripmis {

class ReductionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An independent set I(A) of the host (host ids) for every particle key.
using ParticleSolutions = std::map<ParticleKey, VertexSet>;

enum class AuxRole {
    EndU,  // x_e - u, selects A_e^u
    EndV,  // x_e - v, selects A_e^v
    Full,  // u - v, selects A_e^uv
};

/// H' with its weights. Pattern vertex p keeps id p; x_e has id
/// pattern.vertex_count() + e.
struct Auxiliary {
    EdgeWeightedGraph graph;
    /// Per H' edge id: the pattern edge it stands for and its role.
    std::vector<std::pair<PatternEdgeId, AuxRole>> roles;
    /// Formula values per pattern edge, also for edges whose u - v copy was
    /// dropped as a parallel duplicate or loop.
    std::vector<std::int64_t> end_u_weight;
    std::vector<std::int64_t> end_v_weight;
    std::vector<std::int64_t> full_weight;
};

/// Builds H' and w'. Parallel u - v copies collapse to the heaviest (ties to
/// the smaller edge id); a loop contributes the single edge x_e - u.
Auxiliary build_auxiliary(const ExtendedStripDecomposition& esd, const ParticleSolutions& sols);

/// The particle family selected by a matching of H'.
std::vector<ParticleKey> assemble_family(const ExtendedStripDecomposition& esd, const Auxiliary& aux,
                                         const Matching& m);

/// Union of the family's particle solutions; throws ReductionError if it is
/// not independent in the host.
VertexSet combine(const ExtendedStripDecomposition& esd, const std::vector<ParticleKey>& family,
                  const ParticleSolutions& sols);

/// Returns an independent set of G[particle] in host ids.
using ParticleSolver = std::function<VertexSet(const Particle&)>;

/// Calls the solver once per distinct non-empty particle vertex set and
/// checks each answer is an independent subset of its particle.
ParticleSolutions solve_particles(const ExtendedStripDecomposition& esd, const ParticleSolver& solver);

struct ReductionResult {
    VertexSet set;
    Weight weight = 0;
    Auxiliary auxiliary;
    Matching matching;
    std::vector<ParticleKey> family;
};

ReductionResult reduce_mwis(const ExtendedStripDecomposition& esd, const ParticleSolver& solver);
ReductionResult reduce_mwis(const ExtendedStripDecomposition& esd, const ParticleSolutions& sols);

}  // namespace stripmis
