#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stripmis/graph.hpp"

namespace stripmis {

using PatternVertex = std::int32_t;
using PatternEdgeId = std::int32_t;

struct PatternEdge {
    PatternVertex u = 0;
    PatternVertex v = 0;

    bool is_loop() const { return u == v; }
    bool has_end(PatternVertex x) const { return u == x || v == x; }
    PatternVertex other(PatternVertex x) const { return x == u ? v : u; }
    bool operator==(const PatternEdge&) const = default;
};

/// Three distinct pattern vertices, pairwise joined by at least one edge.
struct Triangle {
    std::array<PatternVertex, 3> v{};

    bool has(PatternVertex x) const { return v[0] == x || v[1] == x || v[2] == x; }
    auto operator<=>(const Triangle&) const = default;
};

/// The pattern graph H of a decomposition. Loops and parallel edges are
/// representable; an edge's id is its index.
class PatternGraph {
public:
    PatternGraph() = default;
    PatternGraph(PatternVertex vertex_count, std::vector<PatternEdge> edges);

    PatternVertex vertex_count() const { return vertex_count_; }
    PatternEdgeId edge_count() const { return static_cast<PatternEdgeId>(edges_.size()); }
    const PatternEdge& edge(PatternEdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    const std::vector<PatternEdge>& edges() const { return edges_; }

    /// Edge ids incident with v, ascending; a loop appears once.
    const std::vector<PatternEdgeId>& incident(PatternVertex v) const {
        return incident_.at(static_cast<std::size_t>(v));
    }
    /// Loops count twice.
    std::size_t degree(PatternVertex v) const;
    std::size_t max_degree() const;

    /// Edge ids joining two distinct vertices.
    std::vector<PatternEdgeId> edges_between(PatternVertex a, PatternVertex b) const;
    bool adjacent(PatternVertex a, PatternVertex b) const { return !edges_between(a, b).empty(); }

    /// Sorted list of all triangles (T(H)).
    const std::vector<Triangle>& triangles() const { return triangles_; }
    /// Triangle ids (indices into triangles()) containing both ends of e;
    /// empty for loops.
    std::vector<std::size_t> triangles_on_edge(PatternEdgeId e) const;
    std::optional<std::size_t> triangle_index(const Triangle& t) const;

    bool operator==(const PatternGraph& o) const {
        return vertex_count_ == o.vertex_count_ && edges_ == o.edges_;
    }

private:
    PatternVertex vertex_count_ = 0;
    std::vector<PatternEdge> edges_;
    std::vector<std::vector<PatternEdgeId>> incident_;
    std::vector<Triangle> triangles_;
};

/// The map eta over edges, edge-ends, vertices and triangles of H. For a
/// loop both end slots hold the same set.
struct EtaMap {
    std::vector<VertexSet> edge;
    std::vector<std::array<VertexSet, 2>> edge_end;
    std::vector<VertexSet> vertex;
    std::vector<VertexSet> triangle;

    /// All-empty map shaped for the pattern.
    static EtaMap empty_for(const PatternGraph& h);

    const VertexSet& end(const PatternGraph& h, PatternEdgeId e, PatternVertex x) const;
    VertexSet& end(const PatternGraph& h, PatternEdgeId e, PatternVertex x);

    bool operator==(const EtaMap&) const = default;
};

struct ExtendedStripDecomposition {
    Graph host;
    PatternGraph pattern;
    EtaMap eta;
    std::optional<VertexSet> terminals;

    const VertexSet& end(PatternEdgeId e, PatternVertex x) const { return eta.end(pattern, e, x); }

    bool operator==(const ExtendedStripDecomposition&) const = default;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
    Shape,                 // eta not shaped like the pattern, or ids out of range
    TooFewEdges,           // |E(H)| < 2 outside relaxed mode
    Containment,           // eta(e, v) not a subset of eta(e)
    StripOverlap,          // two edge sets intersect
    UnjustifiedAdjacency,  // cross-strip edge not explained by a shared end
    MissingAdjacency,      // segments at a shared end not complete to each other
    EmptyStrip,            // elementary: eta(e) empty
    NotPartition,          // elementary: strips do not cover V(G)
    PotatoNotClique,       // elementary: potato(v) not a clique
    SetOverlap,            // edge, vertex and triangle sets not pairwise disjoint
    NotCovering,           // union of all sets is not V(G)
    VertexLocality,        // eta(v) touches something outside potato(v)
    TriangleLocality,      // eta(D) touches something outside its edge cores
    TerminalMismatch,      // (G, Z) condition fails
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string message;
    std::vector<Vertex> witnesses;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(ViolationKind kind) const;
    std::string summary() const;
};

struct ValidationOptions {
    /// Accept |E(H)| < 2.
    bool relaxed = false;
};

ValidationReport validate_strip_structure(const Graph& g, const PatternGraph& h, const EtaMap& eta,
                                          ValidationOptions options = {});
ValidationReport validate_elementary(const Graph& g, const PatternGraph& h, const EtaMap& eta,
                                     ValidationOptions options = {});
/// Full extended strip decomposition check; with terminals also checks the
/// (G, Z) condition.
ValidationReport validate_esd(const Graph& g, const PatternGraph& h, const EtaMap& eta,
                              const std::optional<VertexSet>& terminals, ValidationOptions options = {});
ValidationReport validate_esd(const ExtendedStripDecomposition& esd, ValidationOptions options = {});

// ---------------------------------------------------------------------------
// Rungs, frames and tameness

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RungLimits {
    std::size_t max_partial_paths = 1'000'000;
};

/// All e-rungs, each listed from the eta(e, u) end to the eta(e, v) end where
/// (u, v) are the edge's stored ends. Throws CapExceeded past the budget.
std::vector<std::vector<Vertex>> e_rungs(const ExtendedStripDecomposition& esd, PatternEdgeId e,
                                         RungLimits limits = {});

/// Vertices of eta(e) on no e-rung.
VertexSet tilde_eta(const ExtendedStripDecomposition& esd, PatternEdgeId e, RungLimits limits = {});

/// Degree-one vertices of H.
std::vector<PatternVertex> degree_one_vertices(const PatternGraph& h);

bool is_frame(const PatternGraph& h, const std::vector<PatternVertex>& w);

enum class Verdict { Yes, No, Indeterminate };

struct TamenessReport {
    Verdict verdict = Verdict::Yes;
    std::vector<std::string> reasons;
};

const char* to_string(Verdict v);

TamenessReport check_semi_tame(const ExtendedStripDecomposition& esd, RungLimits limits = {});
TamenessReport check_tame(const ExtendedStripDecomposition& esd, RungLimits limits = {});

// ---------------------------------------------------------------------------
// Atoms and particles

enum class AtomKind { Vertex, Edge, Triangle };

struct Atom {
    AtomKind kind;
    /// Pattern vertex, edge id or triangle index depending on kind.
    std::int32_t feature;
    VertexSet vertices;
};

std::vector<Atom> atoms(const ExtendedStripDecomposition& esd);
VertexSet potato(const ExtendedStripDecomposition& esd, PatternVertex v);
VertexSet boundary(const ExtendedStripDecomposition& esd, const Atom& atom);

/// ceil(n / (10 * delta)).
std::size_t atom_size_bound(std::size_t n, std::size_t delta);
std::size_t largest_atom(const ExtendedStripDecomposition& esd);

enum class ParticleKind {
    Vertex,        // A_v
    EdgeInterior,  // A_uv^perp
    Triangle,      // A_uvw
    EdgeEndU,      // A_uv^u, u the edge's first stored end
    EdgeEndV,      // A_uv^v
    EdgeFull,      // A_uv^uv
};

const char* to_string(ParticleKind kind);

struct ParticleKey {
    ParticleKind kind;
    std::int32_t feature;

    auto operator<=>(const ParticleKey&) const = default;
};

struct Particle {
    ParticleKey key;
    VertexSet vertices;
};

/// Every particle: vertices, then per edge (interior, end u, end v, full),
/// then triangles.
std::vector<Particle> particles(const ExtendedStripDecomposition& esd);
VertexSet particle_vertices(const ExtendedStripDecomposition& esd, ParticleKey key);

// ---------------------------------------------------------------------------
// Restriction

struct RestrictedEsd {
    ExtendedStripDecomposition esd;
    /// Host id in the restricted decomposition -> host id in the original.
    std::vector<Vertex> to_parent;
};

class InvariantBreach : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Decomposition of G - removed by deleting removed from every eta set and
/// relabelling host ids in increasing order. The terminal set is dropped if
/// any terminal is removed. Throws InvariantBreach if re-validation fails.
RestrictedEsd restrict_esd(const ExtendedStripDecomposition& esd, const VertexSet& removed,
                           ValidationOptions options = {.relaxed = true});

}  // namespace stripmis
