#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "stripmis/esd.hpp"

namespace stripmis {

class EsdFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads a decomposition document (JSON):
///
///   { "pattern": { "vertices": [0, 1, ...], "edges": [[u, v, id], ...] },
///     "eta": { "edge": { "id": [...] }, "edge_end": { "id/endpoint": [...] },
///              "vertex": { "v": [...] }, "triangle": { "u,v,w": [...] } },
///     "terminals": [...] }
///
/// Pattern vertices must be 0..N-1 and edge ids 0..M-1, both listed in
/// order. Missing eta entries are empty. Unknown keys and unsorted lists are
/// rejected. The result is not validated against the host.
ExtendedStripDecomposition read_esd(std::istream& in, const Graph& host);
ExtendedStripDecomposition read_esd_file(const std::string& path, const Graph& host);

/// Writes every eta entry, including empty ones, with stable key order.
void write_esd(std::ostream& out, const ExtendedStripDecomposition& esd);
void write_esd_file(const std::string& path, const ExtendedStripDecomposition& esd);

}  // namespace stripmis
