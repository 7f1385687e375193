#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "stripmis/graph.hpp"

namespace stripmis {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads the line-oriented graph format:
///
///   c <comment>
///   p <n> <m>
///   v <id> <weight>      (optional per vertex, weight defaults to 1)
///   e <u> <v>            (0-indexed, each undirected edge once)
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

/// Writes `p`, then one `v` line per vertex, then `e u v` with u < v in
/// lexicographic order. Output is byte-stable for equal graphs.
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

}  // namespace stripmis
