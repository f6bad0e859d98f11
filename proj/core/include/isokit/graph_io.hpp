#ifndef ISOKIT_GRAPH_IO_HPP
#define ISOKIT_GRAPH_IO_HPP

#include <iosfwd>
#include <string>

#include "isokit/graph.hpp"

namespace isokit {

// Text format, one graph per file:
//   g <n> <m>
//   e <u> <v>          (m lines, 0-based endpoints)
//   c <v> <color>      (optional per-vertex color strings)
// Blank lines and lines starting with '#' are ignored. The writer emits
// edges sorted lexicographically so write/read round-trips bit-exactly.
ColoredGraph read_graph(std::istream& in, ColorTable* table = nullptr);
ColoredGraph read_graph_file(const std::string& path, ColorTable* table = nullptr);
void write_graph(std::ostream& out, const ColoredGraph& g, const ColorTable* table = nullptr);
std::string graph_to_string(const ColoredGraph& g, const ColorTable* table = nullptr);

} // namespace isokit

#endif
