#pragma once

#include <iosfwd>
#include <string>

#include "coreflow/graph.hpp"

namespace coreflow {

/// Text edge-list format: one "u v" pair per line, whitespace separated,
/// lines starting with '#' ignored. Node count is max index + 1.
/// Malformed lines, negative indices and self-loops raise ParseError with
/// the offending line number.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);

/// Writes edges as "u v" with u < v, ascending, newline-terminated.
/// load(save(g)) reproduces g exactly.
void write_edge_list(const Graph& g, std::ostream& out);
void save_edge_list(const Graph& g, const std::string& path);

} // namespace coreflow
