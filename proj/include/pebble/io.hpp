#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pebble/configuration.hpp"
#include "pebble/graph.hpp"

namespace pebble {

/// Edge-list text: first line "n m_edges", then one "u v" per line, 1-indexed.
std::string format_edge_list(const Graph& g);
Graph parse_edge_list(std::istream& in);

/// Configuration text: one line of "v:count" pairs, 1-indexed, zeros omitted.
/// t = 0 formats as an empty line.
std::string format_configuration(const Configuration& c);
Configuration parse_configuration(std::istream& in, std::uint32_t n);

/// Count expressions: plain decimal or "2^k".
std::uint64_t parse_count(const std::string& text);

/// Grid expressions: "2^a..2^b" (powers of two), a comma list, or one value.
std::vector<std::uint32_t> parse_n_grid(const std::string& text);

}  // namespace pebble
