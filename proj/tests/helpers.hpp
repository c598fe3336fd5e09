#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pebble/configuration.hpp"
#include "pebble/graph.hpp"
#include "pebble/rng.hpp"

namespace pebble::testing {

/// Labeled tree from a Prufer sequence (values in [0, n)); n >= 2,
/// sequence length n-2.
Graph tree_from_prufer(const std::vector<std::uint32_t>& seq, std::uint32_t n);

/// AHU canonical encoding of an unrooted tree (rooted at its center), equal
/// strings iff isomorphic.
std::string ahu_canonical(const Graph& g);

/// All non-isomorphic trees on n vertices (one labeled representative each),
/// by deduplicating every Prufer sequence. Counts for n = 1..7:
/// 1, 1, 1, 2, 3, 6, 11.
std::vector<Graph> all_trees(std::uint32_t n);

/// Uniform random labeled tree on n vertices.
Graph random_tree(std::uint32_t n, SplitMix64& rng);

/// Random configuration of t pebbles (dependent model).
Configuration random_configuration(std::uint32_t n, std::uint64_t t, SplitMix64& rng);

}  // namespace pebble::testing
