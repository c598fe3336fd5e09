#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "pebble/configuration.hpp"
#include "pebble/graph.hpp"

namespace pebble {

struct OracleLimits {
  /// Visited-state cap; exceeding it raises BudgetExceeded. The oracle is a
  /// test fixture, not a production path.
  std::uint64_t max_states = 10'000'000;
};

/// Exhaustive pebbling search: true iff some sequence of steps (remove two
/// pebbles from a vertex, place one on a neighbor) puts a pebble on root.
/// Memoizes visited count vectors; every step removes a pebble, so the state
/// graph is acyclic and depth is bounded by t. Intended for small instances
/// (n <= 10, t <= 12); requires n <= 64 and t <= 255.
bool oracle_r_solvable(const Graph& g, const Configuration& c, std::uint32_t root,
                       const OracleLimits& limits = {});

struct SolveResult {
  std::uint32_t root = 0;
  bool solvable = false;
  std::uint64_t movable = 0;  // max pebbles deliverable to root
};

/// Exact max pebbles deliverable to root on a tree:
/// movable(v) = C(v) + sum over children of floor(movable(child)/2),
/// evaluated leaves-first toward root. Matches the exhaustive oracle on all
/// trees (moving pebbles away from the root never helps on a tree).
SolveResult tree_movable(const Graph& g, const Configuration& c, std::uint32_t root);

/// Scratch arrays for the all-roots tree solver (one per worker thread).
struct TreeWorkspace {
  std::vector<std::uint64_t> down, up;
  void resize(std::uint32_t n) {
    down.resize(n);
    up.resize(n);
  }
};

/// r-solvability for every root in O(n) total, by rerooting: a downward pass
/// accumulates subtree pulls, an upward pass hands each child the parent-side
/// pull. Per-child contributions are floored before summation, so excluding a
/// child is a subtraction.
std::vector<bool> tree_solvable_all_roots(const Graph& g, const Configuration& c);

/// Hot-path variant: conjunction over all roots, raw counts, caller-owned
/// scratch; no allocation.
bool tree_all_roots_solvable(const Graph& g, std::span<const std::uint64_t> counts,
                             TreeWorkspace& ws);

/// The fuse weight certificate: A pebbles accumulable at the center from the
/// sparks, and Y = sum_{k=0}^{m-1} C(v_{k+1})/2^k + A/2^{m-1} held as an exact
/// rational (integer numerator over 2^{m-1}); Y >= 1 iff v_1-solvable.
struct FuseCertificate {
  std::uint64_t accumulable = 0;  // A = sum over sparks of floor(C(s)/2)
  mpq_class weight;               // Y, exact
  bool v1_solvable = false;       // Y >= 1
};

FuseCertificate fuse_certificate(const FuseSpec& f, const Configuration& c);

/// Solvable = r-solvable for every root. Trees use the O(n) all-roots solver;
/// small general graphs fall back to the oracle per root.
bool solvable(const Graph& g, const Configuration& c, const OracleLimits& limits = {});

/// Smallest t such that every configuration of t pebbles is solvable
/// (enumeration; intended for n <= 5). Universality is monotone in t by
/// pebble-addition monotonicity, so the first universal t is the answer.
std::uint64_t pebbling_number_exact(const Graph& g, const OracleLimits& limits = {});

/// Exact Pr[solvable] at pebble count t: (#solvable configurations) / C(n+t-1, t).
mpq_class exact_solvable_probability(const Graph& g, std::uint64_t t,
                                     const OracleLimits& limits = {});

}  // namespace pebble
