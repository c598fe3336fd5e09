#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pebble {

/// Largest supported pebble total. Keeps every intermediate sum in the tree
/// solvers inside uint64 (movable values never exceed t, and t + t/2 < 2^63).
inline constexpr std::uint64_t kMaxPebbles = 1ull << 62;

/// A multiset of pebbles on vertices 0..n-1, stored as per-vertex counts with
/// the total cached. Total is recomputed and bounds-checked on construction.
class Configuration {
 public:
  explicit Configuration(std::vector<std::uint64_t> counts);

  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(counts_.size()); }
  std::uint64_t total() const { return total_; }
  std::uint64_t operator[](std::uint32_t v) const { return counts_[v]; }
  std::span<const std::uint64_t> counts() const { return counts_; }

  bool operator==(const Configuration& other) const { return counts_ == other.counts_; }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

}  // namespace pebble
