#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pebble/configuration.hpp"
#include "pebble/rng.hpp"

namespace pebble {

/// Number of configurations of t pebbles on n vertices: C(n+t-1, t), exact.
mpz_class count_configurations(std::uint64_t n, std::uint64_t t);

/// Reusable buffers for the hot sampling path; sized lazily per (n, t).
class SamplerScratch {
 public:
  void clear_bitmap(std::uint64_t bits);
  void set_bit(std::uint64_t i) { bitmap_[i >> 6] |= 1ull << (i & 63); }
  bool test_bit(std::uint64_t i) const { return (bitmap_[i >> 6] >> (i & 63)) & 1; }

  std::vector<std::uint64_t> positions;  // identity permutation (Fisher-Yates)
  std::vector<std::uint64_t> selected;   // Floyd picks awaiting sort

  // Open-addressing membership set for Floyd picks when the position range is
  // too large for a bitmap. Keys are >= 1; 0 marks an empty slot.
  void reset_set(std::uint64_t expected);
  bool insert_set(std::uint64_t key);

  std::span<const std::uint64_t> bitmap_words() const { return bitmap_; }

 private:
  std::vector<std::uint64_t> bitmap_;
  std::vector<std::uint64_t> slots_;
  std::uint64_t slot_mask_ = 0;
};

/// Uniform draw from all C(n+t-1, t) configurations (the paper's dependent
/// model), via a uniform (n-1)-subset of bar positions in [1, n+t-1]. Writes
/// all n counts. O(n) time and memory for any t.
void sample_dependent_into(std::uint32_t n, std::uint64_t t, SplitMix64& rng,
                           SamplerScratch& scratch, std::span<std::uint64_t> counts);

/// Each pebble independently picks a uniform vertex; counts are
/// multinomial(t; 1/n,...,1/n). O(n + t).
void sample_independent_into(std::uint32_t n, std::uint64_t t, SplitMix64& rng,
                             std::span<std::uint64_t> counts);

Configuration sample_dependent(std::uint32_t n, std::uint64_t t, SeedPolicy seed);
Configuration sample_independent(std::uint32_t n, std::uint64_t t, SeedPolicy seed);

/// Visits every weak composition of t into n parts (every configuration) in
/// lexicographic order starting from (t, 0, ..., 0). fn receives the counts
/// span; it must not modify it.
template <typename Fn>
void for_each_configuration(std::uint32_t n, std::uint64_t t, Fn&& fn) {
  std::vector<std::uint64_t> c(n, 0);
  c[0] = t;
  const std::span<const std::uint64_t> view(c);
  for (;;) {
    fn(view);
    if (c[n - 1] == t) break;
    std::uint32_t k = n - 2;
    while (c[k] == 0) --k;
    const std::uint64_t tail = c[n - 1];
    c[n - 1] = 0;
    c[k] -= 1;
    c[k + 1] = tail + 1;  // cells between k and the end are all zero
  }
}

}  // namespace pebble
