#include "pebble/sampling.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace pebble {

namespace {

// Largest bar-position range handled with a bitmap (2^24 bits = 2 MiB); the
// flat set + sort path covers anything larger without materializing t.
constexpr std::uint64_t kBitmapRangeCap = 1ull << 24;

}  // namespace

mpz_class count_configurations(std::uint64_t n, std::uint64_t t) {
  if (n < 1) throw std::invalid_argument("count_configurations needs n >= 1");
  mpz_class result;
  mpz_bin_uiui(result.get_mpz_t(), n + t - 1, t);
  return result;
}

void SamplerScratch::clear_bitmap(std::uint64_t bits) {
  const std::uint64_t words = (bits + 63) / 64;
  if (bitmap_.size() < words) bitmap_.resize(words);
  std::fill_n(bitmap_.begin(), words, 0ull);
}

void SamplerScratch::reset_set(std::uint64_t expected) {
  std::uint64_t cap = 16;
  while (cap < expected * 2) cap <<= 1;
  if (slots_.size() != cap) slots_.assign(cap, 0);
  else std::fill(slots_.begin(), slots_.end(), 0ull);
  slot_mask_ = cap - 1;
}

bool SamplerScratch::insert_set(std::uint64_t key) {
  std::uint64_t idx = mix64(key) & slot_mask_;
  for (;;) {
    if (slots_[idx] == 0) {
      slots_[idx] = key;
      return true;
    }
    if (slots_[idx] == key) return false;
    idx = (idx + 1) & slot_mask_;
  }
}

namespace {

// Reads the sorted bar positions out of the scratch bitmap and emits the gap
// lengths: counts[0] = b_1 - 1, counts[i] = b_{i+1} - b_i - 1, and the final
// gap N - b_{n-1}. Positions are 1-based; bit p-1 marks position p.
void gaps_from_bitmap(const SamplerScratch& scratch, std::uint64_t range,
                      std::span<std::uint64_t> counts) {
  const auto words = scratch.bitmap_words();
  std::uint64_t prev = 0;
  std::size_t next = 0;
  const std::uint64_t word_count = (range + 63) / 64;
  for (std::uint64_t w = 0; w < word_count; ++w) {
    std::uint64_t bits = words[w];
    while (bits) {
      const std::uint64_t pos = w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits)) + 1;
      counts[next++] = pos - prev - 1;
      prev = pos;
      bits &= bits - 1;
    }
  }
  counts[next] = range - prev;
}

}  // namespace

void sample_dependent_into(std::uint32_t n, std::uint64_t t, SplitMix64& rng,
                           SamplerScratch& scratch, std::span<std::uint64_t> counts) {
  if (n < 1) throw std::invalid_argument("sampler needs n >= 1");
  if (t > kMaxPebbles) throw std::invalid_argument("pebble total exceeds 2^62");
  if (n == 1) {
    counts[0] = t;
    return;
  }
  const std::uint64_t bars = n - 1;          // distinct positions to choose
  const std::uint64_t range = n + t - 1;     // positions 1..range

  if (bars > range / 2) {
    // t < n-1: dense partial Fisher-Yates over the whole range (O(n) here).
    auto& pos = scratch.positions;
    if (pos.size() < range) pos.resize(range);
    std::iota(pos.begin(), pos.begin() + range, 1ull);
    scratch.clear_bitmap(range);
    for (std::uint64_t i = 0; i < bars; ++i) {
      const std::uint64_t j = i + rng.below(range - i);
      std::swap(pos[i], pos[j]);
      scratch.set_bit(pos[i] - 1);
    }
    gaps_from_bitmap(scratch, range, counts);
  } else if (range <= kBitmapRangeCap) {
    // Floyd's subset sampling with bitmap membership; the ordered scan of the
    // bitmap replaces a sort.
    scratch.clear_bitmap(range);
    for (std::uint64_t j = range - bars + 1; j <= range; ++j) {
      const std::uint64_t r = 1 + rng.below(j);
      if (scratch.test_bit(r - 1)) scratch.set_bit(j - 1);
      else scratch.set_bit(r - 1);
    }
    gaps_from_bitmap(scratch, range, counts);
  } else {
    // Huge t: Floyd with an open-addressing set, then sort the n-1 picks.
    scratch.reset_set(bars);
    auto& picks = scratch.selected;
    picks.clear();
    for (std::uint64_t j = range - bars + 1; j <= range; ++j) {
      const std::uint64_t r = 1 + rng.below(j);
      if (scratch.insert_set(r)) picks.push_back(r);
      else {
        scratch.insert_set(j);
        picks.push_back(j);
      }
    }
    std::sort(picks.begin(), picks.end());
    std::uint64_t prev = 0;
    for (std::uint64_t i = 0; i < bars; ++i) {
      counts[i] = picks[i] - prev - 1;
      prev = picks[i];
    }
    counts[n - 1] = range - prev;
  }
}

void sample_independent_into(std::uint32_t n, std::uint64_t t, SplitMix64& rng,
                             std::span<std::uint64_t> counts) {
  if (n < 1) throw std::invalid_argument("sampler needs n >= 1");
  if (t > kMaxPebbles) throw std::invalid_argument("pebble total exceeds 2^62");
  std::fill(counts.begin(), counts.end(), 0ull);
  for (std::uint64_t p = 0; p < t; ++p) ++counts[rng.below(n)];
}

Configuration sample_dependent(std::uint32_t n, std::uint64_t t, SeedPolicy seed) {
  SplitMix64 rng(seed);
  SamplerScratch scratch;
  std::vector<std::uint64_t> counts(n);
  sample_dependent_into(n, t, rng, scratch, counts);
  return Configuration(std::move(counts));
}

Configuration sample_independent(std::uint32_t n, std::uint64_t t, SeedPolicy seed) {
  SplitMix64 rng(seed);
  std::vector<std::uint64_t> counts(n);
  sample_independent_into(n, t, rng, counts);
  return Configuration(std::move(counts));
}

}  // namespace pebble
