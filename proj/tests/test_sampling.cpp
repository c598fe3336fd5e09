#include "doctest.h"

#include <cmath>
#include <map>
#include <vector>

#include "pebble/analytics.hpp"
#include "pebble/sampling.hpp"
#include "pebble/stats.hpp"

using namespace pebble;

namespace {

// Independent binomial oracle: Pascal recursion, no library calls.
std::uint64_t pascal_choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::vector<std::uint64_t> row(n + 1, 0);
  row[0] = 1;
  for (std::uint64_t i = 1; i <= n; ++i)
    for (std::uint64_t j = std::min(i, k); j > 0; --j) row[j] += row[j - 1];
  return row[k];
}

// Ranks every configuration of (n, t) for chi-square cell assignment.
std::map<std::vector<std::uint64_t>, std::size_t> rank_configurations(std::uint32_t n,
                                                                      std::uint64_t t) {
  std::map<std::vector<std::uint64_t>, std::size_t> cells;
  for_each_configuration(n, t, [&](std::span<const std::uint64_t> c) {
    const std::size_t next = cells.size();
    cells.emplace(std::vector<std::uint64_t>(c.begin(), c.end()), next);
  });
  return cells;
}

// Chi-square uniformity check over all configurations with fixed seed.
void check_dependent_uniform(std::uint32_t n, std::uint64_t t, std::uint64_t samples,
                             std::uint64_t seed) {
  const auto cells = rank_configurations(n, t);
  std::vector<std::uint64_t> observed(cells.size(), 0);
  std::vector<std::uint64_t> key(n);
  SamplerScratch scratch;
  for (std::uint64_t trial = 0; trial < samples; ++trial) {
    SplitMix64 rng(SeedPolicy{seed, trial});
    sample_dependent_into(n, t, rng, scratch, key);
    ++observed[cells.at(key)];
  }
  const std::vector<double> expected(cells.size(), 1.0 / static_cast<double>(cells.size()));
  const ChiSquareResult r = chi_square_gof(observed, expected);
  INFO("n=" << n << " t=" << t << " stat=" << r.statistic << " p=" << r.p_value);
  CHECK(r.p_value >= 1e-3);
}

}  // namespace

TEST_CASE("count_configurations matches enumeration and Pascal") {
  CHECK(count_configurations(4, 2) == 10);  // C(5,2)
  CHECK(count_configurations(1, 9) == 1);
  CHECK(count_configurations(5, 0) == 1);
  for (std::uint32_t n = 1; n <= 6; ++n) {
    for (std::uint64_t t = 0; t <= 6; ++t) {
      std::uint64_t enumerated = 0;
      for_each_configuration(n, t, [&](std::span<const std::uint64_t> c) {
        std::uint64_t sum = 0;
        for (std::uint64_t v : c) sum += v;
        REQUIRE(sum == t);
        ++enumerated;
      });
      CHECK(count_configurations(n, t) == enumerated);
      CHECK(count_configurations(n, t) == pascal_choose(n + t - 1, t));
    }
  }
  CHECK(count_configurations(3, 3) == 10);
}

TEST_CASE("dependent sampler trivial cases") {
  CHECK(sample_dependent(1, 5, {1, 0})[0] == 5);
  CHECK(sample_dependent(3, 0, {2, 0}).total() == 0);
  // n=2, t=1: both configurations near probability 1/2.
  std::uint64_t first = 0;
  const std::uint64_t reps = 20000;
  for (std::uint64_t i = 0; i < reps; ++i)
    first += sample_dependent(2, 1, {11, i})[0];
  CHECK(first > reps / 2 - 400);
  CHECK(first < reps / 2 + 400);
}

TEST_CASE("dependent sampler totals are exact across branches") {
  SamplerScratch scratch;
  // (n, t) pairs hitting Fisher-Yates (t < n-1), the boundary, and Floyd.
  const std::pair<std::uint32_t, std::uint64_t> points[] = {
      {1, 0}, {1, 7}, {2, 0}, {5, 3}, {40, 10}, {40, 38}, {40, 39}, {40, 40},
      {7, 2000}, {3, 1000000}};
  for (auto [n, t] : points) {
    std::vector<std::uint64_t> counts(n);
    SplitMix64 rng(SeedPolicy{505, t});
    sample_dependent_into(n, t, rng, scratch, counts);
    std::uint64_t sum = 0;
    for (std::uint64_t c : counts) sum += c;
    CHECK(sum == t);
  }
}

TEST_CASE("dependent sampler is uniform over all configurations (chi-square)") {
  // n=3,t=2 is the spec example; the others exercise both sampling branches.
  check_dependent_uniform(3, 2, 100000, 101);   // 6 cells, Floyd
  check_dependent_uniform(8, 2, 100000, 103);   // 36 cells, Fisher-Yates
  check_dependent_uniform(3, 8, 100000, 104);   // 45 cells, Floyd
  check_dependent_uniform(6, 2, 100000, 105);   // 21 cells, Fisher-Yates
}

TEST_CASE("dependent sampler is uniform for every small (n,t) with <= 50 cells") {
  for (std::uint32_t n = 2; n <= 8; ++n) {
    for (std::uint64_t t = 1; t <= 8; ++t) {
      if (count_configurations(n, t) > 50) continue;
      check_dependent_uniform(n, t, 100000, 1000 + 10 * n + t);
    }
  }
}

TEST_CASE("independent sampler laws") {
  CHECK(sample_independent(1, 3, {3, 0})[0] == 3);
  // n=2, t=2: Pr[(1,1)] = 1/2, Pr[(2,0)] = Pr[(0,2)] = 1/4 (4 labeled placements).
  std::uint64_t split = 0, left = 0, right = 0;
  const std::uint64_t reps = 40000;
  for (std::uint64_t i = 0; i < reps; ++i) {
    const Configuration c = sample_independent(2, 2, {21, i});
    if (c[0] == 1) ++split;
    else if (c[0] == 2) ++left;
    else ++right;
  }
  CHECK(std::abs((double)split - reps * 0.5) < 4 * std::sqrt(reps * 0.25));
  CHECK(std::abs((double)left - reps * 0.25) < 4 * std::sqrt(reps * 0.1875));
  CHECK(std::abs((double)right - reps * 0.25) < 4 * std::sqrt(reps * 0.1875));
}

TEST_CASE("dependent and independent models coincide at t = 1") {
  // Single pebble: both models place it uniformly.
  const std::uint64_t reps = 20000;
  std::uint64_t dep_first = 0, ind_first = 0;
  for (std::uint64_t i = 0; i < reps; ++i) {
    dep_first += sample_dependent(2, 1, {31, i})[0];
    ind_first += sample_independent(2, 1, {32, i})[0];
  }
  CHECK(std::abs((double)dep_first - reps * 0.5) < 4 * std::sqrt(reps * 0.25));
  CHECK(std::abs((double)ind_first - reps * 0.5) < 4 * std::sqrt(reps * 0.25));
}

TEST_CASE("samplers are pure functions of the seed policy") {
  const Configuration a = sample_dependent(50, 120, {99, 3});
  const Configuration b = sample_dependent(50, 120, {99, 3});
  CHECK(a == b);
  const Configuration c = sample_dependent(50, 120, {99, 4});
  CHECK(!(a == c));
  CHECK(sample_independent(9, 30, {1, 2}) == sample_independent(9, 30, {1, 2}));
}

TEST_CASE("empirical occupancy marginal matches the pmf within 4 standard errors") {
  // Arbitrary fixed vertex (exchangeability): use v = 2 of n = 6.
  const std::uint32_t n = 6;
  const std::uint64_t t = 8;
  const std::uint64_t samples = 100000;
  std::vector<std::uint64_t> hist(t + 1, 0);
  SamplerScratch scratch;
  std::vector<std::uint64_t> counts(n);
  for (std::uint64_t trial = 0; trial < samples; ++trial) {
    SplitMix64 rng(SeedPolicy{606, trial});
    sample_dependent_into(n, t, rng, scratch, counts);
    ++hist[counts[2]];
  }
  for (std::uint64_t i = 0; i <= t; ++i) {
    const double p = occupancy_pmf(n, t, i);
    if (p * static_cast<double>(samples) < 10.0) continue;  // skip sparse tail cells
    const double freq = static_cast<double>(hist[i]) / static_cast<double>(samples);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    INFO("i=" << i << " freq=" << freq << " pmf=" << p);
    CHECK(std::abs(freq - p) <= 4.0 * se);
  }
}
