#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pebble/analytics.hpp"
#include "pebble/sampling.hpp"
#include "pebble/solvers.hpp"

using namespace pebble;

namespace {

// Enumeration oracle: exact mean of fn over all configurations of (n, t).
template <typename Fn>
mpq_class enumeration_mean(std::uint32_t n, std::uint64_t t, Fn&& fn) {
  mpq_class sum = 0;
  std::uint64_t cells = 0;
  for_each_configuration(n, t, [&](std::span<const std::uint64_t> c) {
    sum += fn(c);
    ++cells;
  });
  sum /= mpq_class(static_cast<unsigned long>(cells), 1u);
  sum.canonicalize();
  return sum;
}

}  // namespace

TEST_CASE("expected occupancy") {
  CHECK(expected_occupancy(10, 5) == mpq_class(1, 2));
  CHECK(expected_occupancy(1, 7) == 7);
  // consistency with the pmf: sum_i i * pmf(3,2,i) = 2/3
  mpq_class sum = 0;
  for (std::uint64_t i = 0; i <= 2; ++i)
    sum += mpq_class(static_cast<unsigned long>(i), 1u) * occupancy_pmf_exact(3, 2, i);
  sum.canonicalize();
  CHECK(sum == expected_occupancy(3, 2));
  CHECK(sum == mpq_class(2, 3));
}

TEST_CASE("occupancy pmf equals enumeration frequencies") {
  for (std::uint32_t n = 1; n <= 6; ++n) {
    for (std::uint64_t t = 0; t <= 6; ++t) {
      std::vector<std::uint64_t> level_counts(t + 1, 0);
      std::uint64_t total = 0;
      for_each_configuration(n, t, [&](std::span<const std::uint64_t> c) {
        ++level_counts[c[0]];  // any fixed vertex; exchangeable
        ++total;
      });
      for (std::uint64_t i = 0; i <= t; ++i) {
        mpq_class freq(static_cast<unsigned long>(level_counts[i]),
                       static_cast<unsigned long>(total));
        freq.canonicalize();
        CHECK(occupancy_pmf_exact(n, t, i) == freq);
      }
    }
  }
}

TEST_CASE("occupancy pmf spot values") {
  CHECK(occupancy_pmf_exact(3, 2, 2) == mpq_class(1, 6));
  CHECK(occupancy_pmf_exact(2, 1, 1) == mpq_class(1, 2));
  CHECK(occupancy_pmf_exact(5, 0, 0) == 1);
  CHECK(occupancy_pmf_exact(4, 3, 9) == 0);  // i > t
  CHECK(occupancy_pmf_exact(1, 4, 4) == 1);  // n = 1 point mass
  CHECK(occupancy_pmf_exact(1, 4, 3) == 0);
  CHECK(occupancy_pmf(3, 2, 2) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("log-gamma pmf mode tracks exact rationals") {
  // n + t = 220 exceeds the exact-mode cutoff, so occupancy_pmf takes the
  // log-gamma path; the big-rational evaluation is the oracle.
  for (std::uint64_t i : {0ull, 1ull, 3ull, 17ull, 40ull}) {
    const double via_lgamma = occupancy_pmf(180, 40, i);
    const double via_exact = occupancy_pmf_exact(180, 40, i).get_d();
    CHECK(via_lgamma == doctest::Approx(via_exact).epsilon(1e-11));
  }
}

TEST_CASE("pmf sums to one and satisfies the sandwich (exact, n,t <= 30)") {
  for (std::uint64_t n = 2; n <= 30; ++n) {
    for (std::uint64_t t = 1; t <= 30; ++t) {
      mpq_class sum = 0;
      mpq_class mean = 0;
      for (std::uint64_t i = 0; i <= t; ++i) {
        const mpq_class p = occupancy_pmf_exact(n, t, i);
        sum += p;
        mean += mpq_class(static_cast<unsigned long>(i), 1u) * p;
        if (i >= 1) {
          const auto [lo, hi] = occupancy_bounds_exact(n, t, i);
          CHECK(lo <= p);
          CHECK(p <= hi);
        }
      }
      sum.canonicalize();
      mean.canonicalize();
      CHECK(sum == 1);
      CHECK(mean == expected_occupancy(n, t));
    }
  }
}

TEST_CASE("occupancy bounds spot values") {
  // (3,2,2): lower (2/4)*(0/3)^2 = 0, upper (2/3)^2 = 4/9.
  const auto [lo, hi] = occupancy_bounds_exact(3, 2, 2);
  CHECK(lo == 0);
  CHECK(hi == mpq_class(4, 9));
  // (2,1,1): upper = 1/2 is tight.
  const auto [lo2, hi2] = occupancy_bounds_exact(2, 1, 1);
  CHECK(hi2 == mpq_class(1, 2));
  CHECK(hi2 == occupancy_pmf_exact(2, 1, 1));
  CHECK(lo2 <= hi2);
  // i = t = n: upper = 1.
  const auto b = occupancy_bounds(4, 4, 4);
  CHECK(b.upper == doctest::Approx(1.0));
  CHECK_THROWS_AS(occupancy_bounds(3, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(occupancy_bounds(3, 2, 3), std::invalid_argument);
}

TEST_CASE("expected spark pairs: exact enumeration cross-check") {
  // n=6, m=2, t=3: E[X] = |S| * pmf(6,3,2) with X = #sparks holding exactly 2.
  const mpq_class expected = expected_spark_pairs_exact(6, 3, 2);
  const mpq_class enumerated = enumeration_mean(6, 3, [](std::span<const std::uint64_t> c) {
    std::uint64_t x = 0;
    for (std::uint32_t v = 2; v < 6; ++v) x += c[v] == 2;
    return mpq_class(static_cast<unsigned long>(x), 1u);
  });
  CHECK(expected == enumerated);
  CHECK(expected == mpq_class(4, 1) * occupancy_pmf_exact(6, 3, 2));
}

TEST_CASE("expected spark pairs: asymptotic and trivial cases") {
  // epsilon=0.25, omega=lg n=16, n=2^16: omega^2 n^{1/2} = 256 * 256.
  ModelParams p;
  p.n = 1ull << 16;
  p.t = 1;  // irrelevant to the asymptotic
  p.epsilon = 0.25;
  p.omega = 16.0;
  p.m = 8;
  CHECK(expected_spark_pairs(p).asymptotic == doctest::Approx(65536.0));
  CHECK(expected_spark_pairs(p).exact == 0.0);  // t < 2
  ModelParams zero = p;
  zero.t = 0;
  CHECK(expected_spark_pairs(zero).exact == 0.0);
  // sandwich holds for the exact value
  ModelParams real = ModelParams::upper_regime(1 << 12, 0.25, 4.0);
  const SparkPairMoments m = expected_spark_pairs(real);
  CHECK(m.lower <= m.exact);
  CHECK(m.exact <= m.upper);
}

TEST_CASE("Chebyshev failure bound") {
  CHECK(chebyshev_failure_bound_from_mean(400.0) == doctest::Approx(0.01));
  CHECK_THROWS_AS(chebyshev_failure_bound_from_mean(0.0), std::invalid_argument);
  // n=2^16, eps=0.25, omega=16: asymptotic E[X] = 65536 -> 4/65536.
  const ModelParams p = ModelParams::upper_regime(1ull << 16, 0.25, 16.0);
  const double asym = expected_spark_pairs(p).asymptotic;
  CHECK(4.0 / asym == doctest::Approx(6.103515625e-5));
  // exact-mean-based bound stays within a factor of the asymptotic one here
  const double bound = chebyshev_failure_bound(p);
  CHECK(bound > 0.0);
  CHECK(bound < 1e-3);
}

TEST_CASE("accumulation bounds: exact enumeration cross-check") {
  // n=6, m=2, t=3 over all 56 configurations.
  const mpq_class exact = expected_accumulation_exact(6, 3, 2);
  const mpq_class enumerated = enumeration_mean(6, 3, [](std::span<const std::uint64_t> c) {
    std::uint64_t a = 0;
    for (std::uint32_t v = 2; v < 6; ++v) a += c[v] / 2;
    return mpq_class(static_cast<unsigned long>(a), 1u);
  });
  CHECK(exact == enumerated);
  CHECK(expected_accumulation_exact(6, 1, 2) == 0);  // t <= 1
  CHECK(expected_accumulation_exact(6, 0, 2) == 0);
}

TEST_CASE("accumulation bound chain and divergence error") {
  // (en1c) example: omega=10, eps=0.25, n=2^16 -> 2*256/100 = 5.12.
  ModelParams p = ModelParams::lower_regime(1ull << 16, 0.25, 10.0);
  const AccumulationBounds b = expected_accumulation_bound(p);
  CHECK(b.en1c == doctest::Approx(5.12));
  CHECK(b.exact <= b.en1a * (1 + 1e-9));
  CHECK(b.en1a <= b.en1b);
  CHECK(b.en1b <= b.en1c);
  // chain dominance across a sweep with omega n^eps >= 3.5
  for (double omega : {4.0, 8.0, 32.0}) {
    for (std::uint64_t n : {1ull << 10, 1ull << 14}) {
      for (double eps : {0.0, 0.1, 0.25}) {
        if (omega * std::pow((double)n, eps) < 3.5) continue;
        const ModelParams q = ModelParams::lower_regime(n, eps, omega);
        const AccumulationBounds c = expected_accumulation_bound(q);
        CHECK(c.exact <= c.en1a * (1 + 1e-9));
        CHECK(c.en1a <= c.en1b * (1 + 1e-12));
        CHECK(c.en1b <= c.en1c * (1 + 1e-12));
      }
    }
  }
  // omega * n^eps <= 2 is rejected
  ModelParams bad;
  bad.n = 16;
  bad.t = 8;
  bad.epsilon = 0.0;
  bad.omega = 1.5;
  bad.m = 4;
  CHECK_THROWS_AS(expected_accumulation_bound(bad), std::invalid_argument);
}

TEST_CASE("certificate bound closed form and exact enumeration") {
  // omega=100, eps=0: 2/100 + 4/10^4 = 0.0204 for any n.
  ModelParams p;
  p.n = 1000;
  p.t = 10;
  p.epsilon = 0.0;
  p.omega = 100.0;
  p.m = 10;
  CHECK(expected_certificate_bound(p).expectation_bound == doctest::Approx(0.0204));
  CHECK(expected_certificate_bound(p).markov_solvable_bound == doctest::Approx(0.0204));

  // exact E[Y] on n=6, m=2, t=2 equals the mean over all 21 configurations.
  const FuseSpec f{6, 2};
  const mpq_class enumerated = enumeration_mean(6, 2, [&](std::span<const std::uint64_t> c) {
    return fuse_certificate(f, Configuration(std::vector<std::uint64_t>(c.begin(), c.end())))
        .weight;
  });
  CHECK(expected_certificate_exact(6, 2, 2) == enumerated);
  CHECK(expected_certificate_exact(6, 0, 2) == 0);  // t = 0
}

TEST_CASE("wick length for epsilon") {
  CHECK(wick_length_for_epsilon(1ull << 16, 0.25) == 8);
  CHECK(wick_length_for_epsilon(1ull << 12, 0.1) == 10);   // round(9.6)
  CHECK(wick_length_for_epsilon(1ull << 12, 0.4) == 2);    // round(2.4)
  CHECK(wick_length_for_epsilon(2, 0.49) == 1);            // clamped to >= 1
  CHECK(wick_length_for_epsilon(2, 0.0) == 1);             // round(lg 2) = 1
}

TEST_CASE("model params validation") {
  CHECK_THROWS_AS(ModelParams::upper_regime(1 << 10, 0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::upper_regime(1 << 10, -0.1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::upper_regime(1 << 10, 0.25, 0.0), std::invalid_argument);
  const ModelParams up = ModelParams::upper_regime(1ull << 16, 0.25, 4.0);
  CHECK(up.t == 4 * 4096);
  CHECK(up.m == 8);
  const ModelParams down = ModelParams::lower_regime(1ull << 16, 0.25, 4.0);
  CHECK(down.t == 4096 / 4);
}
