#pragma once

#include <cstdint>
#include <utility>

#include <gmpxx.h>

namespace pebble {

/// Wick length the threshold theorem pairs with epsilon:
/// max(1, round((1-2*epsilon)*lg n)), clamped to n.
std::uint32_t wick_length_for_epsilon(std::uint64_t n, double epsilon);

/// One parameter point of the threshold analysis. epsilon and omega are
/// concrete numbers here; sweeps over n re-evaluate them.
struct ModelParams {
  std::uint64_t n = 0;
  std::uint64_t t = 0;
  double epsilon = 0.0;
  double omega = 1.0;
  std::uint32_t m = 1;

  /// t = round(omega * n^(1-epsilon)), the almost-surely-solvable regime.
  static ModelParams upper_regime(std::uint64_t n, double epsilon, double omega);
  /// t = round(n^(1-epsilon) / omega), the almost-surely-unsolvable regime.
  static ModelParams lower_regime(std::uint64_t n, double epsilon, double omega);

  void validate() const;  // epsilon in [0, 1/2), omega > 0, 1 <= m <= n
};

/// E[C(v)] = t/n, exact.
mpq_class expected_occupancy(std::uint64_t n, std::uint64_t t);

/// Pr[C(v) = i] = C(n+t-i-2, t-i) / C(n+t-1, t). Exact rationals are used for
/// n + t <= 200, log-gamma evaluation beyond (relative error ~1e-14). For
/// n = 1 the distribution is the point mass at t. i > t returns 0.
double occupancy_pmf(std::uint64_t n, std::uint64_t t, std::uint64_t i);
mpq_class occupancy_pmf_exact(std::uint64_t n, std::uint64_t t, std::uint64_t i);

/// The sandwich of Eq. (1):
/// ((n-1)/(n+t-1)) ((t-i)/(n+t-i))^i <= Pr[C(v)=i] <= (t/n)^i, for 1 <= i <= t.
struct OccupancyBounds {
  double lower = 0.0;
  double upper = 0.0;
};
OccupancyBounds occupancy_bounds(std::uint64_t n, std::uint64_t t, std::uint64_t i);
std::pair<mpq_class, mpq_class> occupancy_bounds_exact(std::uint64_t n, std::uint64_t t,
                                                       std::uint64_t i);

/// Moments of X = |S ∩ L_2|, the sparks holding exactly two pebbles.
/// exact = |S| * pmf(n,t,2); lower/upper plug i=2 into the sandwich;
/// asymptotic = omega^2 * n^(1-2*epsilon).
struct SparkPairMoments {
  double lower = 0.0;
  double upper = 0.0;
  double asymptotic = 0.0;
  double exact = 0.0;
};
SparkPairMoments expected_spark_pairs(const ModelParams& p);
mpq_class expected_spark_pairs_exact(std::uint64_t n, std::uint64_t t, std::uint32_t m);

/// Chebyshev bound on Pr[X < n^(1-2*epsilon)]: 4/E[X], with E[X] the exact
/// |S|*pmf value (sigma_X^2 <= E[X]). E[X] = 0 is an error.
double chebyshev_failure_bound(const ModelParams& p);
double chebyshev_failure_bound_from_mean(double expected_pairs);

/// The chain of upper bounds on E[A] (pebbles accumulable at the center from
/// sparks): en1a = |S| x^2 / (1-x)^2 with x = 1/(omega n^epsilon) via the
/// geometric series sum (k+1) x^k, en1b replaces the series by 2, en1c drops
/// |S|/n^(2 epsilon) to n^(1-2 epsilon). exact = |S| sum_i floor(i/2) pmf(i).
/// Requires omega * n^epsilon > 2 (series margin).
struct AccumulationBounds {
  double en1a = 0.0;
  double en1b = 0.0;
  double en1c = 0.0;
  double exact = 0.0;
};
AccumulationBounds expected_accumulation_bound(const ModelParams& p);
mpq_class expected_accumulation_exact(std::uint64_t n, std::uint64_t t, std::uint32_t m);

/// E[Y] < 2/(n^epsilon omega) + 4/omega^2 in the lower regime, and Markov's
/// Pr[Y >= 1] <= E[Y] (capped at 1 for reporting).
struct CertificateBound {
  double expectation_bound = 0.0;
  double markov_solvable_bound = 0.0;
};
CertificateBound expected_certificate_bound(const ModelParams& p);

/// Exact E[Y] = (t/n)(2 - 2^(1-m)) + E[A]/2^(m-1), by exchangeability and
/// linearity. Small t only (the pmf sum is over i <= t).
mpq_class expected_certificate_exact(std::uint64_t n, std::uint64_t t, std::uint32_t m);

}  // namespace pebble
