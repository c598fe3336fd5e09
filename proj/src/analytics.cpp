#include "pebble/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace pebble {

namespace {

constexpr std::uint64_t kExactModeLimit = 200;  // n + t threshold for rationals

mpz_class binom(std::uint64_t a, std::uint64_t b) {
  mpz_class r;
  if (b > a) return r;  // 0
  mpz_bin_uiui(r.get_mpz_t(), a, b);
  return r;
}

double log_choose(double a, double b) {
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

mpq_class ratio(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

std::uint32_t wick_length_for_epsilon(std::uint64_t n, double epsilon) {
  if (n < 1) throw std::invalid_argument("wick length needs n >= 1");
  const double raw = (1.0 - 2.0 * epsilon) * std::log2(static_cast<double>(n));
  auto m = static_cast<std::int64_t>(std::llround(raw));
  if (m < 1) m = 1;
  if (m > static_cast<std::int64_t>(n)) m = static_cast<std::int64_t>(n);
  return static_cast<std::uint32_t>(m);
}

ModelParams ModelParams::upper_regime(std::uint64_t n, double epsilon, double omega) {
  ModelParams p;
  p.n = n;
  p.epsilon = epsilon;
  p.omega = omega;
  p.m = wick_length_for_epsilon(n, epsilon);
  p.t = static_cast<std::uint64_t>(
      std::llround(omega * std::pow(static_cast<double>(n), 1.0 - epsilon)));
  p.validate();
  return p;
}

ModelParams ModelParams::lower_regime(std::uint64_t n, double epsilon, double omega) {
  ModelParams p;
  p.n = n;
  p.epsilon = epsilon;
  p.omega = omega;
  p.m = wick_length_for_epsilon(n, epsilon);
  p.t = static_cast<std::uint64_t>(
      std::llround(std::pow(static_cast<double>(n), 1.0 - epsilon) / omega));
  p.validate();
  return p;
}

void ModelParams::validate() const {
  if (n < 1) throw std::invalid_argument("model params need n >= 1");
  if (!(epsilon >= 0.0 && epsilon < 0.5))
    throw std::invalid_argument("epsilon must lie in [0, 1/2)");
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  if (m < 1 || m > n) throw std::invalid_argument("wick length must lie in [1, n]");
}

mpq_class expected_occupancy(std::uint64_t n, std::uint64_t t) {
  if (n < 1) throw std::invalid_argument("expected_occupancy needs n >= 1");
  return ratio(mpz_class(static_cast<unsigned long>(t)),
               mpz_class(static_cast<unsigned long>(n)));
}

mpq_class occupancy_pmf_exact(std::uint64_t n, std::uint64_t t, std::uint64_t i) {
  if (n < 1) throw std::invalid_argument("occupancy pmf needs n >= 1");
  if (i > t) return mpq_class(0);
  if (n == 1) return mpq_class(i == t ? 1 : 0);
  return ratio(binom(n + t - i - 2, t - i), binom(n + t - 1, t));
}

double occupancy_pmf(std::uint64_t n, std::uint64_t t, std::uint64_t i) {
  if (n < 1) throw std::invalid_argument("occupancy pmf needs n >= 1");
  if (i > t) return 0.0;
  if (n == 1) return i == t ? 1.0 : 0.0;
  if (n + t <= kExactModeLimit) return occupancy_pmf_exact(n, t, i).get_d();
  const double a = static_cast<double>(n) + static_cast<double>(t);
  return std::exp(log_choose(a - static_cast<double>(i) - 2.0,
                             static_cast<double>(t - i)) -
                  log_choose(a - 1.0, static_cast<double>(t)));
}

std::pair<mpq_class, mpq_class> occupancy_bounds_exact(std::uint64_t n, std::uint64_t t,
                                                       std::uint64_t i) {
  if (n < 2) throw std::invalid_argument("occupancy bounds need n >= 2");
  if (i < 1 || i > t) throw std::invalid_argument("occupancy bounds need 1 <= i <= t");
  mpq_class lower = ratio(mpz_class(static_cast<unsigned long>(n - 1)),
                          mpz_class(static_cast<unsigned long>(n + t - 1)));
  const mpq_class lower_factor = ratio(mpz_class(static_cast<unsigned long>(t - i)),
                                       mpz_class(static_cast<unsigned long>(n + t - i)));
  const mpq_class upper_factor = ratio(mpz_class(static_cast<unsigned long>(t)),
                                       mpz_class(static_cast<unsigned long>(n)));
  mpq_class upper = 1;
  for (std::uint64_t k = 0; k < i; ++k) {
    lower *= lower_factor;
    upper *= upper_factor;
  }
  return {lower, upper};
}

OccupancyBounds occupancy_bounds(std::uint64_t n, std::uint64_t t, std::uint64_t i) {
  if (n < 2) throw std::invalid_argument("occupancy bounds need n >= 2");
  if (i < 1 || i > t) throw std::invalid_argument("occupancy bounds need 1 <= i <= t");
  const double nd = static_cast<double>(n), td = static_cast<double>(t),
               id = static_cast<double>(i);
  OccupancyBounds b;
  b.lower = (nd - 1.0) / (nd + td - 1.0) * std::pow((td - id) / (nd + td - id), id);
  b.upper = std::pow(td / nd, id);
  return b;
}

SparkPairMoments expected_spark_pairs(const ModelParams& p) {
  p.validate();
  SparkPairMoments out;
  const double sparks = static_cast<double>(p.n - p.m);
  out.asymptotic = p.omega * p.omega *
                   std::pow(static_cast<double>(p.n), 1.0 - 2.0 * p.epsilon);
  if (p.t < 2) return out;  // no vertex can hold a pair
  const OccupancyBounds b = occupancy_bounds(p.n, p.t, 2);
  out.lower = sparks * b.lower;
  out.upper = sparks * b.upper;
  out.exact = sparks * occupancy_pmf(p.n, p.t, 2);
  return out;
}

mpq_class expected_spark_pairs_exact(std::uint64_t n, std::uint64_t t, std::uint32_t m) {
  if (m < 1 || m > n) throw std::invalid_argument("wick length must lie in [1, n]");
  return mpq_class(static_cast<unsigned long>(n - m), 1u) * occupancy_pmf_exact(n, t, 2);
}

double chebyshev_failure_bound_from_mean(double expected_pairs) {
  if (!(expected_pairs > 0.0))
    throw std::invalid_argument("Chebyshev bound undefined for E[X] = 0");
  return 4.0 / expected_pairs;
}

double chebyshev_failure_bound(const ModelParams& p) {
  return chebyshev_failure_bound_from_mean(expected_spark_pairs(p).exact);
}

AccumulationBounds expected_accumulation_bound(const ModelParams& p) {
  p.validate();
  const double scale = p.omega * std::pow(static_cast<double>(p.n), p.epsilon);
  if (!(scale > 2.0))
    throw std::invalid_argument("accumulation bound needs omega * n^epsilon > 2 "
                                "(geometric series margin)");
  const double x = 1.0 / scale;
  const double sparks = static_cast<double>(p.n - p.m);
  AccumulationBounds out;
  // sum_{k>=0} (k+1) x^k = 1/(1-x)^2
  out.en1a = sparks * x * x / ((1.0 - x) * (1.0 - x));
  out.en1b = 2.0 * sparks * x * x;
  out.en1c = 2.0 * std::pow(static_cast<double>(p.n), 1.0 - 2.0 * p.epsilon) /
             (p.omega * p.omega);
  double exact = 0.0;
  for (std::uint64_t i = 2; i <= p.t; ++i) {
    const double term = static_cast<double>(i / 2) * occupancy_pmf(p.n, p.t, i);
    exact += term;
    if (i > 8 && term < exact * 1e-16) break;  // geometric tail in the t << n regime
  }
  out.exact = sparks * exact;
  return out;
}

mpq_class expected_accumulation_exact(std::uint64_t n, std::uint64_t t, std::uint32_t m) {
  if (m < 1 || m > n) throw std::invalid_argument("wick length must lie in [1, n]");
  if (t > 100000) throw std::invalid_argument("exact accumulation is for small t");
  mpq_class sum = 0;
  for (std::uint64_t i = 2; i <= t; ++i)
    sum += mpq_class(static_cast<unsigned long>(i / 2), 1u) * occupancy_pmf_exact(n, t, i);
  return mpq_class(static_cast<unsigned long>(n - m), 1u) * sum;
}

CertificateBound expected_certificate_bound(const ModelParams& p) {
  p.validate();
  CertificateBound out;
  out.expectation_bound =
      2.0 / (std::pow(static_cast<double>(p.n), p.epsilon) * p.omega) +
      4.0 / (p.omega * p.omega);
  out.markov_solvable_bound = std::min(1.0, out.expectation_bound);
  return out;
}

mpq_class expected_certificate_exact(std::uint64_t n, std::uint64_t t, std::uint32_t m) {
  if (m < 1 || m > n) throw std::invalid_argument("wick length must lie in [1, n]");
  // E[Y] = (t/n) * sum_{k=0}^{m-1} 2^-k + E[A] / 2^(m-1), by Eq. (0) and
  // exchangeability of the C(v) marginals.
  const mpz_class half_pow = mpz_class(1) << (m - 1);
  mpq_class wick_weight = ratio(2 * half_pow - 1, half_pow);  // 2 - 2^(1-m)
  mpq_class out = expected_occupancy(n, t) * wick_weight;
  out += expected_accumulation_exact(n, t, m) / mpq_class(half_pow);
  out.canonicalize();
  return out;
}

}  // namespace pebble
