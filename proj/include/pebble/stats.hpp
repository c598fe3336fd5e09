#pragma once

#include <cstdint>
#include <span>

namespace pebble {

inline constexpr double kZ95 = 1.959963984540054;    // two-sided 95%
inline constexpr double kZ999 = 3.2905267314918945;  // two-sided 99.9%

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = kZ95);

/// Upper tail of the chi-square distribution, Q(dof/2, x/2) via the
/// regularized incomplete gamma function.
double chi_square_survival(double statistic, double dof);

struct ChiSquareResult {
  double statistic = 0.0;
  std::uint64_t dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness-of-fit of observed cell counts against cell probabilities.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected_probs);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope*x + intercept. Needs >= 2 points and
/// non-degenerate x.
LinearFit least_squares_fit(std::span<const double> x, std::span<const double> y);

}  // namespace pebble
