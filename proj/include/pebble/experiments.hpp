#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pebble/graph.hpp"

namespace pebble {

enum class PlacementModel { dependent, independent };

/// A graph family indexed by vertex count, as used in threshold sweeps.
/// fuse_epsilon derives the wick length m = max(1, round((1-2e) lg n)) per n;
/// fuse_fixed keeps m constant; path and star are the boundary fuses.
struct GraphFamily {
  enum class Kind { fuse_epsilon, fuse_fixed, path, star };

  Kind kind = Kind::path;
  double epsilon = 0.0;
  std::uint32_t fixed_m = 1;

  static GraphFamily fuse_with_epsilon(double epsilon);
  static GraphFamily fuse_with_m(std::uint32_t m);
  static GraphFamily path();
  static GraphFamily star();

  std::uint32_t wick_length(std::uint32_t n) const;
  Graph build(std::uint32_t n) const;
  std::string label() const;  // CSV family column
};

struct Estimate {
  std::uint64_t n = 0;
  std::uint64_t t = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;   // Wilson 95%
  double ci_high = 1.0;
  std::uint64_t seed = 0;  // per-point master seed (provenance)
};

/// Trial allocation near a bisection point: batches of `batch` until the 95%
/// CI excludes the target probability or max_trials is reached, with at least
/// min_trials spent.
struct AdaptivePolicy {
  std::uint64_t min_trials = 400;
  std::uint64_t batch = 100;
  std::uint64_t max_trials = 10'000;
};

/// Monte Carlo estimate of Pr[solvable] on a tree with exactly `trials`
/// independent trials. Per-trial seeds derive from (seed, trial_index), so the
/// result is a pure function of the arguments regardless of thread count.
Estimate estimate_solvable_probability(const Graph& g, std::uint64_t t, std::uint64_t trials,
                                       std::uint64_t seed, PlacementModel model,
                                       unsigned threads = 0);

/// Adaptive variant used by threshold bisection.
Estimate estimate_adaptive(const Graph& g, std::uint64_t t, double pstar,
                           const AdaptivePolicy& policy, std::uint64_t seed,
                           PlacementModel model, unsigned threads = 0);

/// Raises MonotonicityViolation if some pair of probes has p decreasing in t
/// beyond 99.9%-level CI noise.
void check_probe_monotonicity(std::span<const Estimate> probes);

struct ThresholdResult {
  std::uint64_t t_half = 0;          // smallest probed t with p_hat > pstar
  std::uint32_t wick_length = 0;     // m of the graph actually built
  std::vector<Estimate> probes;      // every estimated point, in probe order
};

/// Locates the pebble count where Pr[solvable] crosses pstar: doubles t until
/// the estimate exceeds pstar, then bisects until the bracket's relative width
/// is <= precision (or the bracket closes to 1). Assumes empirical
/// monotonicity of p in t and aborts with a diagnostic if probes violate it
/// beyond CI noise.
ThresholdResult find_threshold(const GraphFamily& family, std::uint32_t n, double pstar,
                               double precision, const AdaptivePolicy& policy,
                               std::uint64_t seed, unsigned threads = 0);

struct ExponentPoint {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint64_t t_half = 0;
};

struct ExponentFit {
  double slope = 0.0;      // ~ 1 - epsilon for fuse families
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<ExponentPoint> points;
};

/// OLS fit of lg t_half against lg n across the grid (needs >= 4 sizes).
ExponentFit fit_exponent(const GraphFamily& family, std::span<const std::uint32_t> n_grid,
                         double pstar, double precision, const AdaptivePolicy& policy,
                         std::uint64_t seed, unsigned threads = 0);

struct ContrastPoint {
  Estimate dependent;
  Estimate independent;
};

/// Dependent vs independent model at identical (n, t) on paths.
std::vector<ContrastPoint> model_contrast(std::span<const std::uint32_t> n_grid,
                                          std::span<const std::uint64_t> pebbles,
                                          std::uint64_t trials, std::uint64_t seed,
                                          unsigned threads = 0);

/// CLI-facing description of one experiment run; validates the spec-level
/// invariants (strictly increasing grid, at least 30 trials per point).
struct ExperimentSpec {
  GraphFamily family;
  std::vector<std::uint32_t> n_grid;
  std::variant<std::vector<std::uint64_t>, double> t_policy;  // grid or target p*
  std::uint64_t trials_per_point = 400;
  std::uint64_t master_seed = 0;
  PlacementModel model = PlacementModel::dependent;

  void validate() const;
};

}  // namespace pebble
