#include "pebble/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "pebble/analytics.hpp"
#include "pebble/errors.hpp"
#include "pebble/sampling.hpp"
#include "pebble/solvers.hpp"
#include "pebble/stats.hpp"

namespace pebble {

GraphFamily GraphFamily::fuse_with_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 0.5))
    throw std::invalid_argument("epsilon must lie in [0, 1/2)");
  GraphFamily f;
  f.kind = Kind::fuse_epsilon;
  f.epsilon = epsilon;
  return f;
}

GraphFamily GraphFamily::fuse_with_m(std::uint32_t m) {
  if (m < 1) throw std::invalid_argument("wick length must be >= 1");
  GraphFamily f;
  f.kind = Kind::fuse_fixed;
  f.fixed_m = m;
  return f;
}

GraphFamily GraphFamily::path() {
  GraphFamily f;
  f.kind = Kind::path;
  return f;
}

GraphFamily GraphFamily::star() {
  GraphFamily f;
  f.kind = Kind::star;
  return f;
}

std::uint32_t GraphFamily::wick_length(std::uint32_t n) const {
  switch (kind) {
    case Kind::fuse_epsilon: return wick_length_for_epsilon(n, epsilon);
    case Kind::fuse_fixed: return fixed_m;
    case Kind::path: return n;
    case Kind::star: return 1;
  }
  throw std::logic_error("unreachable family kind");
}

Graph GraphFamily::build(std::uint32_t n) const {
  const std::uint32_t m = wick_length(n);
  if (m > n) throw std::invalid_argument("family wick length exceeds n");
  return build_fuse(m, n);
}

std::string GraphFamily::label() const {
  switch (kind) {
    case Kind::fuse_epsilon:
    case Kind::fuse_fixed: return "fuse";
    case Kind::path: return "path";
    case Kind::star: return "star";
  }
  throw std::logic_error("unreachable family kind");
}

void ExperimentSpec::validate() const {
  if (n_grid.empty()) throw std::invalid_argument("n grid must not be empty");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1])
      throw std::invalid_argument("n grid must be strictly increasing");
  if (trials_per_point < 30)
    throw std::invalid_argument("need at least 30 trials per point");
}

namespace {

// Counts solvable samples over trial indices [begin, end). Pure function of
// (graph, t, model, seed, range); each trial seeds its own generator.
std::uint64_t run_trial_range(const Graph& g, std::uint64_t t, PlacementModel model,
                              std::uint64_t seed, std::uint64_t begin, std::uint64_t end) {
  const std::uint32_t n = g.vertex_count();
  std::vector<std::uint64_t> counts(n);
  SamplerScratch scratch;
  TreeWorkspace ws;
  ws.resize(n);
  std::uint64_t successes = 0;
  for (std::uint64_t trial = begin; trial < end; ++trial) {
    SplitMix64 rng(SeedPolicy{seed, trial});
    if (model == PlacementModel::dependent)
      sample_dependent_into(n, t, rng, scratch, counts);
    else
      sample_independent_into(n, t, rng, counts);
    if (tree_all_roots_solvable(g, counts, ws)) ++successes;
  }
  return successes;
}

std::uint64_t run_trials(const Graph& g, std::uint64_t t, PlacementModel model,
                         std::uint64_t seed, std::uint64_t begin, std::uint64_t end,
                         unsigned threads) {
  const std::uint64_t span = end - begin;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(threads, span));
  if (workers <= 1) return run_trial_range(g, t, model, seed, begin, end);

  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = begin + span * w / workers;
    const std::uint64_t hi = begin + span * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] { partial[w] = run_trial_range(g, t, model, seed, lo, hi); });
  }
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (std::uint64_t s : partial) total += s;
  return total;
}

Estimate make_estimate(const Graph& g, std::uint64_t t, std::uint64_t trials,
                       std::uint64_t successes, std::uint64_t seed) {
  Estimate e;
  e.n = g.vertex_count();
  e.t = t;
  e.trials = trials;
  e.successes = successes;
  e.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
  const WilsonInterval ci = wilson_interval(successes, trials);
  e.ci_low = ci.low;
  e.ci_high = ci.high;
  e.seed = seed;
  return e;
}

}  // namespace

Estimate estimate_solvable_probability(const Graph& g, std::uint64_t t, std::uint64_t trials,
                                       std::uint64_t seed, PlacementModel model,
                                       unsigned threads) {
  if (!g.is_tree())
    throw std::invalid_argument("estimation supports tree families only");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  const std::uint64_t successes = run_trials(g, t, model, seed, 0, trials, threads);
  return make_estimate(g, t, trials, successes, seed);
}

Estimate estimate_adaptive(const Graph& g, std::uint64_t t, double pstar,
                           const AdaptivePolicy& policy, std::uint64_t seed,
                           PlacementModel model, unsigned threads) {
  if (!g.is_tree())
    throw std::invalid_argument("estimation supports tree families only");
  if (policy.batch < 1 || policy.max_trials < 1)
    throw std::invalid_argument("adaptive policy needs batch and max_trials >= 1");
  std::uint64_t done = 0;
  std::uint64_t successes = 0;
  while (done < policy.max_trials) {
    const std::uint64_t batch = std::min(policy.batch, policy.max_trials - done);
    successes += run_trials(g, t, model, seed, done, done + batch, threads);
    done += batch;
    if (done < policy.min_trials) continue;
    const WilsonInterval ci = wilson_interval(successes, done);
    if (ci.low > pstar || ci.high < pstar) break;  // verdict settled
  }
  return make_estimate(g, t, done, successes, seed);
}

void check_probe_monotonicity(std::span<const Estimate> probes) {
  // A slack check at the 99.9% level: a genuine decrease of p in t must
  // separate the intervals in the wrong order.
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = 0; j < probes.size(); ++j) {
      if (probes[i].t >= probes[j].t) continue;
      const WilsonInterval small_t =
          wilson_interval(probes[i].successes, probes[i].trials, kZ999);
      const WilsonInterval large_t =
          wilson_interval(probes[j].successes, probes[j].trials, kZ999);
      if (small_t.low > large_t.high) {
        throw MonotonicityViolation(
            "estimated P[solvable] decreases beyond CI noise between t=" +
            std::to_string(probes[i].t) + " (p=" + std::to_string(probes[i].p_hat) +
            ") and t=" + std::to_string(probes[j].t) +
            " (p=" + std::to_string(probes[j].p_hat) + ")");
      }
    }
  }
}

ThresholdResult find_threshold(const GraphFamily& family, std::uint32_t n, double pstar,
                               double precision, const AdaptivePolicy& policy,
                               std::uint64_t seed, unsigned threads) {
  if (!(pstar > 0.0 && pstar < 1.0))
    throw std::invalid_argument("target probability must lie in (0, 1)");
  if (!(precision >= 0.0)) throw std::invalid_argument("precision must be >= 0");
  const Graph g = family.build(n);

  ThresholdResult result;
  result.wick_length = family.wick_length(n);
  std::uint64_t point_index = 0;

  // Doubling probes bracket the crossing; no min-trials floor here, the CI
  // exclusion rule alone settles far-from-target points quickly.
  AdaptivePolicy bracket_policy = policy;
  bracket_policy.min_trials = std::min<std::uint64_t>(policy.batch, policy.min_trials);

  auto probe = [&](std::uint64_t t, const AdaptivePolicy& pol) {
    const std::uint64_t point_seed = derive_seed(seed, point_index++);
    Estimate e = estimate_adaptive(g, t, pstar, pol, point_seed, PlacementModel::dependent,
                                   threads);
    result.probes.push_back(e);
    return e.p_hat;
  };

  std::uint64_t lo = 0;  // p_hat(lo) <= pstar (0 = virtual floor, p = 0 at t = 0)
  std::uint64_t hi = 0;
  std::uint64_t t = 1;
  for (int doublings = 0;; ++doublings) {
    if (doublings > 62) throw BudgetExceeded("threshold bracketing did not converge");
    if (probe(t, bracket_policy) > pstar) {
      hi = t;
      break;
    }
    lo = t;
    t *= 2;
  }

  while (hi - lo > 1 &&
         static_cast<double>(hi - lo) > precision * static_cast<double>(hi)) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (probe(mid, policy) > pstar) hi = mid;
    else lo = mid;
  }

  check_probe_monotonicity(result.probes);
  result.t_half = hi;
  return result;
}

ExponentFit fit_exponent(const GraphFamily& family, std::span<const std::uint32_t> n_grid,
                         double pstar, double precision, const AdaptivePolicy& policy,
                         std::uint64_t seed, unsigned threads) {
  if (n_grid.size() < 4)
    throw std::invalid_argument("exponent fit needs at least 4 grid sizes");
  ExponentFit fit;
  std::vector<double> lg_n, lg_t;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const ThresholdResult thr = find_threshold(family, n_grid[i], pstar, precision, policy,
                                               derive_seed(seed, i), threads);
    fit.points.push_back({n_grid[i], thr.wick_length, thr.t_half});
    lg_n.push_back(std::log2(static_cast<double>(n_grid[i])));
    lg_t.push_back(std::log2(static_cast<double>(thr.t_half)));
  }
  const LinearFit ls = least_squares_fit(lg_n, lg_t);
  fit.slope = ls.slope;
  fit.intercept = ls.intercept;
  fit.r_squared = ls.r_squared;
  return fit;
}

std::vector<ContrastPoint> model_contrast(std::span<const std::uint32_t> n_grid,
                                          std::span<const std::uint64_t> pebbles,
                                          std::uint64_t trials, std::uint64_t seed,
                                          unsigned threads) {
  if (n_grid.size() != pebbles.size())
    throw std::invalid_argument("contrast needs one pebble count per n");
  std::vector<ContrastPoint> out;
  out.reserve(n_grid.size());
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const Graph g = build_path(n_grid[i]);
    ContrastPoint point;
    point.dependent = estimate_solvable_probability(
        g, pebbles[i], trials, derive_seed(seed, 2 * i), PlacementModel::dependent, threads);
    point.independent = estimate_solvable_probability(
        g, pebbles[i], trials, derive_seed(seed, 2 * i + 1), PlacementModel::independent,
        threads);
    out.push_back(point);
  }
  return out;
}

}  // namespace pebble
