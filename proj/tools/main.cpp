#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pebble/analytics.hpp"
#include "pebble/errors.hpp"
#include "pebble/experiments.hpp"
#include "pebble/graph.hpp"
#include "pebble/io.hpp"
#include "pebble/sampling.hpp"
#include "pebble/solvers.hpp"
#include "pebble/stats.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using json = nlohmann::ordered_json;
using pebble::Graph;

std::string fmt_prob(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", p);
  return buf;
}

std::string fmt_real(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

/// Emits the result to stdout or --out, and drops a reproduction manifest
/// next to file outputs. The data file is the byte-stable contract; the
/// manifest records wall-clock duration and may differ between runs.
class OutputSink {
 public:
  OutputSink(std::string subcommand, std::string out_path)
      : subcommand_(std::move(subcommand)),
        out_path_(std::move(out_path)),
        start_(std::chrono::steady_clock::now()) {}

  void set_param(const std::string& key, const json& value) { params_[key] = value; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  void write(const std::string& content) {
    if (out_path_.empty()) {
      std::cout << content;
      return;
    }
    {
      std::ofstream out(out_path_, std::ios::binary);
      if (!out) throw std::invalid_argument("cannot open output file: " + out_path_);
      out << content;
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start_)
                             .count();
    json manifest;
    manifest["subcommand"] = subcommand_;
    manifest["parameters"] = params_;
    if (seed_) manifest["master_seed"] = *seed_;
    manifest["version"] = kVersion;
    manifest["outputs"] = json::array({out_path_});
    manifest["duration_ms"] = elapsed;
    std::ofstream mout(out_path_ + ".manifest.json", std::ios::binary);
    mout << manifest.dump(2) << '\n';
  }

 private:
  std::string subcommand_;
  std::string out_path_;
  json params_ = json::object();
  std::optional<std::uint64_t> seed_;
  std::chrono::steady_clock::time_point start_;
};

struct GraphChoice {
  std::vector<std::string> fuse;  // m n
  std::string path, star;

  Graph build(json& params) const {
    const int picked = !fuse.empty() + !path.empty() + !star.empty();
    if (picked != 1)
      throw CLI::ValidationError("graph", "pick exactly one of --fuse/--path/--star");
    if (!fuse.empty()) {
      const std::uint64_t m = pebble::parse_count(fuse[0]);
      const std::uint64_t n = pebble::parse_count(fuse[1]);
      params["family"] = "fuse";
      params["m"] = m;
      params["n"] = n;
      if (m > 0xffffffffull || n > 0xffffffffull)
        throw std::invalid_argument("graph size out of range");
      return pebble::build_fuse(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n));
    }
    const std::string& text = !path.empty() ? path : star;
    const std::uint64_t n = pebble::parse_count(text);
    if (n > 0xffffffffull) throw std::invalid_argument("graph size out of range");
    params["family"] = !path.empty() ? "path" : "star";
    params["n"] = n;
    return !path.empty() ? pebble::build_path(static_cast<std::uint32_t>(n))
                         : pebble::build_star(static_cast<std::uint32_t>(n));
  }
};

std::string estimate_csv_header() {
  return "family,n,m,t,trials,p_hat,ci_low,ci_high,seed\n";
}

std::string estimate_csv_row(const std::string& family, std::uint32_t m,
                             const pebble::Estimate& e) {
  std::ostringstream out;
  out << family << ',' << e.n << ',' << m << ',' << e.t << ',' << e.trials << ','
      << fmt_prob(e.p_hat) << ',' << fmt_prob(e.ci_low) << ',' << fmt_prob(e.ci_high) << ','
      << e.seed << '\n';
  return out.str();
}

json estimate_json(const std::string& family, std::uint32_t m, const pebble::Estimate& e) {
  json j;
  j["family"] = family;
  j["n"] = e.n;
  j["m"] = m;
  j["t"] = e.t;
  j["trials"] = e.trials;
  j["successes"] = e.successes;
  j["p_hat"] = e.p_hat;
  j["ci_low"] = e.ci_low;
  j["ci_high"] = e.ci_high;
  j["seed"] = e.seed;
  return j;
}

pebble::GraphFamily family_from_flags(const std::string& name, double epsilon, bool has_eps,
                                      std::uint64_t m, bool has_m) {
  if (name == "path") return pebble::GraphFamily::path();
  if (name == "star") return pebble::GraphFamily::star();
  if (name != "fuse") throw CLI::ValidationError("--family", "unknown family: " + name);
  if (has_eps == has_m)
    throw CLI::ValidationError("--family", "fuse family needs exactly one of --epsilon/--m");
  if (has_eps) return pebble::GraphFamily::fuse_with_epsilon(epsilon);
  return pebble::GraphFamily::fuse_with_m(static_cast<std::uint32_t>(m));
}

int run(int argc, char** argv) {
  CLI::App app{"pebble: graph pebbling thresholds, solvers and Monte Carlo experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "emit a graph as a 1-indexed edge list");
  GraphChoice gen_graph;
  std::string gen_out;
  gen->add_option("--fuse", gen_graph.fuse, "fuse F_{m,n}: wick length m, n vertices")
      ->expected(2);
  gen->add_option("--path", gen_graph.path, "path P_n");
  gen->add_option("--star", gen_graph.star, "star on n vertices");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // ---- sample -------------------------------------------------------------
  auto* sample = app.add_subcommand("sample", "draw one random configuration");
  std::string sample_n, sample_t, sample_out, sample_model = "dependent",
              sample_format = "text";
  std::uint64_t sample_seed = 0, sample_trial = 0;
  sample->add_option("--n", sample_n, "vertex count")->required();
  sample->add_option("--t", sample_t, "pebble count")->required();
  sample->add_option("--seed", sample_seed, "master seed (required: no hidden entropy)")
      ->required();
  sample->add_option("--trial-index", sample_trial, "trial index within the seed's stream");
  sample->add_option("--model", sample_model, "dependent|independent")
      ->check(CLI::IsMember({"dependent", "independent"}));
  sample->add_option("--format", sample_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  sample->add_option("--out", sample_out, "output file (default stdout)");

  // ---- solve --------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "per-root verdicts and fuse certificate");
  std::string solve_graph_path, solve_config_path, solve_out, solve_format = "text";
  solve->add_option("--graph", solve_graph_path, "edge-list file")->required();
  solve->add_option("--config", solve_config_path, "configuration file")->required();
  solve->add_option("--format", solve_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  solve->add_option("--out", solve_out, "output file (default stdout)");

  // ---- occupancy ----------------------------------------------------------
  auto* occupancy = app.add_subcommand("occupancy", "occupancy pmf and Eq.-style bounds");
  std::string occ_n, occ_t, occ_out, occ_format = "csv";
  std::uint64_t occ_imax = 0;
  bool occ_imax_set = false;
  occupancy->add_option("--n", occ_n, "vertex count")->required();
  occupancy->add_option("--t", occ_t, "pebble count")->required();
  occupancy->add_option("--i-max", occ_imax, "largest occupancy level to emit")
      ->each([&](const std::string&) { occ_imax_set = true; });
  occupancy->add_option("--format", occ_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  occupancy->add_option("--out", occ_out, "output file (default stdout)");

  // ---- estimate -----------------------------------------------------------
  auto* estimate = app.add_subcommand("estimate", "single-point Monte Carlo estimate");
  GraphChoice est_graph;
  std::string est_eps_n, est_t, est_out, est_model = "dependent", est_format = "csv";
  double est_epsilon = 0.0;
  bool est_has_eps = false;
  std::uint64_t est_trials = 1000, est_seed = 0;
  unsigned est_threads = 0;
  estimate->add_option("--fuse", est_graph.fuse, "fuse F_{m,n}")->expected(2);
  estimate->add_option("--path", est_graph.path, "path P_n");
  estimate->add_option("--star", est_graph.star, "star on n vertices");
  estimate->add_option("--epsilon", est_epsilon, "fuse with m = max(1, round((1-2e) lg n))")
      ->each([&](const std::string&) { est_has_eps = true; });
  estimate->add_option("--n", est_eps_n, "vertex count (with --epsilon)");
  estimate->add_option("--t", est_t, "pebble count")->required();
  estimate->add_option("--trials", est_trials, "trial count (>= 30)");
  estimate->add_option("--seed", est_seed, "master seed")->required();
  estimate->add_option("--model", est_model, "dependent|independent")
      ->check(CLI::IsMember({"dependent", "independent"}));
  estimate->add_option("--threads", est_threads, "worker threads (default: all cores)");
  estimate->add_option("--format", est_format, "csv|json|text")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  estimate->add_option("--out", est_out, "output file (default stdout)");

  // ---- threshold ----------------------------------------------------------
  auto* threshold = app.add_subcommand("threshold", "bisection for the p* crossing of t");
  std::string thr_family = "fuse", thr_n, thr_out, thr_format = "json";
  double thr_epsilon = 0.0, thr_pstar = 0.5, thr_precision = 0.02;
  bool thr_has_eps = false, thr_has_m = false;
  std::uint64_t thr_m = 0, thr_min_trials = 400, thr_max_trials = 10'000, thr_seed = 0;
  unsigned thr_threads = 0;
  threshold->add_option("--family", thr_family, "fuse|path|star")
      ->check(CLI::IsMember({"fuse", "path", "star"}));
  threshold->add_option("--n", thr_n, "vertex count")->required();
  threshold->add_option("--epsilon", thr_epsilon, "fuse epsilon")
      ->each([&](const std::string&) { thr_has_eps = true; });
  threshold->add_option("--m", thr_m, "fixed wick length")
      ->each([&](const std::string&) { thr_has_m = true; });
  threshold->add_option("--pstar", thr_pstar, "target probability (default 1/2)");
  threshold->add_option("--precision", thr_precision, "relative bracket width to stop at");
  threshold->add_option("--min-trials", thr_min_trials, "trial floor per bisection point");
  threshold->add_option("--max-trials", thr_max_trials, "adaptive trial cap per point");
  threshold->add_option("--seed", thr_seed, "master seed")->required();
  threshold->add_option("--threads", thr_threads, "worker threads");
  threshold->add_option("--format", thr_format, "json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  threshold->add_option("--out", thr_out, "output file (default stdout)");

  // ---- exponent -----------------------------------------------------------
  auto* exponent = app.add_subcommand("exponent", "threshold scaling exponent across n");
  std::string exp_family = "fuse", exp_grid, exp_out, exp_format = "json";
  double exp_epsilon = 0.0, exp_pstar = 0.5, exp_precision = 0.02;
  bool exp_has_eps = false, exp_has_m = false;
  std::uint64_t exp_m = 0, exp_min_trials = 400, exp_max_trials = 10'000, exp_seed = 0;
  unsigned exp_threads = 0;
  exponent->add_option("--family", exp_family, "fuse|path|star")
      ->check(CLI::IsMember({"fuse", "path", "star"}));
  exponent->add_option("--n", exp_grid, "size grid, e.g. 2^12..2^18")->required();
  exponent->add_option("--epsilon", exp_epsilon, "fuse epsilon")
      ->each([&](const std::string&) { exp_has_eps = true; });
  exponent->add_option("--m", exp_m, "fixed wick length")
      ->each([&](const std::string&) { exp_has_m = true; });
  exponent->add_option("--pstar", exp_pstar, "target probability");
  exponent->add_option("--precision", exp_precision, "relative bracket width");
  exponent->add_option("--min-trials", exp_min_trials, "trial floor per bisection point");
  exponent->add_option("--max-trials", exp_max_trials, "adaptive trial cap per point");
  exponent->add_option("--seed", exp_seed, "master seed")->required();
  exponent->add_option("--threads", exp_threads, "worker threads");
  exponent->add_option("--format", exp_format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));
  exponent->add_option("--out", exp_out, "output file (default stdout)");

  // ---- contrast -----------------------------------------------------------
  auto* contrast = app.add_subcommand("contrast", "dependent vs independent model on paths");
  std::string con_grid, con_out, con_format = "csv";
  std::string con_t;
  double con_factor = 4.0;
  std::uint64_t con_trials = 1000, con_seed = 0;
  unsigned con_threads = 0;
  contrast->add_option("--n", con_grid, "size grid")->required();
  contrast->add_option("--t", con_t, "fixed pebble count for every n");
  contrast->add_option("--t-factor", con_factor,
                       "per-n pebble count t = round(f * n * lg n) (default f=4)");
  contrast->add_option("--trials", con_trials, "trials per point and model (>= 30)");
  contrast->add_option("--seed", con_seed, "master seed")->required();
  contrast->add_option("--threads", con_threads, "worker threads");
  contrast->add_option("--format", con_format, "csv|json|text")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  contrast->add_option("--out", con_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  }

  // ---- dispatch -----------------------------------------------------------
  if (app.got_subcommand(gen)) {
    OutputSink sink("gen", gen_out);
    json params;
    const Graph g = gen_graph.build(params);
    for (auto& [k, v] : params.items()) sink.set_param(k, v);
    sink.write(pebble::format_edge_list(g));
    return 0;
  }

  if (app.got_subcommand(sample)) {
    OutputSink sink("sample", sample_out);
    const std::uint64_t n64 = pebble::parse_count(sample_n);
    const std::uint64_t t = pebble::parse_count(sample_t);
    if (n64 < 1 || n64 > 0xffffffffull) throw std::invalid_argument("bad vertex count");
    const auto n = static_cast<std::uint32_t>(n64);
    sink.set_param("n", n);
    sink.set_param("t", t);
    sink.set_param("model", sample_model);
    sink.set_param("trial_index", sample_trial);
    sink.set_seed(sample_seed);
    const pebble::SeedPolicy policy{sample_seed, sample_trial};
    const pebble::Configuration c = sample_model == "dependent"
                                        ? pebble::sample_dependent(n, t, policy)
                                        : pebble::sample_independent(n, t, policy);
    if (sample_format == "text") {
      sink.write(pebble::format_configuration(c));
    } else {
      json j;
      j["n"] = n;
      j["t"] = t;
      j["model"] = sample_model;
      j["seed"] = sample_seed;
      j["trial_index"] = sample_trial;
      json counts = json::array();
      for (std::uint32_t v = 0; v < n; ++v)
        if (c[v] > 0) counts.push_back({{"v", v + 1}, {"count", c[v]}});
      j["counts"] = counts;
      sink.write(j.dump(2) + "\n");
    }
    return 0;
  }

  if (app.got_subcommand(solve)) {
    OutputSink sink("solve", solve_out);
    sink.set_param("graph", solve_graph_path);
    sink.set_param("config", solve_config_path);
    std::ifstream gin(solve_graph_path);
    if (!gin) throw std::invalid_argument("cannot open graph file: " + solve_graph_path);
    const Graph g = pebble::parse_edge_list(gin);
    std::ifstream cin_(solve_config_path);
    if (!cin_) throw std::invalid_argument("cannot open config file: " + solve_config_path);
    const pebble::Configuration c = pebble::parse_configuration(cin_, g.vertex_count());

    std::vector<bool> roots(g.vertex_count());
    if (g.is_tree()) {
      roots = pebble::tree_solvable_all_roots(g, c);
    } else {
      for (std::uint32_t r = 0; r < g.vertex_count(); ++r)
        roots[r] = pebble::oracle_r_solvable(g, c, r);
    }
    bool all = true;
    for (bool b : roots) all = all && b;
    const auto fuse = pebble::detect_fuse(g);

    if (solve_format == "text") {
      std::ostringstream out;
      out << "n=" << g.vertex_count() << " edges=" << g.edge_count();
      if (fuse) out << " fuse m=" << fuse->m;
      out << '\n';
      for (std::uint32_t r = 0; r < g.vertex_count(); ++r)
        out << 'v' << r + 1 << ": " << (roots[r] ? "solvable" : "not solvable") << '\n';
      out << "solvable: " << (all ? "yes" : "no") << '\n';
      if (fuse) {
        const auto cert = pebble::fuse_certificate(*fuse, c);
        out << "certificate: " << (cert.v1_solvable ? "v1-solvable" : "not v1-solvable")
            << ", A=" << cert.accumulable << ", Y=" << cert.weight.get_num().get_str()
            << '/' << cert.weight.get_den().get_str() << '\n';
      }
      sink.write(out.str());
    } else {
      json j;
      j["n"] = g.vertex_count();
      j["t"] = c.total();
      json verdicts = json::array();
      for (std::uint32_t r = 0; r < g.vertex_count(); ++r)
        verdicts.push_back(static_cast<bool>(roots[r]));
      j["roots"] = verdicts;
      j["solvable"] = all;
      if (fuse) {
        const auto cert = pebble::fuse_certificate(*fuse, c);
        json cj;
        cj["m"] = fuse->m;
        cj["A"] = cert.accumulable;
        cj["Y"] = cert.weight.get_num().get_str() + "/" + cert.weight.get_den().get_str();
        cj["v1_solvable"] = cert.v1_solvable;
        j["certificate"] = cj;
      }
      sink.write(j.dump(2) + "\n");
    }
    return 0;
  }

  if (app.got_subcommand(occupancy)) {
    OutputSink sink("occupancy", occ_out);
    const std::uint64_t n = pebble::parse_count(occ_n);
    const std::uint64_t t = pebble::parse_count(occ_t);
    const std::uint64_t imax = occ_imax_set ? occ_imax : std::min<std::uint64_t>(t, 100);
    sink.set_param("n", n);
    sink.set_param("t", t);
    sink.set_param("i_max", imax);
    if (occ_format == "csv") {
      std::ostringstream out;
      out << "i,pmf,lower_bound,upper_bound\n";
      for (std::uint64_t i = 0; i <= imax; ++i) {
        out << i << ',' << fmt_real(pebble::occupancy_pmf(n, t, i)) << ',';
        if (i >= 1 && i <= t && n >= 2) {
          const auto b = pebble::occupancy_bounds(n, t, i);
          out << fmt_real(b.lower) << ',' << fmt_real(b.upper);
        } else {
          out << ',';
        }
        out << '\n';
      }
      sink.write(out.str());
    } else {
      json rows = json::array();
      for (std::uint64_t i = 0; i <= imax; ++i) {
        json row;
        row["i"] = i;
        row["pmf"] = pebble::occupancy_pmf(n, t, i);
        if (i >= 1 && i <= t && n >= 2) {
          const auto b = pebble::occupancy_bounds(n, t, i);
          row["lower_bound"] = b.lower;
          row["upper_bound"] = b.upper;
        }
        rows.push_back(row);
      }
      json j;
      j["n"] = n;
      j["t"] = t;
      j["rows"] = rows;
      sink.write(j.dump(2) + "\n");
    }
    return 0;
  }

  if (app.got_subcommand(estimate)) {
    OutputSink sink("estimate", est_out);
    json params;
    Graph g = [&] {
      if (est_has_eps) {
        if (est_eps_n.empty())
          throw CLI::ValidationError("--epsilon", "needs --n for the vertex count");
        const std::uint64_t n = pebble::parse_count(est_eps_n);
        params["family"] = "fuse";
        params["epsilon"] = est_epsilon;
        params["n"] = n;
        return pebble::GraphFamily::fuse_with_epsilon(est_epsilon)
            .build(static_cast<std::uint32_t>(n));
      }
      return est_graph.build(params);
    }();
    const std::uint64_t t = pebble::parse_count(est_t);
    pebble::ExperimentSpec spec;
    spec.n_grid = {g.vertex_count()};
    spec.trials_per_point = est_trials;
    spec.master_seed = est_seed;
    spec.model = est_model == "dependent" ? pebble::PlacementModel::dependent
                                          : pebble::PlacementModel::independent;
    spec.t_policy = std::vector<std::uint64_t>{t};
    spec.validate();
    for (auto& [k, v] : params.items()) sink.set_param(k, v);
    sink.set_param("t", t);
    sink.set_param("trials", est_trials);
    sink.set_param("model", est_model);
    sink.set_seed(est_seed);

    const pebble::Estimate e =
        pebble::estimate_solvable_probability(g, t, est_trials, est_seed, spec.model,
                                              est_threads);
    const std::string family = params["family"];
    const std::uint32_t m = g.fuse() ? g.fuse()->m : 0;
    if (est_format == "csv") {
      sink.write(estimate_csv_header() + estimate_csv_row(family, m, e));
    } else if (est_format == "json") {
      sink.write(estimate_json(family, m, e).dump(2) + "\n");
    } else {
      std::ostringstream out;
      out << "P[solvable] on " << family << " n=" << e.n << " t=" << e.t << ": "
          << fmt_prob(e.p_hat) << "  (95% CI " << fmt_prob(e.ci_low) << ".."
          << fmt_prob(e.ci_high) << ", " << e.trials << " trials, seed " << e.seed << ")\n";
      sink.write(out.str());
    }
    return 0;
  }

  if (app.got_subcommand(threshold)) {
    OutputSink sink("threshold", thr_out);
    const std::uint64_t n64 = pebble::parse_count(thr_n);
    if (n64 < 1 || n64 > 0xffffffffull) throw std::invalid_argument("bad vertex count");
    const auto n = static_cast<std::uint32_t>(n64);
    const pebble::GraphFamily family =
        family_from_flags(thr_family, thr_epsilon, thr_has_eps, thr_m, thr_has_m);
    pebble::AdaptivePolicy policy{thr_min_trials, 100, thr_max_trials};
    if (thr_min_trials < 30)
      throw std::invalid_argument("need at least 30 trials per point");
    sink.set_param("family", thr_family);
    if (thr_has_eps) sink.set_param("epsilon", thr_epsilon);
    if (thr_has_m) sink.set_param("m", thr_m);
    sink.set_param("n", n);
    sink.set_param("pstar", thr_pstar);
    sink.set_param("precision", thr_precision);
    sink.set_param("min_trials", thr_min_trials);
    sink.set_param("max_trials", thr_max_trials);
    sink.set_seed(thr_seed);

    const pebble::ThresholdResult result =
        pebble::find_threshold(family, n, thr_pstar, thr_precision, policy, thr_seed,
                               thr_threads);
    if (thr_format == "csv") {
      std::string out = estimate_csv_header();
      for (const auto& e : result.probes)
        out += estimate_csv_row(family.label(), result.wick_length, e);
      sink.write(out);
      std::cerr << "t_half " << result.t_half << '\n';
    } else if (thr_format == "json") {
      json j;
      j["family"] = family.label();
      if (thr_has_eps) j["epsilon"] = thr_epsilon;
      j["n"] = n;
      j["m"] = result.wick_length;
      j["pstar"] = thr_pstar;
      j["precision"] = thr_precision;
      j["t_half"] = result.t_half;
      j["seed"] = thr_seed;
      json probes = json::array();
      for (const auto& e : result.probes)
        probes.push_back(estimate_json(family.label(), result.wick_length, e));
      j["points"] = probes;
      sink.write(j.dump(2) + "\n");
    } else {
      std::ostringstream out;
      out << "t_half(" << family.label() << ", n=" << n << ", p*=" << thr_pstar
          << ") = " << result.t_half << "  (" << result.probes.size() << " probes)\n";
      sink.write(out.str());
    }
    return 0;
  }

  if (app.got_subcommand(exponent)) {
    OutputSink sink("exponent", exp_out);
    const auto grid = pebble::parse_n_grid(exp_grid);
    const pebble::GraphFamily family =
        family_from_flags(exp_family, exp_epsilon, exp_has_eps, exp_m, exp_has_m);
    pebble::AdaptivePolicy policy{exp_min_trials, 100, exp_max_trials};
    if (exp_min_trials < 30)
      throw std::invalid_argument("need at least 30 trials per point");
    pebble::ExperimentSpec spec;
    spec.n_grid = grid;
    spec.t_policy = exp_pstar;
    spec.trials_per_point = exp_min_trials;
    spec.master_seed = exp_seed;
    spec.validate();
    sink.set_param("family", exp_family);
    if (exp_has_eps) sink.set_param("epsilon", exp_epsilon);
    if (exp_has_m) sink.set_param("m", exp_m);
    sink.set_param("n_grid", grid);
    sink.set_param("pstar", exp_pstar);
    sink.set_param("precision", exp_precision);
    sink.set_param("min_trials", exp_min_trials);
    sink.set_param("max_trials", exp_max_trials);
    sink.set_seed(exp_seed);

    const pebble::ExponentFit fit = pebble::fit_exponent(
        family, grid, exp_pstar, exp_precision, policy, exp_seed, exp_threads);
    if (exp_format == "json") {
      json j;
      j["family"] = exp_family;
      if (exp_has_eps) j["epsilon"] = exp_epsilon;
      if (exp_has_m) j["m"] = exp_m;
      j["pstar"] = exp_pstar;
      j["slope"] = fit.slope;
      j["intercept"] = fit.intercept;
      j["r_squared"] = fit.r_squared;
      j["seed"] = exp_seed;
      json points = json::array();
      for (const auto& p : fit.points)
        points.push_back({{"n", p.n}, {"m", p.m}, {"t_half", p.t_half}});
      j["points"] = points;
      sink.write(j.dump(2) + "\n");
    } else {
      std::ostringstream out;
      out << "slope " << fmt_real(fit.slope) << " intercept " << fmt_real(fit.intercept)
          << " r^2 " << fmt_real(fit.r_squared) << '\n';
      for (const auto& p : fit.points)
        out << "  n=" << p.n << " m=" << p.m << " t_half=" << p.t_half << '\n';
      sink.write(out.str());
    }
    return 0;
  }

  if (app.got_subcommand(contrast)) {
    OutputSink sink("contrast", con_out);
    const auto grid = pebble::parse_n_grid(con_grid);
    std::vector<std::uint64_t> pebbles;
    for (const std::uint32_t n : grid) {
      if (!con_t.empty()) {
        pebbles.push_back(pebble::parse_count(con_t));
      } else {
        const double nn = static_cast<double>(n);
        pebbles.push_back(static_cast<std::uint64_t>(
            std::llround(con_factor * nn * std::log2(nn))));
      }
    }
    pebble::ExperimentSpec spec;
    spec.family = pebble::GraphFamily::path();
    spec.n_grid = grid;
    spec.t_policy = pebbles;
    spec.trials_per_point = con_trials;
    spec.master_seed = con_seed;
    spec.validate();
    sink.set_param("n_grid", grid);
    if (!con_t.empty()) sink.set_param("t", con_t);
    else sink.set_param("t_factor", con_factor);
    sink.set_param("trials", con_trials);
    sink.set_seed(con_seed);

    const auto points = pebble::model_contrast(grid, pebbles, con_trials, con_seed,
                                               con_threads);
    if (con_format == "csv") {
      std::ostringstream out;
      out << "family,n,m,t,model,trials,p_hat,ci_low,ci_high,seed\n";
      for (std::size_t i = 0; i < points.size(); ++i) {
        const auto row = [&](const pebble::Estimate& e, const char* model) {
          out << "path," << e.n << ',' << grid[i] << ',' << e.t << ',' << model << ','
              << e.trials << ',' << fmt_prob(e.p_hat) << ',' << fmt_prob(e.ci_low) << ','
              << fmt_prob(e.ci_high) << ',' << e.seed << '\n';
        };
        row(points[i].dependent, "dependent");
        row(points[i].independent, "independent");
      }
      sink.write(out.str());
    } else if (con_format == "json") {
      json rows = json::array();
      for (const auto& p : points) {
        json row;
        row["n"] = p.dependent.n;
        row["t"] = p.dependent.t;
        row["dependent"] = estimate_json("path", static_cast<std::uint32_t>(p.dependent.n),
                                         p.dependent);
        row["independent"] = estimate_json("path",
                                           static_cast<std::uint32_t>(p.independent.n),
                                           p.independent);
        rows.push_back(row);
      }
      json j;
      j["seed"] = con_seed;
      j["points"] = rows;
      sink.write(j.dump(2) + "\n");
    } else {
      std::ostringstream out;
      for (const auto& p : points)
        out << "n=" << p.dependent.n << " t=" << p.dependent.t
            << "  dependent " << fmt_prob(p.dependent.p_hat) << "  independent "
            << fmt_prob(p.independent.p_hat) << '\n';
      sink.write(out.str());
    }
    return 0;
  }

  std::cerr << "usage error: no subcommand\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const pebble::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const pebble::MonotonicityViolation& e) {
    std::cerr << "diagnostic abort: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
