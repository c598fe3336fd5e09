#include "helpers.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "pebble/sampling.hpp"

namespace pebble::testing {

Graph tree_from_prufer(const std::vector<std::uint32_t>& seq, std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("prufer needs n >= 2");
  if (seq.size() != n - 2u) throw std::invalid_argument("prufer length must be n-2");
  std::vector<std::uint32_t> degree(n, 1);
  for (std::uint32_t v : seq) ++degree[v];
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(n - 1);
  std::vector<bool> used(n, false);
  for (std::uint32_t v : seq) {
    std::uint32_t leaf = 0;
    while (degree[leaf] != 1 || used[leaf]) ++leaf;
    edges.emplace_back(leaf, v);
    used[leaf] = true;
    --degree[v];
  }
  std::uint32_t a = 0;
  while (used[a] || degree[a] != 1) ++a;
  std::uint32_t b = a + 1;
  while (used[b] || degree[b] != 1) ++b;
  edges.emplace_back(a, b);
  return Graph::from_edges(n, edges);
}

namespace {

std::string ahu_encode(const Graph& g, std::uint32_t root, std::uint32_t parent) {
  std::vector<std::string> children;
  for (std::uint32_t w : g.neighbors(root))
    if (w != parent) children.push_back(ahu_encode(g, w, root));
  std::sort(children.begin(), children.end());
  std::string out = "(";
  for (const auto& c : children) out += c;
  out += ")";
  return out;
}

std::vector<std::uint32_t> tree_centers(const Graph& g) {
  const std::uint32_t n = g.vertex_count();
  if (n == 1) return {0};
  std::vector<std::uint32_t> degree(n), peel;
  for (std::uint32_t v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (degree[v] == 1) peel.push_back(v);
  }
  std::uint32_t remaining = n;
  while (remaining > 2) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t v : peel) {
      --remaining;
      for (std::uint32_t w : g.neighbors(v))
        if (--degree[w] == 1) next.push_back(w);
    }
    peel = std::move(next);
  }
  return peel;
}

}  // namespace

std::string ahu_canonical(const Graph& g) {
  const auto centers = tree_centers(g);
  std::string best;
  for (std::uint32_t c : centers) {
    std::string enc = ahu_encode(g, c, c);
    if (best.empty() || enc < best) best = enc;
  }
  return best;
}

std::vector<Graph> all_trees(std::uint32_t n) {
  std::vector<Graph> out;
  if (n == 1) {
    out.push_back(build_path(1));
    return out;
  }
  if (n == 2) {
    out.push_back(build_path(2));
    return out;
  }
  std::map<std::string, Graph> classes;
  std::vector<std::uint32_t> seq(n - 2, 0);
  for (;;) {
    Graph g = tree_from_prufer(seq, n);
    classes.emplace(ahu_canonical(g), std::move(g));
    std::uint32_t k = n - 2;
    while (k > 0 && seq[k - 1] == n - 1) seq[--k] = 0;
    if (k == 0) break;
    ++seq[k - 1];
  }
  for (auto& [key, g] : classes) out.push_back(std::move(g));
  return out;
}

Graph random_tree(std::uint32_t n, SplitMix64& rng) {
  if (n == 1) return build_path(1);
  if (n == 2) return build_path(2);
  std::vector<std::uint32_t> seq(n - 2);
  for (auto& v : seq) v = static_cast<std::uint32_t>(rng.below(n));
  return tree_from_prufer(seq, n);
}

Configuration random_configuration(std::uint32_t n, std::uint64_t t, SplitMix64& rng) {
  SamplerScratch scratch;
  std::vector<std::uint64_t> counts(n);
  sample_dependent_into(n, t, rng, scratch, counts);
  return Configuration(std::move(counts));
}

}  // namespace pebble::testing
