#include "pebble/solvers.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "pebble/errors.hpp"
#include "pebble/sampling.hpp"

namespace pebble {

namespace {

void require_tree(const Graph& g, const char* who) {
  if (!g.is_tree()) throw std::invalid_argument(std::string(who) + " requires a tree");
}

void require_matching(const Graph& g, const Configuration& c) {
  if (g.vertex_count() != c.vertex_count())
    throw std::invalid_argument("configuration size does not match graph");
}

// Exhaustive search state: byte counts (t <= 255), memoized in a visited set.
// Keys pack into one uint64 when n <= 8, otherwise a byte string.
struct OracleSearch {
  const Graph& g;
  std::uint32_t root;
  std::uint64_t max_states;
  std::vector<std::uint8_t> state;
  std::unordered_set<std::uint64_t> seen_small;
  std::unordered_set<std::string> seen_large;
  bool small_keys;

  bool visit() {
    if (small_keys) {
      std::uint64_t key = 0;
      for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        key |= static_cast<std::uint64_t>(state[v]) << (8 * v);
      if (!seen_small.insert(key).second) return false;
      if (seen_small.size() > max_states) throw BudgetExceeded("oracle visited-state cap exceeded");
    } else {
      std::string key(state.begin(), state.end());
      if (!seen_large.insert(std::move(key)).second) return false;
      if (seen_large.size() > max_states) throw BudgetExceeded("oracle visited-state cap exceeded");
    }
    return true;
  }

  bool search() {
    if (!visit()) return false;  // acyclic state graph: revisit means explored
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
      if (state[v] < 2) continue;
      for (std::uint32_t u : g.neighbors(v)) {
        if (u == root) return true;  // the step lands a pebble on the root
        state[v] -= 2;
        state[u] += 1;
        const bool solved = search();
        state[u] -= 1;
        state[v] += 2;
        if (solved) return true;
      }
    }
    return false;
  }
};

}  // namespace

bool oracle_r_solvable(const Graph& g, const Configuration& c, std::uint32_t root,
                       const OracleLimits& limits) {
  require_matching(g, c);
  if (root >= g.vertex_count()) throw std::invalid_argument("root out of range");
  if (g.vertex_count() > 64) throw std::invalid_argument("oracle supports n <= 64");
  if (c.total() > 255) throw std::invalid_argument("oracle supports t <= 255");
  if (c[root] >= 1) return true;

  OracleSearch search{g, root, limits.max_states, {}, {}, {}, g.vertex_count() <= 8};
  search.state.assign(c.counts().begin(), c.counts().end());
  return search.search();
}

namespace {

// Iterative bottom-up pass toward `root`; returns movable(root).
std::uint64_t movable_at_root(const Graph& g, std::span<const std::uint64_t> counts,
                              std::uint32_t root, std::vector<std::uint32_t>& order,
                              std::vector<std::uint32_t>& parent,
                              std::vector<std::uint64_t>& movable) {
  const std::uint32_t n = g.vertex_count();
  order.clear();
  order.reserve(n);
  parent.assign(n, root);
  std::vector<bool> seen(n, false);
  order.push_back(root);
  seen[root] = true;
  for (std::uint32_t head = 0; head < order.size(); ++head) {
    const std::uint32_t u = order[head];
    for (std::uint32_t w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = u;
        order.push_back(w);
      }
    }
  }
  movable.assign(n, 0);
  for (std::size_t i = order.size(); i-- > 0;) {
    const std::uint32_t u = order[i];
    std::uint64_t m = counts[u];
    for (std::uint32_t w : g.neighbors(u))
      if (w != parent[u]) m += movable[w] / 2;
    movable[u] = m;
  }
  return movable[root];
}

}  // namespace

SolveResult tree_movable(const Graph& g, const Configuration& c, std::uint32_t root) {
  require_tree(g, "tree_movable");
  require_matching(g, c);
  if (root >= g.vertex_count()) throw std::invalid_argument("root out of range");
  std::vector<std::uint32_t> order, parent;
  std::vector<std::uint64_t> movable;
  const std::uint64_t value = movable_at_root(g, c.counts(), root, order, parent, movable);
  return SolveResult{root, value >= 1, value};
}

bool tree_all_roots_solvable(const Graph& g, std::span<const std::uint64_t> counts,
                             TreeWorkspace& ws) {
  const std::uint32_t n = g.vertex_count();
  const auto order = g.bfs_order();
  const auto parent = g.parent();
  auto& down = ws.down;
  auto& up = ws.up;

  for (std::size_t i = n; i-- > 0;) {
    const std::uint32_t u = order[i];
    std::uint64_t m = counts[u];
    for (std::uint32_t w : g.neighbors(u))
      if (w != parent[u]) m += down[w] / 2;
    down[u] = m;
  }
  if (down[order[0]] == 0) return false;  // root of the scaffold already fails

  bool all = true;
  up[order[0]] = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t u = order[i];
    const std::uint64_t base = down[u] + up[u] / 2;
    for (std::uint32_t w : g.neighbors(u))
      if (w != parent[u]) up[w] = base - down[w] / 2;
    all = all && base >= 1;
  }
  return all;
}

std::vector<bool> tree_solvable_all_roots(const Graph& g, const Configuration& c) {
  require_tree(g, "tree_solvable_all_roots");
  require_matching(g, c);
  const std::uint32_t n = g.vertex_count();
  TreeWorkspace ws;
  ws.resize(n);
  const auto counts = c.counts();
  const auto order = g.bfs_order();
  const auto parent = g.parent();

  for (std::size_t i = n; i-- > 0;) {
    const std::uint32_t u = order[i];
    std::uint64_t m = counts[u];
    for (std::uint32_t w : g.neighbors(u))
      if (w != parent[u]) m += ws.down[w] / 2;
    ws.down[u] = m;
  }
  std::vector<bool> result(n, false);
  ws.up[order[0]] = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t u = order[i];
    const std::uint64_t base = ws.down[u] + ws.up[u] / 2;
    for (std::uint32_t w : g.neighbors(u))
      if (w != parent[u]) ws.up[w] = base - ws.down[w] / 2;
    result[u] = base >= 1;
  }
  return result;
}

FuseCertificate fuse_certificate(const FuseSpec& f, const Configuration& c) {
  if (c.vertex_count() != f.n)
    throw std::invalid_argument("configuration size does not match fuse");
  if (f.m < 1 || f.m > f.n) throw std::invalid_argument("malformed fuse spec");

  std::uint64_t accumulable = 0;
  for (std::uint32_t v = f.m; v < f.n; ++v) accumulable += c[v] / 2;

  // Y over the common denominator 2^(m-1): the wick term C(v_{k+1})/2^k scales
  // to C(v_{k+1}) << (m-1-k); exact integers throughout.
  mpz_class numerator = 0;
  for (std::uint32_t k = 0; k < f.m; ++k) {
    mpz_class term(static_cast<unsigned long>(c[k]));
    numerator += term << (f.m - 1 - k);
  }
  numerator += mpz_class(static_cast<unsigned long>(accumulable));

  mpz_class denominator = mpz_class(1) << (f.m - 1);
  FuseCertificate cert;
  cert.accumulable = accumulable;
  cert.v1_solvable = numerator >= denominator;
  cert.weight = mpq_class(numerator, denominator);
  cert.weight.canonicalize();
  return cert;
}

bool solvable(const Graph& g, const Configuration& c, const OracleLimits& limits) {
  require_matching(g, c);
  if (c.total() == 0) return false;
  if (g.is_tree()) {
    TreeWorkspace ws;
    ws.resize(g.vertex_count());
    return tree_all_roots_solvable(g, c.counts(), ws);
  }
  for (std::uint32_t r = 0; r < g.vertex_count(); ++r)
    if (!oracle_r_solvable(g, c, r, limits)) return false;
  return true;
}

std::uint64_t pebbling_number_exact(const Graph& g, const OracleLimits& limits) {
  const std::uint32_t n = g.vertex_count();
  std::uint64_t budget = limits.max_states;
  for (std::uint64_t t = 1;; ++t) {
    bool universal = true;
    bool aborted = false;
    for_each_configuration(n, t, [&](std::span<const std::uint64_t> counts) {
      if (!universal || aborted) return;
      if (budget == 0) {
        aborted = true;
        return;
      }
      --budget;
      Configuration c(std::vector<std::uint64_t>(counts.begin(), counts.end()));
      if (!solvable(g, c, limits)) universal = false;
    });
    if (aborted) throw BudgetExceeded("pebbling_number_exact configuration cap exceeded");
    if (universal) return t;
  }
}

mpq_class exact_solvable_probability(const Graph& g, std::uint64_t t,
                                     const OracleLimits& limits) {
  const std::uint32_t n = g.vertex_count();
  std::uint64_t budget = limits.max_states;
  std::uint64_t solvable_count = 0;
  std::uint64_t total = 0;
  bool aborted = false;
  for_each_configuration(n, t, [&](std::span<const std::uint64_t> counts) {
    if (aborted) return;
    if (budget == 0) {
      aborted = true;
      return;
    }
    --budget;
    ++total;
    Configuration c(std::vector<std::uint64_t>(counts.begin(), counts.end()));
    if (solvable(g, c, limits)) ++solvable_count;
  });
  if (aborted) throw BudgetExceeded("exact_solvable_probability configuration cap exceeded");
  mpq_class p(static_cast<unsigned long>(solvable_count), 1u);
  p /= mpq_class(count_configurations(n, t));
  p.canonicalize();
  return p;
}

}  // namespace pebble
