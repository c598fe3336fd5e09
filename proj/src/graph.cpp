#include "pebble/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pebble {

namespace {

std::vector<std::uint32_t> csr_offsets(std::uint32_t n,
                                       const std::vector<std::uint32_t>& degrees) {
  std::vector<std::uint32_t> offsets(n + 1, 0);
  for (std::uint32_t v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + degrees[v];
  return offsets;
}

}  // namespace

Graph Graph::from_adjacency(std::uint32_t n, std::vector<std::uint32_t> offsets,
                            std::vector<std::uint32_t> neighbors, GraphKind kind,
                            std::optional<FuseSpec> fuse) {
  Graph g;
  g.n_ = n;
  g.offsets_ = std::move(offsets);
  g.neighbors_ = std::move(neighbors);
  g.kind_ = kind;
  g.fuse_ = fuse;
  g.is_tree_ = (g.neighbors_.size() / 2 == n - 1u) || n == 1;
  if (g.is_tree_) g.build_tree_scaffold();
  return g;
}

void Graph::build_tree_scaffold() {
  bfs_order_.assign(n_, 0);
  parent_.assign(n_, 0);
  std::vector<bool> seen(n_, false);
  bfs_order_[0] = 0;
  seen[0] = true;
  std::uint32_t head = 0, tail = 1;
  while (head < tail) {
    const std::uint32_t u = bfs_order_[head++];
    for (std::uint32_t w : neighbors(u)) {
      if (!seen[w]) {
        seen[w] = true;
        parent_[w] = u;
        bfs_order_[tail++] = w;
      }
    }
  }
  if (tail != n_) throw std::invalid_argument("graph is not connected");
}

Graph Graph::from_edges(std::uint32_t n,
                        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
  std::vector<std::uint32_t> degrees(n, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    ++degrees[u];
    ++degrees[v];
  }
  auto offsets = csr_offsets(n, degrees);
  std::vector<std::uint32_t> neighbors(offsets[n]);
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (auto [u, v] : edges) {
    neighbors[cursor[u]++] = v;
    neighbors[cursor[v]++] = u;
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    auto row = neighbors.begin() + offsets[v];
    auto end = neighbors.begin() + offsets[v + 1];
    std::sort(row, end);
    if (std::adjacent_find(row, end) != end)
      throw std::invalid_argument("multi-edges are not allowed");
  }

  // Connectivity sweep (the tree scaffold only runs for trees).
  {
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> stack = {0};
    seen[0] = true;
    std::uint32_t visited = 1;
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t i = offsets[u]; i < offsets[u + 1]; ++i) {
        const std::uint32_t w = neighbors[i];
        if (!seen[w]) {
          seen[w] = true;
          ++visited;
          stack.push_back(w);
        }
      }
    }
    if (visited != n) throw std::invalid_argument("graph is not connected");
  }

  const bool tree = edges.size() == n - 1u || n == 1;
  return from_adjacency(n, std::move(offsets), std::move(neighbors),
                        tree ? GraphKind::tree : GraphKind::general, std::nullopt);
}

Graph build_fuse(std::uint32_t m, std::uint32_t n) {
  if (m < 1 || m > n)
    throw std::invalid_argument("fuse requires 1 <= m <= n, got m=" + std::to_string(m) +
                                " n=" + std::to_string(n));
  // Degrees: wick path vertices, the center v_m, and degree-1 sparks.
  std::vector<std::uint32_t> degrees(n, 1);
  if (n == 1) {
    degrees[0] = 0;
  } else {
    for (std::uint32_t v = 1; v + 1 < m; ++v) degrees[v] = 2;
    degrees[m - 1] = (n - m) + (m > 1 ? 1 : 0);
  }
  auto offsets = csr_offsets(n, degrees);
  std::vector<std::uint32_t> neighbors(offsets[n]);
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  auto add = [&](std::uint32_t u, std::uint32_t v) {
    neighbors[cursor[u]++] = v;
    neighbors[cursor[v]++] = u;
  };
  for (std::uint32_t i = 0; i + 1 < m; ++i) add(i, i + 1);
  for (std::uint32_t i = m; i < n; ++i) add(m - 1, i);
  for (std::uint32_t v = 0; v < n; ++v)
    std::sort(neighbors.begin() + offsets[v], neighbors.begin() + offsets[v + 1]);

  GraphKind kind = GraphKind::fuse;
  if (m == n) kind = GraphKind::path;
  else if (m == 1) kind = GraphKind::star;
  return Graph::from_adjacency(n, std::move(offsets), std::move(neighbors), kind,
                               FuseSpec{n, m});
}

Graph build_path(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("path needs n >= 1");
  return build_fuse(n, n);
}

Graph build_star(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("star needs n >= 1");
  return build_fuse(1, n);
}

std::uint32_t wick_length_for_target_threshold(std::uint64_t t, std::uint64_t n) {
  if (n < 2 || t * (double)t < (double)n)
    throw std::invalid_argument("wick length needs t^2 >= n >= 2");
  const double value = 2.0 * std::log2((double)t) - std::log2((double)n);
  auto m = static_cast<std::int64_t>(std::llround(value));
  m = std::max<std::int64_t>(1, std::min<std::int64_t>(m, (std::int64_t)n));
  return static_cast<std::uint32_t>(m);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(edge_count());
  for (std::uint32_t v = 0; v < n_; ++v)
    for (std::uint32_t w : neighbors(v))
      if (v < w) out.emplace_back(v, w);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<FuseSpec> detect_fuse(const Graph& g) {
  const std::uint32_t n = g.vertex_count();
  if (!g.is_tree()) return std::nullopt;
  if (n == 1) return FuseSpec{1, 1};

  // Walk the wick from v_1 while degrees stay 2; the stopping vertex is the
  // candidate center v_m. A star labelling (m = 1) is tried as a fallback.
  std::uint32_t walk_m = 1;
  if (g.degree(0) == 1) {
    std::uint32_t prev = 0;
    std::uint32_t cur = g.neighbors(0)[0];
    walk_m = 2;
    while (g.degree(cur) == 2) {
      const auto nb = g.neighbors(cur);
      const std::uint32_t next = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = next;
      ++walk_m;
    }
  }

  for (std::uint32_t m : {walk_m, 1u, n}) {
    if (m < 1 || m > n) continue;
    const Graph candidate = build_fuse(m, n);
    if (candidate == g) return FuseSpec{n, m};
  }
  return std::nullopt;
}

}  // namespace pebble
