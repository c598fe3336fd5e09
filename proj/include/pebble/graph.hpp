#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pebble {

enum class GraphKind { fuse, path, star, tree, general };

/// Wick/spark layout of the fuse F_{m,n}: wick vertices v_1..v_m form a path,
/// sparks v_{m+1}..v_n all attach to the center v_m. Vertices are stored
/// 0-indexed; v_i is vertex i-1.
struct FuseSpec {
  std::uint32_t n = 0;
  std::uint32_t m = 0;

  std::uint32_t center() const { return m - 1; }
  std::uint32_t spark_count() const { return n - m; }
  bool is_wick(std::uint32_t v) const { return v < m; }
  bool is_spark(std::uint32_t v) const { return v >= m; }
};

/// Immutable connected simple graph. Adjacency is a compact offset+neighbor
/// (CSR) layout so solver passes touch memory sequentially. Trees additionally
/// carry a BFS order and parent array rooted at vertex 0, shared by all
/// concurrent trial workers.
class Graph {
 public:
  /// Validates and builds from a 0-indexed edge list: connected, no
  /// self-loops, no multi-edges. Kind is tree or general; use detect_fuse to
  /// recover a fuse labelling.
  static Graph from_edges(std::uint32_t n,
                          const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

  std::uint32_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }

  GraphKind kind() const { return kind_; }
  bool is_tree() const { return is_tree_; }
  const std::optional<FuseSpec>& fuse() const { return fuse_; }

  /// BFS order (parents precede children) and parent array rooted at vertex 0.
  /// Empty for non-trees. parent[0] == 0.
  std::span<const std::uint32_t> bfs_order() const { return bfs_order_; }
  std::span<const std::uint32_t> parent() const { return parent_; }

  /// Edge list with u < v, sorted; 0-indexed.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

  /// Structural equality: same vertex count and adjacency, kind tags ignored.
  bool operator==(const Graph& other) const {
    return n_ == other.n_ && offsets_ == other.offsets_ && neighbors_ == other.neighbors_;
  }

  friend Graph build_fuse(std::uint32_t m, std::uint32_t n);
  friend Graph build_path(std::uint32_t n);
  friend Graph build_star(std::uint32_t n);

 private:
  Graph() = default;
  static Graph from_adjacency(std::uint32_t n, std::vector<std::uint32_t> offsets,
                              std::vector<std::uint32_t> neighbors, GraphKind kind,
                              std::optional<FuseSpec> fuse);
  void build_tree_scaffold();

  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> offsets_;    // n+1 entries
  std::vector<std::uint32_t> neighbors_;  // 2|E| entries, sorted within a row
  GraphKind kind_ = GraphKind::general;
  bool is_tree_ = false;
  std::optional<FuseSpec> fuse_;
  std::vector<std::uint32_t> bfs_order_;
  std::vector<std::uint32_t> parent_;
};

/// The fuse F_{m,n}: edges {v_i, v_{i+1}} for 1 <= i <= m-1 and {v_i, v_m} for
/// m+1 <= i <= n. m = n gives the path P_n, m = 1 the star centered at v_1.
/// Requires 1 <= m <= n.
Graph build_fuse(std::uint32_t m, std::uint32_t n);

/// Path P_n; identical edge set to build_fuse(n, n).
Graph build_path(std::uint32_t n);

/// Star on n vertices centered at v_1; identical edge set to build_fuse(1, n).
Graph build_star(std::uint32_t n);

/// Wick length whose fuse has threshold near t: round(lg(t^2/n)) clamped to
/// [1, n]. Requires t^2 >= n >= 2 (below that the spectrum floor sqrt(n)
/// applies and no fuse fits).
std::uint32_t wick_length_for_target_threshold(std::uint64_t t, std::uint64_t n);

/// Recovers the canonical fuse labelling of g if its adjacency equals
/// build_fuse(m, n) for some m (paths report the largest such m).
std::optional<FuseSpec> detect_fuse(const Graph& g);

}  // namespace pebble
