#include "pebble/io.hpp"

#include <charconv>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace pebble {

namespace {

std::uint64_t parse_u64(const std::string& text, const char* what) {
  std::uint64_t value = 0;
  const auto* begin = text.data();
  const auto* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw std::invalid_argument(std::string("malformed ") + what + ": '" + text + "'");
  return value;
}

}  // namespace

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  const auto edges = g.edges();
  out << g.vertex_count() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

Graph parse_edge_list(std::istream& in) {
  std::uint64_t n = 0, m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("edge list: malformed header");
  if (n == 0 || n > 0xffffffffull) throw std::invalid_argument("edge list: bad vertex count");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t u = 0, v = 0;
    if (!(in >> u >> v)) throw std::invalid_argument("edge list: truncated edge lines");
    if (u < 1 || u > n || v < 1 || v > n)
      throw std::invalid_argument("edge list: vertex id out of range (ids are 1-indexed)");
    edges.emplace_back(static_cast<std::uint32_t>(u - 1), static_cast<std::uint32_t>(v - 1));
  }
  return Graph::from_edges(static_cast<std::uint32_t>(n), edges);
}

std::string format_configuration(const Configuration& c) {
  std::ostringstream out;
  bool first = true;
  for (std::uint32_t v = 0; v < c.vertex_count(); ++v) {
    if (c[v] == 0) continue;
    if (!first) out << ' ';
    out << v + 1 << ':' << c[v];
    first = false;
  }
  out << '\n';
  return out.str();
}

Configuration parse_configuration(std::istream& in, std::uint32_t n) {
  std::vector<std::uint64_t> counts(n, 0);
  std::vector<bool> assigned(n, false);
  std::string token;
  while (in >> token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == token.size())
      throw std::invalid_argument("configuration: expected 'v:count', got '" + token + "'");
    const std::uint64_t v = parse_u64(token.substr(0, colon), "vertex id");
    const std::uint64_t count = parse_u64(token.substr(colon + 1), "pebble count");
    if (v < 1 || v > n)
      throw std::invalid_argument("configuration: vertex id " + std::to_string(v) +
                                  " out of range (1.." + std::to_string(n) + ")");
    if (assigned[v - 1])
      throw std::invalid_argument("configuration: duplicate vertex " + std::to_string(v));
    assigned[v - 1] = true;
    counts[v - 1] = count;
  }
  return Configuration(std::move(counts));
}

std::uint64_t parse_count(const std::string& text) {
  const auto caret = text.find('^');
  if (caret == std::string::npos) return parse_u64(text, "count");
  const std::uint64_t base = parse_u64(text.substr(0, caret), "count base");
  const std::uint64_t exp = parse_u64(text.substr(caret + 1), "count exponent");
  if (base != 2 || exp > 62)
    throw std::invalid_argument("count expressions support 2^k with k <= 62");
  return 1ull << exp;
}

std::vector<std::uint32_t> parse_n_grid(const std::string& text) {
  std::vector<std::uint32_t> grid;
  auto push = [&grid](std::uint64_t v) {
    if (v < 1 || v > 0xffffffffull)
      throw std::invalid_argument("grid size out of range");
    grid.push_back(static_cast<std::uint32_t>(v));
  };

  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t lo = parse_count(text.substr(0, dots));
    const std::uint64_t hi = parse_count(text.substr(dots + 2));
    if ((lo & (lo - 1)) != 0 || (hi & (hi - 1)) != 0 || lo > hi)
      throw std::invalid_argument("range grids use powers of two: 2^a..2^b with a <= b");
    for (std::uint64_t v = lo; v <= hi; v *= 2) push(v);
    return grid;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty grid entry");
    push(parse_count(item));
  }
  if (grid.empty()) throw std::invalid_argument("empty grid");
  return grid;
}

}  // namespace pebble
