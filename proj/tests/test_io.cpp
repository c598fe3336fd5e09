#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "helpers.hpp"
#include "pebble/io.hpp"
#include "pebble/rng.hpp"

using namespace pebble;

TEST_CASE("edge list round trip on random fuses") {
  SplitMix64 rng(77);
  for (int rep = 0; rep < 30; ++rep) {
    const auto n = 1 + static_cast<std::uint32_t>(rng.below(40));
    const auto m = 1 + static_cast<std::uint32_t>(rng.below(n));
    const Graph g = build_fuse(m, n);
    std::istringstream in(format_edge_list(g));
    CHECK(parse_edge_list(in) == g);
  }
}

TEST_CASE("edge list format is 1-indexed with a header") {
  CHECK(format_edge_list(build_path(3)) == "3 2\n1 2\n2 3\n");
  CHECK(format_edge_list(build_path(1)) == "1 0\n");
}

TEST_CASE("edge list parse errors") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_edge_list(in);
  };
  CHECK_THROWS_AS(parse("junk"), std::invalid_argument);
  CHECK_THROWS_AS(parse("2 1\n1 3\n"), std::invalid_argument);  // out of range
  CHECK_THROWS_AS(parse("2 1\n0 1\n"), std::invalid_argument);  // 0 with 1-indexed ids
  CHECK_THROWS_AS(parse("2 2\n1 2\n"), std::invalid_argument);  // truncated
}

TEST_CASE("configuration text round trip") {
  SplitMix64 rng(78);
  for (int rep = 0; rep < 30; ++rep) {
    const auto n = 1 + static_cast<std::uint32_t>(rng.below(20));
    const auto t = rng.below(40);
    const Configuration c = pebble::testing::random_configuration(n, t, rng);
    std::istringstream in(format_configuration(c));
    CHECK(parse_configuration(in, n) == c);
  }
}

TEST_CASE("configuration format omits zeros and is 1-indexed") {
  const Configuration c(std::vector<std::uint64_t>{0, 1, 2, 0});
  CHECK(format_configuration(c) == "2:1 3:2\n");
  std::istringstream in("2:1 3:2");
  const Configuration parsed = parse_configuration(in, 4);
  CHECK(parsed == c);
  CHECK(parsed.total() == 3);
}

TEST_CASE("configuration parse errors") {
  auto parse = [](const std::string& s, std::uint32_t n) {
    std::istringstream in(s);
    return parse_configuration(in, n);
  };
  CHECK_THROWS_AS(parse("5:1", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse("0:1", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse("1:1 1:2", 4), std::invalid_argument);  // duplicate
  CHECK_THROWS_AS(parse("nonsense", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse("1:", 4), std::invalid_argument);
  CHECK(parse("", 3).total() == 0);  // empty configuration is legal
}

TEST_CASE("count expressions") {
  CHECK(parse_count("4096") == 4096);
  CHECK(parse_count("2^16") == 65536);
  CHECK_THROWS_AS(parse_count("3^4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_count("2^63"), std::invalid_argument);
  CHECK_THROWS_AS(parse_count("abc"), std::invalid_argument);
}

TEST_CASE("grid expressions") {
  CHECK(parse_n_grid("2^12..2^14") == std::vector<std::uint32_t>{4096, 8192, 16384});
  CHECK(parse_n_grid("1024") == std::vector<std::uint32_t>{1024});
  CHECK(parse_n_grid("64,128,512") == std::vector<std::uint32_t>{64, 128, 512});
  CHECK_THROWS_AS(parse_n_grid("2^14..2^12"), std::invalid_argument);
  CHECK_THROWS_AS(parse_n_grid("100..200"), std::invalid_argument);  // not powers of two
  CHECK_THROWS_AS(parse_n_grid(""), std::invalid_argument);
}
