#include "pebble/configuration.hpp"

#include <stdexcept>

namespace pebble {

Configuration::Configuration(std::vector<std::uint64_t> counts)
    : counts_(std::move(counts)) {
  if (counts_.empty()) throw std::invalid_argument("configuration needs at least one vertex");
  std::uint64_t sum = 0;
  for (std::uint64_t c : counts_) {
    if (__builtin_add_overflow(sum, c, &sum) || sum > kMaxPebbles)
      throw std::invalid_argument("pebble total exceeds 2^62");
  }
  total_ = sum;
}

}  // namespace pebble
