#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace l2h::detail {

// Distribution objects are implementation-defined; map by hand so that
// seeded runs agree across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

inline long uniform_int(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline std::vector<std::uint32_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint32_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[uniform_below(rng, i)]);
  return p;
}

}  // namespace l2h::detail
