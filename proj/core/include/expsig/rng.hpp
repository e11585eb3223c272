// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace expsig {

/// splitmix64 finalizer: bijective 64-bit mix with full avalanche. Used to
/// derive independent engine seeds from (user seed, stream indices) so every
/// (pairing, block) gets its own reproducible stream regardless of how many
/// draws other streams consume.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic substream engine for (seed, a, b). Equal triples give equal
/// streams; distinct triples give streams with independent-looking seeds.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0) {
  const std::uint64_t s = mix64(mix64(mix64(seed) ^ a) ^ b);
  return std::mt19937_64(s);
}

}  // namespace expsig
