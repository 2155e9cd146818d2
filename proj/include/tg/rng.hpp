#pragma once

#include <cstdint>
#include <random>

namespace tg {

using Rng = std::mt19937_64;

/// Unbiased uniform draw from [0, n). Multiply-shift with rejection
/// (Lemire) instead of std::uniform_int_distribution, whose output
/// sequence is implementation-defined; transcripts must replay
/// bit-identically regardless of the standard library.
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    std::uint64_t t = (0 - n) % n;
    while (lo < t) {
      m = static_cast<unsigned __int128>(rng()) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace tg
