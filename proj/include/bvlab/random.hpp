#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

#include "bvlab/rational.hpp"

namespace bvlab {

// mt19937_64's output sequence is fixed by the standard; the distributions are not,
// so bounded draws are done here to keep generated corpora identical across toolchains.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection sampling.
inline std::uint64_t draw_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("draw_below: zero bound");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// True with probability p, exactly for p = a/b with b < 2^64.
inline bool draw_bernoulli(Rng& rng, const Rational& p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  if (!p.get_den().fits_ulong_p()) throw std::invalid_argument("draw_bernoulli: denominator too large");
  const std::uint64_t den = p.get_den().get_ui();
  const std::uint64_t num = p.get_num().get_ui();
  return draw_below(rng, den) < num;
}

/// Stable 64-bit FNV-1a, used to derive per-instance seeds from names.
inline std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace bvlab
