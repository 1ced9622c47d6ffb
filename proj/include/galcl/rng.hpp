#pragma once
/*
 * Deterministic random sampling.
 *
 * The verification suite must produce byte-identical reports across runs,
 * so uniform doubles are generated directly from the mt19937_64 stream
 * ((x >> 11) * 2^-53) instead of through std::uniform_real_distribution,
 * whose output is implementation-defined.
 */

#include <cstdint>
#include <random>
#include <string_view>

#include "galcl/smallvec.hpp"

namespace galcl {

class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// FNV-1a over arbitrary bytes; used to derive per-check and per-state
// sub-seeds so that every sampled residual is replayable in isolation.
inline std::uint64_t fnv1a(const void* data, std::size_t n,
                           std::uint64_t h = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = fnv1a(tag.data(), tag.size());
  return fnv1a(&seed, sizeof(seed), h);
}

// Sub-seed tied to the numeric content of a state, so auxiliary draws
// (finite-difference directions, boost velocities) are a pure function of
// the state being checked.
inline std::uint64_t hash_state(const Vec& w) {
  std::uint64_t h = fnv1a(&w.m, sizeof(w.m));
  for (int i = 0; i < w.m; ++i) {
    double x = w[i];
    h = fnv1a(&x, sizeof(x), h);
  }
  return h;
}

}  // namespace galcl
