#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace bind {

/// Deterministic keyed random stream (SplitMix64 core).
///
/// Every consumer derives its own stream from a user seed plus fixed key
/// words, so independent draws never share state and the whole pipeline is
/// reproducible bit-for-bit across platforms: uniforms are built from the
/// top 53 bits of the state mix, never from libm.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Derive an independent stream from (seed, k1, k2, k3).
  static Rng keyed(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2 = 0,
                   std::uint64_t k3 = 0) {
    std::uint64_t s = mix(seed + kGamma);
    s = mix(s ^ (k1 + kGamma));
    s = mix(s ^ (k2 + 2 * kGamma));
    s = mix(s ^ (k3 + 3 * kGamma));
    return Rng(s);
  }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform in [0,1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform index in [0, n). Multiply-shift; bias is O(n/2^64).
  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

/// k distinct indices from [0, n), in draw order (partial Fisher-Yates).
inline std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n,
                                                           std::size_t k) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k && i < n; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace bind
