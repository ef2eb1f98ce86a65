#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bgwcoal {

/// SplitMix64 finalizer; used to derive well-separated per-replica seeds from
/// a 64-bit master seed and a replica counter.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Counter-mode seed derivation: replica r of a run seeded with `master`
/// draws from an engine seeded with mix_seed(master, r).
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t counter) {
  return splitmix64(master ^ (0xD1342543DE82EF95ull * (counter + 1)));
}

/// Deterministic replica-local generator. All variate code is written out
/// here instead of using <random> distributions, whose outputs are
/// implementation-defined; this keeps runs bit-reproducible.
class ReplicaRng {
 public:
  explicit ReplicaRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0,1); never returns an exact endpoint, so
  /// -log(u) is always finite and positive.
  double uniform_open01() {
    return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
  }

  /// Exponential waiting time with the given rate (> 0).
  double exponential(double rate) { return -std::log(uniform_open01()) / rate; }

  /// Unbiased uniform integer in [0, n), n >= 1 (Lemire's method).
  std::uint64_t uniform_below(std::uint64_t n) {
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bgwcoal
