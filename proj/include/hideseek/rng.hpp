#pragma once

#include <cstdint>
#include <random>

namespace hideseek {

/// Seeded generator passed by value. `split(k)` derives an independent stream
/// that depends only on (seed, k), so batch results never depend on thread
/// scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  Rng split(std::uint64_t k) const {
    // Mix the parent stream into the child stream id.
    return Rng(seed_, (stream_ * 0x9E3779B97F4A7C15ull) ^ (k + 0xD1B54A32D192ED03ull));
  }

  /// Uniform on [0, 1) with 53 random bits; bit-identical across standard libraries.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace hideseek
