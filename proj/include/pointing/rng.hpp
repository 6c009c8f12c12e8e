#pragma once

#include <cstdint>
#include <random>

namespace pointing {

/// Seed for substream `stream` of `seed`: splitmix64(seed + (stream + 1) * phi64).
/// Each trial index gets its own substream so results do not depend on the
/// order in which trials are generated.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

/// std::mt19937_64 with distribution code kept in-house, since the standard
/// distributions are not specified bit-for-bit across library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(substream_seed(seed, stream));
  }

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pointing
