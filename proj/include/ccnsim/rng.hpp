#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ccnsim {

/// Deterministic random stream, derived from the master seed and a per-consumer
/// stream id ("mobility.client1", "app.client1", ...). Two runs with the same
/// (seed, stream_id) produce the same sequence; adding a consumer never
/// perturbs the draws of existing consumers.
///
/// The engine is std::mt19937_64 (bit-stable per the standard); all variate
/// mappings are done here rather than with std::*_distribution, whose output
/// is implementation-defined.
class RngStream {
public:
  RngStream(std::uint64_t master_seed, std::string_view stream_id);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0,1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). Requires n >= 1. Unbiased (Lemire rejection).
  std::uint64_t uniform_index(std::uint64_t n);

  /// Exponential variate with the given mean (> 0).
  double exponential(double mean);

private:
  std::mt19937_64 engine_;
};

/// Stable 64-bit FNV-1a over a byte string. Also used for config hashing.
std::uint64_t fnv1a64(std::string_view bytes);

/// SplitMix64 finalizer, used to decorrelate derived seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ccnsim
