#pragma once

#include <cstdint>
#include <limits>

namespace szoht {

/// Counter-based, splittable random stream.
///
/// Output i of a stream is a bijective mix of (key, i), so a stream is fully
/// described by its key and counter. `split(n)` derives an independent child
/// keyed on (key, n) without touching the parent; `fork()` consumes one draw
/// from the parent and keys the child on it. Identical seeds and call
/// sequences give bitwise-identical outputs on every platform: no
/// implementation-defined std:: distributions are involved.
///
/// A single stream is not thread-safe; hand each thread its own split.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64() { return mix(key_ + (counter_++) * kGolden); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), unbiased (Lemire's multiply-and-reject).
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via Box-Muller; the second variate of a pair is cached.
  double normal();

  RngStream split(std::uint64_t stream) const {
    return RngStream(Keyed{}, mix(key_ ^ mix(stream + 0x243f6a8885a308d3ULL)));
  }

  RngStream fork() { return RngStream(Keyed{}, mix(next_u64() ^ 0x13198a2e03707344ULL)); }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  struct Keyed {};
  RngStream(Keyed, std::uint64_t key) : key_(key) {}

  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  // SplitMix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace szoht
