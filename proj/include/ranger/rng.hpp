#pragma once

#include <cstdint>

namespace ranger {

namespace detail {

/// SplitMix64 output function (Steele, Lea, Flood / Vigna). Bijective on
/// 64-bit words, used both as a finalizing mixer and as the step function.
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

} // namespace detail

/// Counter-based random stream keyed by (seed, stream index).
///
/// Every simulated pair owns one PairRng derived purely from the run seed and
/// the pair index, so a result never depends on which worker processed the
/// pair or in what order. Draws within a stream advance a SplitMix64 walk.
class PairRng {
public:
  PairRng(uint64_t seed, uint64_t stream)
      : state_(detail::mix64(seed + detail::kGolden) ^
               detail::mix64(stream * detail::kGolden + 0x632BE59BD9B4E019ULL)) {}

  uint64_t next_u64() {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

  /// Uniform draw in [0, 1) with 53 significant bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
  uint64_t state_;
};

/// FNV-1a over a byte string; used for config fingerprints.
inline uint64_t fnv1a64(const void *data, uint64_t len) {
  const auto *bytes = static_cast<const unsigned char *>(data);
  uint64_t h = 0xCBF29CE484222325ULL;
  for (uint64_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

} // namespace ranger
