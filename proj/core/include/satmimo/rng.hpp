#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace satmimo {

// SplitMix64 finalizer. Also used to derive substream keys.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Deterministic keyed random stream (SplitMix64 sequence).
//
// Substreams are derived from the parent's key and logical indices only,
// never from the parent's position, so a draw schedule keyed by
// (seed, purpose, ut, sample) produces bit-identical values for any worker
// count or evaluation order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : key_(mix64(seed + kGoldenGamma)), state_(key_) {}

  RngStream substream(std::uint64_t a, std::uint64_t b = 0) const {
    RngStream child(0);
    child.key_ = mix64(mix64(key_ + a * kGoldenGamma) + b * kGoldenGamma);
    child.state_ = child.key_;
    return child;
  }

  std::uint64_t next() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard real normal via Box-Muller (explicit, platform-independent).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // CN(0,1): real and imaginary parts are independent N(0, 1/2).
  std::complex<double> complex_normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    return {r * std::cos(2.0 * std::numbers::pi * u2), r * std::sin(2.0 * std::numbers::pi * u2)};
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t state_;
};

}  // namespace satmimo
