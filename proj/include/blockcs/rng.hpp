#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace blockcs {

// Mixing step of the splitmix64 generator. Advances `state` and returns the
// next output word. Also used on its own as a seed hash.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream-splitting rule: every consumer of randomness owns a child seed
// obtained as derive_seed(parent_seed, tag). Tags used by this project:
//
//   1  sensing-matrix entries        (matrix stream)
//   2  signal supports and values    (signal stream)
//   3  additive noise                (noise stream)
//
// Benchmark trials first derive a per-trial seed by folding the cell
// coordinates and the trial index into the master seed with the same rule
// (see harness.cpp), then split that per-trial seed into the three streams
// above. Regenerating any one component therefore never consumes draws that
// belong to another.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t s = seed ^ (0xD2B74407B1CE6E93ULL * (tag + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b >> 1);
}

constexpr std::uint64_t kMatrixStream = 1;
constexpr std::uint64_t kSignalStream = 2;
constexpr std::uint64_t kNoiseStream = 3;

// xoshiro256++ with all derived sampling routines spelled out, so that a
// given seed yields the same draw sequence on every platform (the standard
// library leaves <random> distribution algorithms implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). floor(u * n) is exact for the n used here
  // (block lengths and block counts, far below 2^53).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
  }

  // One Box-Muller pair: two independent N(0, 1) variates per call. Fixed
  // consumption of two uniforms keeps streams aligned regardless of values.
  void normal_pair(double& a, double& b) {
    double u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * M_PI * u2;
    a = r * std::cos(t);
    b = r * std::sin(t);
  }

  // Circularly symmetric complex normal CN(0, variance): real and imaginary
  // parts are independent N(0, variance / 2).
  std::complex<double> cnormal(double variance) {
    double a, b;
    normal_pair(a, b);
    double s = std::sqrt(variance * 0.5);
    return {s * a, s * b};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace blockcs
