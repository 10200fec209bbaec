#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace qst {

// Counter-based generator: output i is a pure function of (seed, stream, i),
// so every consumer in the toolkit is reproducible from one 64-bit seed and
// independent of evaluation order across streams. The mixer is the SplitMix64
// finalizer.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix(seed + 0x9e3779b97f4a7c15ull * mix(stream + 1))) {}

  std::uint64_t next() { return at(counter_++); }

  // Random value in [0, bound) via the multiply-shift reduction.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // One standard-normal pair (Box-Muller); keeps the counter advance fixed
  // at two draws per pair.
  std::pair<double, double> gaussian_pair() {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  // Derived independent stream; does not disturb this generator's counter.
  SeededRng fork(std::uint64_t stream) const { return SeededRng(base_, stream); }

 private:
  std::uint64_t at(std::uint64_t counter) const {
    return mix(base_ + (counter + 1) * 0x9e3779b97f4a7c15ull);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace qst
