#pragma once

#include "trendlab/candle.hpp"

#include <cstdint>
#include <vector>

namespace trendlab {

/// SplitMix64: the fixture generator's only randomness source. The
/// algorithm is fixed here (not delegated to the standard library) so
/// that fixtures are bit-identical across platforms and languages.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) using the top 53 bits.
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via the Irwin-Hall sum of 12 uniforms. Pure
  /// arithmetic, so the stream is reproducible bit for bit.
  double gaussian() {
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += uniform();
    return s - 6.0;
  }

private:
  std::uint64_t state_;
};

struct SynthSpec {
  enum class Kind { Sine, TrendStaircase, RandomWalk };
  Kind kind = Kind::Sine;
  std::size_t length = 1000;
  std::uint64_t seed = 1;

  // sine
  double period = 50.0;
  double amplitude = 10.0;
  double base = 100.0;
  double noise_sigma = 0.0;

  // random walk
  double step_sigma = 1.0;
  double drift = 0.0;

  // staircase: explicit mid-price anchors (bar, price); the path is
  // linear in between and flat after the last anchor
  std::vector<std::pair<std::size_t, double>> anchors;

  // candle half-range around the mid path
  double half_range = 0.2;
};

/// Deterministic candle series for a spec; identical (spec, seed) give
/// identical output.
CandleSeries generate(const SynthSpec& spec);

/// Mid-price path for a spec (the series generate() wraps in candles).
std::vector<double> generate_path(const SynthSpec& spec);

} // namespace trendlab
