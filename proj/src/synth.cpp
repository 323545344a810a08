#include "trendlab/synth.hpp"

#include <algorithm>
#include <cmath>

namespace trendlab {

std::vector<double> generate_path(const SynthSpec& spec) {
  if (spec.length < 1) throw Error("synth: length must be >= 1");
  std::vector<double> mid(spec.length);
  SplitMix64 rng(spec.seed);

  switch (spec.kind) {
    case SynthSpec::Kind::Sine: {
      if (spec.period < 2.0) throw Error("synth: sine period must be >= 2");
      if (spec.noise_sigma < 0.0) throw Error("synth: negative noise sigma");
      const double w = 2.0 * M_PI / spec.period;
      for (std::size_t t = 0; t < spec.length; ++t) {
        double v = spec.base + spec.amplitude * std::sin(w * static_cast<double>(t));
        if (spec.noise_sigma > 0.0) v += spec.noise_sigma * rng.gaussian();
        mid[t] = v;
      }
      break;
    }
    case SynthSpec::Kind::RandomWalk: {
      double v = spec.base;
      for (std::size_t t = 0; t < spec.length; ++t) {
        mid[t] = v;
        v += spec.drift + spec.step_sigma * rng.gaussian();
      }
      break;
    }
    case SynthSpec::Kind::TrendStaircase: {
      if (spec.anchors.empty()) throw Error("synth: staircase needs anchors");
      for (std::size_t i = 1; i < spec.anchors.size(); ++i)
        if (spec.anchors[i].first <= spec.anchors[i - 1].first)
          throw Error("synth: staircase anchors must be strictly increasing");
      if (spec.anchors.back().first >= spec.length)
        throw Error("synth: staircase anchor beyond series length");
      std::size_t k = 0;
      for (std::size_t t = 0; t < spec.length; ++t) {
        if (t <= spec.anchors.front().first) {
          mid[t] = spec.anchors.front().second;
          continue;
        }
        if (t >= spec.anchors.back().first) {
          mid[t] = spec.anchors.back().second;
          continue;
        }
        while (spec.anchors[k + 1].first < t) ++k;
        const auto [t0, p0] = spec.anchors[k];
        const auto [t1, p1] = spec.anchors[k + 1];
        const double f = static_cast<double>(t - t0) / static_cast<double>(t1 - t0);
        mid[t] = p0 + f * (p1 - p0);
      }
      break;
    }
  }
  return mid;
}

CandleSeries generate(const SynthSpec& spec) {
  if (spec.half_range < 0.0) throw Error("synth: negative half range");
  const std::vector<double> mid = generate_path(spec);
  CandleSeries series;
  series.symbol = "synthetic";
  series.aggregation = "1d";
  series.candles.resize(mid.size());
  for (std::size_t t = 0; t < mid.size(); ++t) {
    Candle& c = series.candles[t];
    c.index = t;
    c.timestamp = static_cast<std::int64_t>(t) * 86400;
    c.high = mid[t] + spec.half_range;
    c.low = mid[t] - spec.half_range;
    // open/close sit inside the range, leaning toward the neighbours
    const double prev = t > 0 ? mid[t - 1] : mid[t];
    const double next = t + 1 < mid.size() ? mid[t + 1] : mid[t];
    c.open = std::clamp((mid[t] + prev) / 2.0, c.low, c.high);
    c.close = std::clamp((mid[t] + next) / 2.0, c.low, c.high);
    if (c.low <= 0.0)
      throw Error("synth: path crossed zero; raise the base price");
  }
  return series;
}

} // namespace trendlab
