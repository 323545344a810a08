#pragma once

#include "trendlab/candle.hpp"
#include "trendlab/indicators.hpp"

#include <cstddef>
#include <tuple>
#include <vector>

namespace trendlab {

/// Configuration of the MACD-driven stop-and-reverse process.
/// `timescale` is the single controlling parameter: it scales the MACD
/// defaults (12, 26, 9) simultaneously.
struct SarConfig {
  double timescale = 1.0;
  double delta_factor = 0.3; // hysteresis threshold as a multiple of ATR
  std::size_t atr_period = 100;
  std::size_t macd_fast = 12;
  std::size_t macd_slow = 26;
  std::size_t macd_signal = 9;
};

enum class Direction { Undefined, Up, Down };

struct SarSeries {
  std::vector<Direction> direction; // one entry per bar
  std::vector<std::size_t> flip_indices; // bars where the direction changed
};

/// A confirmed relevant extremum. `identified_at` is the bar where the
/// SAR process flipped away from the run that produced it; a trailing
/// run cut off by the series end yields a provisional event with
/// identified_at at the last bar.
struct ExtremumEvent {
  enum class Kind { Minimum, Maximum };
  Kind kind = Kind::Minimum;
  std::size_t at = 0;
  double price = 0.0;
  std::size_t identified_at = 0;
  bool provisional = false;
};

/// MACD parameters after timescale scaling: round(12 t), round(26 t),
/// round(9 t), each clamped to >= 1; slow bumped by one on collision.
std::tuple<std::size_t, std::size_t, std::size_t>
scaled_macd_params(const SarConfig& config);

/// Runs the SAR process: state flips up at the first bar with
/// macd - signal >= +delta and down at the first bar with
/// macd - signal <= -delta, delta = delta_factor * ATR recomputed per
/// bar. With delta = 0 a strict inequality is required, so a flat
/// market never flips. Before the first qualifying bar the direction
/// is undefined.
SarSeries sar_process(const CandleSeries& series, const SarConfig& config);

/// One extremum per SAR run: the bar with the extreme high (up run) or
/// low (down run), earliest on ties. Output strictly alternates.
std::vector<ExtremumEvent> minmax_extrema(const CandleSeries& series,
                                          const SarSeries& sar);

/// Mean gap between consecutive same-kind extrema, min pairs and max
/// pairs pooled. Throws when no same-kind pair exists.
double average_period_length(const std::vector<ExtremumEvent>& extrema);

/// Convenience composition used by calibration and the CLI.
std::vector<ExtremumEvent> run_minmax(const CandleSeries& series,
                                      const SarConfig& config);

} // namespace trendlab
