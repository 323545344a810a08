#pragma once

#include "trendlab/candle.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace trendlab {

/// A real-valued series aligned to the candle index. Entries outside
/// [valid_from, valid_to] are NaN, never silently zero.
struct IndicatorSeries {
  std::vector<double> values;
  std::size_t valid_from = 0;
  std::size_t valid_to = 0; // inclusive

  bool defined(std::size_t i) const {
    return i < values.size() && !std::isnan(values[i]);
  }
  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }

  static IndicatorSeries undefined_of_size(std::size_t n) {
    IndicatorSeries s;
    s.values.assign(n, std::numeric_limits<double>::quiet_NaN());
    s.valid_from = n;
    s.valid_to = n;
    return s;
  }
};

/// Exponential moving average, alpha = 2/(period+1), seeded with x_0.
IndicatorSeries ema(const std::vector<double>& x, std::size_t period);

struct MacdResult {
  IndicatorSeries macd_line;
  IndicatorSeries signal_line;
};

/// MACD line = ema(fast) - ema(slow); signal line = ema of the MACD line.
MacdResult macd(const std::vector<double>& x, std::size_t fast,
                std::size_t slow, std::size_t signal_period);

/// TR_0 = high_0 - low_0; TR_t = max{high-low, high-close[1], close[1]-low}.
IndicatorSeries true_range(const CandleSeries& series);

/// Simple moving average of the true range over `period` trailing bars,
/// expanding window before bar period-1.
IndicatorSeries atr(const CandleSeries& series, std::size_t period = 100);

/// Centered moving average over 2*floor(n/2)+1 bars; defined on
/// [floor(n/2), M-1-floor(n/2)].
IndicatorSeries centered_ma(const std::vector<double>& x, std::size_t n);

} // namespace trendlab
