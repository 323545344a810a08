#include "trendlab/candle.hpp"

#include <algorithm>
#include <cmath>

namespace trendlab {

void validate_candle(const Candle& c, const std::string& context) {
  const double prices[4] = {c.open, c.high, c.low, c.close};
  for (double p : prices) {
    if (!std::isfinite(p)) throw Error(context + ": non-finite price");
    if (p <= 0.0) throw Error(context + ": non-positive price");
  }
  if (c.low > c.high) throw Error(context + ": high < low");
  if (c.low > std::min(c.open, c.close))
    throw Error(context + ": low above open/close");
  if (c.high < std::max(c.open, c.close))
    throw Error(context + ": high below open/close");
}

std::vector<double> mid_price_series(const CandleSeries& series) {
  if (series.empty()) throw Error("mid_price_series: empty series");
  std::vector<double> a(series.size());
  for (std::size_t t = 0; t < series.size(); ++t)
    a[t] = (series[t].high + series[t].low) / 2.0;
  return a;
}

} // namespace trendlab
