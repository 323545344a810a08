#include "trendlab/indicators.hpp"

#include <algorithm>

namespace trendlab {

IndicatorSeries ema(const std::vector<double>& x, std::size_t period) {
  if (period == 0) throw Error("ema: period must be >= 1");
  if (x.empty()) throw Error("ema: empty input");
  const double alpha = 2.0 / (static_cast<double>(period) + 1.0);
  IndicatorSeries out;
  out.values.resize(x.size());
  out.valid_from = 0;
  out.valid_to = x.size() - 1;
  out.values[0] = x[0];
  for (std::size_t t = 1; t < x.size(); ++t)
    out.values[t] = alpha * x[t] + (1.0 - alpha) * out.values[t - 1];
  return out;
}

MacdResult macd(const std::vector<double>& x, std::size_t fast,
                std::size_t slow, std::size_t signal_period) {
  if (fast < 1 || fast >= slow) throw Error("macd: need 1 <= fast < slow");
  if (signal_period < 1) throw Error("macd: signal period must be >= 1");
  const IndicatorSeries ef = ema(x, fast);
  const IndicatorSeries es = ema(x, slow);
  MacdResult r;
  r.macd_line.values.resize(x.size());
  r.macd_line.valid_from = 0;
  r.macd_line.valid_to = x.size() - 1;
  for (std::size_t t = 0; t < x.size(); ++t)
    r.macd_line.values[t] = ef.values[t] - es.values[t];
  r.signal_line = ema(r.macd_line.values, signal_period);
  return r;
}

IndicatorSeries true_range(const CandleSeries& series) {
  if (series.empty()) throw Error("true_range: empty series");
  IndicatorSeries out;
  out.values.resize(series.size());
  out.valid_from = 0;
  out.valid_to = series.size() - 1;
  out.values[0] = series[0].high - series[0].low;
  for (std::size_t t = 1; t < series.size(); ++t) {
    const double prev_close = series[t - 1].close;
    const double h = series[t].high;
    const double l = series[t].low;
    out.values[t] = std::max({h - l, h - prev_close, prev_close - l});
  }
  return out;
}

IndicatorSeries atr(const CandleSeries& series, std::size_t period) {
  if (period == 0) throw Error("atr: period must be >= 1");
  const IndicatorSeries tr = true_range(series);
  IndicatorSeries out;
  out.values.resize(tr.size());
  out.valid_from = 0;
  out.valid_to = tr.size() - 1;
  double sum = 0.0;
  for (std::size_t t = 0; t < tr.size(); ++t) {
    sum += tr.values[t];
    if (t >= period) sum -= tr.values[t - period];
    const std::size_t window = std::min(t + 1, period);
    out.values[t] = sum / static_cast<double>(window);
  }
  return out;
}

IndicatorSeries centered_ma(const std::vector<double>& x, std::size_t n) {
  if (n == 0) throw Error("centered_ma: n must be >= 1");
  const std::size_t h = n / 2;
  if (x.size() < 2 * h + 1)
    throw Error("centered_ma: series too short for window " +
                std::to_string(2 * h + 1));
  IndicatorSeries out = IndicatorSeries::undefined_of_size(x.size());
  out.valid_from = h;
  out.valid_to = x.size() - 1 - h;
  const double width = static_cast<double>(2 * h + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < 2 * h + 1 && i < x.size(); ++i) sum += x[i];
  for (std::size_t t = h; t + h < x.size(); ++t) {
    out.values[t] = sum / width;
    if (t + h + 1 < x.size()) {
      sum += x[t + h + 1];
      sum -= x[t - h];
    }
  }
  return out;
}

} // namespace trendlab
