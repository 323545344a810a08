#include "trendlab/sar_minmax.hpp"

#include <cmath>

namespace trendlab {

std::tuple<std::size_t, std::size_t, std::size_t>
scaled_macd_params(const SarConfig& config) {
  if (config.timescale <= 0.0) throw Error("timescale must be positive");
  auto scale = [&](std::size_t base) {
    const double v = std::round(static_cast<double>(base) * config.timescale);
    return v < 1.0 ? std::size_t{1} : static_cast<std::size_t>(v);
  };
  std::size_t fast = scale(config.macd_fast);
  std::size_t slow = scale(config.macd_slow);
  std::size_t signal = scale(config.macd_signal);
  if (slow <= fast) slow = fast + 1;
  return {fast, slow, signal};
}

SarSeries sar_process(const CandleSeries& series, const SarConfig& config) {
  const auto [fast, slow, signal] = scaled_macd_params(config);
  if (series.size() <= slow)
    throw Error("sar_process: series too short for slow period " +
                std::to_string(slow));
  if (config.delta_factor < 0.0)
    throw Error("sar_process: delta_factor must be >= 0");

  const std::vector<double> a = mid_price_series(series);
  const MacdResult m = macd(a, fast, slow, signal);
  const IndicatorSeries volatility = atr(series, config.atr_period);

  SarSeries out;
  out.direction.assign(series.size(), Direction::Undefined);
  Direction state = Direction::Undefined;
  for (std::size_t t = 0; t < series.size(); ++t) {
    const double d = m.macd_line.values[t] - m.signal_line.values[t];
    const double delta = config.delta_factor * volatility.values[t];
    const bool up = d >= delta && (delta > 0.0 || d > 0.0);
    const bool down = d <= -delta && (delta > 0.0 || d < 0.0);
    Direction next = state;
    if (state != Direction::Up && up) next = Direction::Up;
    else if (state != Direction::Down && down) next = Direction::Down;
    if (next != state) out.flip_indices.push_back(t);
    state = next;
    out.direction[t] = state;
  }
  return out;
}

std::vector<ExtremumEvent> minmax_extrema(const CandleSeries& series,
                                          const SarSeries& sar) {
  if (sar.direction.size() != series.size())
    throw Error("minmax_extrema: SAR not aligned to series");
  std::vector<ExtremumEvent> events;
  const std::size_t M = series.size();
  std::size_t t = 0;
  while (t < M && sar.direction[t] == Direction::Undefined) ++t;
  while (t < M) {
    const Direction dir = sar.direction[t];
    std::size_t end = t;
    while (end + 1 < M && sar.direction[end + 1] == dir) ++end;

    ExtremumEvent e;
    if (dir == Direction::Up) {
      e.kind = ExtremumEvent::Kind::Maximum;
      std::size_t best = t;
      for (std::size_t i = t + 1; i <= end; ++i)
        if (series[i].high > series[best].high) best = i;
      e.at = best;
      e.price = series[best].high;
    } else {
      e.kind = ExtremumEvent::Kind::Minimum;
      std::size_t best = t;
      for (std::size_t i = t + 1; i <= end; ++i)
        if (series[i].low < series[best].low) best = i;
      e.at = best;
      e.price = series[best].low;
    }
    if (end + 1 < M) {
      e.identified_at = end + 1; // bar of the opposing flip
    } else {
      e.identified_at = M - 1;
      e.provisional = true;
    }
    events.push_back(e);
    t = end + 1;
  }
  return events;
}

double average_period_length(const std::vector<ExtremumEvent>& extrema) {
  double sum = 0.0;
  std::size_t count = 0;
  for (auto kind :
       {ExtremumEvent::Kind::Minimum, ExtremumEvent::Kind::Maximum}) {
    bool have_prev = false;
    std::size_t prev = 0;
    for (const ExtremumEvent& e : extrema) {
      if (e.kind != kind) continue;
      if (have_prev) {
        sum += static_cast<double>(e.at - prev);
        ++count;
      }
      prev = e.at;
      have_prev = true;
    }
  }
  if (count == 0) throw Error("average_period_length: insufficient extrema");
  return sum / static_cast<double>(count);
}

std::vector<ExtremumEvent> run_minmax(const CandleSeries& series,
                                      const SarConfig& config) {
  return minmax_extrema(series, sar_process(series, config));
}

} // namespace trendlab
