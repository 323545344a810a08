#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trendlab {

/// Error type for all validation and computation failures in the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// One OHLC bar. All algorithms operate on the 0-based bar index;
/// the timestamp is carried along for reporting only.
struct Candle {
  std::size_t index = 0;
  std::int64_t timestamp = 0; // UTC epoch seconds
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
};

/// Validates a single candle: finite, strictly positive prices,
/// low <= min(open, close) and high >= max(open, close).
/// Throws Error with `context` prepended on violation.
void validate_candle(const Candle& c, const std::string& context);

struct CandleSeries {
  std::vector<Candle> candles;
  std::string symbol;
  std::string aggregation; // label only, e.g. "1d", "1h", "10min"

  std::size_t size() const { return candles.size(); }
  bool empty() const { return candles.empty(); }
  const Candle& operator[](std::size_t i) const { return candles[i]; }
};

/// Mid price a_t = (high + low) / 2 for every bar.
std::vector<double> mid_price_series(const CandleSeries& series);

} // namespace trendlab
