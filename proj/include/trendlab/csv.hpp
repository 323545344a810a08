#pragma once

#include "trendlab/candle.hpp"

#include <iosfwd>
#include <string>

namespace trendlab {

/// Column mapping for candle CSV files. Names refer to header fields;
/// matching is case-insensitive.
struct CsvFormat {
  std::string timestamp = "timestamp";
  std::string open = "open";
  std::string high = "high";
  std::string low = "low";
  std::string close = "close";
};

/// Loads a candle CSV (UTF-8, header row required). Timestamps may be
/// ISO-8601 dates/datetimes or epoch seconds. Rows are sorted by
/// timestamp; duplicate timestamps and invariant violations are rejected
/// with the offending row number.
CandleSeries load_csv(const std::string& path, const CsvFormat& format = {});
CandleSeries load_csv_stream(std::istream& in, const CsvFormat& format,
                             const std::string& context);

/// Writes the same dialect load_csv reads. Prices are emitted as
/// shortest round-trip decimals, so load_csv(write_csv(s)) == s.
void write_csv(const CandleSeries& series, const std::string& path);
void write_csv_stream(const CandleSeries& series, std::ostream& out);

} // namespace trendlab
