#include "trendlab/csv.hpp"
#include "trendlab/format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace trendlab {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

// Days since the unix epoch for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

// Accepts epoch seconds, "YYYY-MM-DD" or "YYYY-MM-DD[T ]hh:mm:ss".
std::int64_t parse_timestamp(const std::string& s, const std::string& ctx) {
  if (s.empty()) throw Error(ctx + ": empty timestamp");
  if (s.find('-', 1) == std::string::npos) {
    std::int64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw Error(ctx + ": bad timestamp '" + s + "'");
    return v;
  }
  int y, mo, d, h = 0, mi = 0, se = 0;
  char sep;
  std::istringstream in(s);
  in >> y >> sep >> mo >> sep >> d;
  if (!in || mo < 1 || mo > 12 || d < 1 || d > 31)
    throw Error(ctx + ": bad timestamp '" + s + "'");
  if (in.peek() == 'T' || in.peek() == ' ') {
    in.get();
    in >> h >> sep >> mi >> sep >> se;
    if (!in || h < 0 || h > 23 || mi < 0 || mi > 59 || se < 0 || se > 60)
      throw Error(ctx + ": bad timestamp '" + s + "'");
  }
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
}

double parse_price(const std::string& s, const std::string& ctx) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(ctx + ": bad number '" + s + "'");
  return v;
}

std::size_t column_of(const std::vector<std::string>& header,
                      const std::string& name, const std::string& ctx) {
  const std::string want = lower(name);
  for (std::size_t i = 0; i < header.size(); ++i)
    if (lower(header[i]) == want) return i;
  throw Error(ctx + ": missing column '" + name + "'");
}

} // namespace

CandleSeries load_csv_stream(std::istream& in, const CsvFormat& format,
                             const std::string& context) {
  std::string line;
  if (!std::getline(in, line)) throw Error(context + ": empty series");
  const auto header = split_row(line);
  const std::size_t c_ts = column_of(header, format.timestamp, context);
  const std::size_t c_o = column_of(header, format.open, context);
  const std::size_t c_h = column_of(header, format.high, context);
  const std::size_t c_l = column_of(header, format.low, context);
  const std::size_t c_c = column_of(header, format.close, context);
  const std::size_t need =
      1 + std::max({c_ts, c_o, c_h, c_l, c_c});

  CandleSeries series;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::string ctx = context + " row " + std::to_string(row);
    const auto fields = split_row(line);
    if (fields.size() < need) throw Error(ctx + ": too few fields");
    Candle c;
    c.timestamp = parse_timestamp(fields[c_ts], ctx);
    c.open = parse_price(fields[c_o], ctx);
    c.high = parse_price(fields[c_h], ctx);
    c.low = parse_price(fields[c_l], ctx);
    c.close = parse_price(fields[c_c], ctx);
    validate_candle(c, ctx);
    series.candles.push_back(c);
  }
  if (series.empty()) throw Error(context + ": empty series");

  std::stable_sort(series.candles.begin(), series.candles.end(),
                   [](const Candle& a, const Candle& b) {
                     return a.timestamp < b.timestamp;
                   });
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i > 0 && series[i].timestamp == series[i - 1].timestamp)
      throw Error(context + ": duplicate timestamp " +
                  std::to_string(series[i].timestamp));
    series.candles[i].index = i;
  }
  return series;
}

CandleSeries load_csv(const std::string& path, const CsvFormat& format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return load_csv_stream(in, format, path);
}

void write_csv_stream(const CandleSeries& series, std::ostream& out) {
  out << "timestamp,open,high,low,close\n";
  for (const Candle& c : series.candles) {
    out << c.timestamp << ',' << format_double(c.open) << ','
        << format_double(c.high) << ',' << format_double(c.low) << ','
        << format_double(c.close) << '\n';
  }
}

void write_csv(const CandleSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_csv_stream(series, out);
}

} // namespace trendlab
