#include "doctest.h"

#include "trendlab/indicators.hpp"
#include "trendlab/synth.hpp"

#include <cmath>
#include <vector>

using namespace trendlab;

TEST_CASE("ema basics") {
  const std::vector<double> c(20, 3.5);
  const auto e = ema(c, 5);
  for (double v : e.values) CHECK(v == doctest::Approx(3.5));

  const std::vector<double> x{1.0, 4.0, 2.0, 8.0};
  const auto identity = ema(x, 1); // alpha = 1
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(identity.values[i] == doctest::Approx(x[i]));

  // period 3 -> alpha 0.5, seeded with x_0
  const auto e3 = ema({1.0, 2.0}, 3);
  CHECK(e3.values[0] == doctest::Approx(1.0));
  CHECK(e3.values[1] == doctest::Approx(1.5));

  CHECK_THROWS_AS(ema(x, 0), Error);
  CHECK_THROWS_AS(ema({}, 3), Error);
}

TEST_CASE("ema is shift-equivariant") {
  SplitMix64 rng(11);
  std::vector<double> x(200);
  for (double& v : x) v = rng.uniform() * 10.0;
  std::vector<double> shifted = x;
  for (double& v : shifted) v += 123.0;
  const auto a = ema(x, 7);
  const auto b = ema(shifted, 7);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(b.values[i] - a.values[i] == doctest::Approx(123.0).epsilon(1e-12));
}

TEST_CASE("macd") {
  const std::vector<double> c(60, 2.0);
  const auto r = macd(c, 12, 26, 9);
  for (double v : r.macd_line.values) CHECK(v == doctest::Approx(0.0));
  for (double v : r.signal_line.values) CHECK(v == doctest::Approx(0.0));

  // ramp: macd line converges to the positive constant slope*(slow-fast)/2
  std::vector<double> ramp(600);
  for (std::size_t i = 0; i < ramp.size(); ++i)
    ramp[i] = static_cast<double>(i);
  const auto rr = macd(ramp, 12, 26, 9);
  const double expected = (26.0 - 12.0) / 2.0; // lag difference of the EMAs
  CHECK(rr.macd_line.values.back() == doctest::Approx(expected).epsilon(1e-6));
  CHECK(rr.macd_line.values.back() > 0.0);

  CHECK_THROWS_AS(macd(c, 26, 12, 9), Error);
  CHECK_THROWS_AS(macd(c, 12, 12, 9), Error);
}

TEST_CASE("macd is invariant under additive constants") {
  SplitMix64 rng(5);
  std::vector<double> x(300);
  for (double& v : x) v = 50.0 + rng.uniform();
  std::vector<double> shifted = x;
  for (double& v : shifted) v += 1000.0;
  const auto a = macd(x, 12, 26, 9);
  const auto b = macd(shifted, 12, 26, 9);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(a.macd_line.values[i] ==
          doctest::Approx(b.macd_line.values[i]).epsilon(1e-9));
    CHECK(a.signal_line.values[i] ==
          doctest::Approx(b.signal_line.values[i]).epsilon(1e-9));
  }
}

namespace {

CandleSeries flat_candles(const std::vector<double>& close,
                          const std::vector<double>& high,
                          const std::vector<double>& low) {
  CandleSeries s;
  for (std::size_t i = 0; i < close.size(); ++i)
    s.candles.push_back({i, static_cast<std::int64_t>(i), close[i], high[i],
                         low[i], close[i]});
  return s;
}

} // namespace

TEST_CASE("true range") {
  // inside bar: high - low dominates
  CandleSeries s = flat_candles({9.5, 9.6}, {10.0, 9.8}, {9.0, 9.2});
  auto tr = true_range(s);
  CHECK(tr.values[0] == doctest::Approx(1.0));
  CHECK(tr.values[1] == doctest::Approx(0.6));

  // gap up: high - close[1] dominates
  s = flat_candles({9.5, 12.0}, {10.0, 12.5}, {9.0, 11.5});
  tr = true_range(s);
  CHECK(tr.values[1] == doctest::Approx(12.5 - 9.5));

  // h=10, l=9, close[1]=8 -> max(1, 2, -1) = 2
  s = flat_candles({8.0, 9.5}, {8.5, 10.0}, {7.5, 9.0});
  tr = true_range(s);
  CHECK(tr.values[1] == doctest::Approx(2.0));
}

TEST_CASE("atr") {
  // constant TR
  std::vector<double> close(50, 10.0), high(50, 10.5), low(50, 9.5);
  auto s = flat_candles(close, high, low);
  auto a = atr(s, 10);
  for (double v : a.values) CHECK(v == doctest::Approx(1.0));

  // period 1: ATR == TR
  a = atr(s, 1);
  const auto tr = true_range(s);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    CHECK(a.values[i] == doctest::Approx(tr.values[i]));

  // TR = [1,2,3], period 2 -> [1, 1.5, 2.5]
  s = flat_candles({9.5, 9.0, 9.0}, {10.0, 10.0, 10.5}, {9.0, 8.0, 7.5});
  REQUIRE(true_range(s).values[0] == doctest::Approx(1.0));
  REQUIRE(true_range(s).values[1] == doctest::Approx(2.0));
  REQUIRE(true_range(s).values[2] == doctest::Approx(3.0));
  a = atr(s, 2);
  CHECK(a.values[0] == doctest::Approx(1.0));
  CHECK(a.values[1] == doctest::Approx(1.5));
  CHECK(a.values[2] == doctest::Approx(2.5));

  CHECK_THROWS_AS(atr(s, 0), Error);
}

TEST_CASE("atr is nonnegative and zero on constant prices") {
  std::vector<double> close(30, 10.0), high(30, 10.0), low(30, 10.0);
  const auto s = flat_candles(close, high, low);
  const auto a = atr(s, 5);
  for (double v : a.values) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("centered_ma") {
  // n=1: identity on the full range
  const std::vector<double> x{1.0, 5.0, 2.0, 7.0};
  auto b = centered_ma(x, 1);
  CHECK(b.valid_from == 0);
  CHECK(b.valid_to == 3);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(b.values[i] == doctest::Approx(x[i]));

  // constant input
  const std::vector<double> c(11, 4.0);
  b = centered_ma(c, 4);
  for (std::size_t i = b.valid_from; i <= b.valid_to; ++i)
    CHECK(b.values[i] == doctest::Approx(4.0));
  CHECK_FALSE(b.defined(0));
  CHECK_FALSE(b.defined(10));

  // n=2 -> window 3
  b = centered_ma({1.0, 2.0, 3.0, 4.0, 5.0}, 2);
  CHECK(b.valid_from == 1);
  CHECK(b.valid_to == 3);
  CHECK(b.values[1] == doctest::Approx(2.0));
  CHECK(b.values[2] == doctest::Approx(3.0));
  CHECK(b.values[3] == doctest::Approx(4.0));

  CHECK_THROWS_AS(centered_ma({1.0, 2.0}, 4), Error);
}

TEST_CASE("centered_ma matches brute force on random input") {
  SplitMix64 rng(42);
  std::vector<double> x(257);
  for (double& v : x) v = rng.uniform() * 100.0;
  for (std::size_t n : {2u, 5u, 20u, 51u}) {
    const auto b = centered_ma(x, n);
    const std::size_t h = n / 2;
    for (std::size_t t = h; t + h < x.size(); ++t) {
      double sum = 0.0;
      for (std::size_t i = t - h; i <= t + h; ++i) sum += x[i];
      const double ref = sum / static_cast<double>(2 * h + 1);
      CHECK(std::abs(b.values[t] - ref) <= 1e-12 * std::abs(ref));
    }
  }
}
