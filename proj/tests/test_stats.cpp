#include "doctest.h"

#include "trendlab/stats.hpp"
#include "trendlab/synth.hpp"
#include "trendlab/trend_engine.hpp"

#include "json.hpp"

#include <cmath>

using namespace trendlab;

namespace {

IndicatorSeries constant_atr(std::size_t n, double value) {
  IndicatorSeries s;
  s.values.assign(n, value);
  s.valid_from = 0;
  s.valid_to = n - 1;
  return s;
}

SituationRecord up_123() {
  SituationRecord r;
  r.kind = SituationKind::S123;
  r.direction = TrendDirection::Up;
  r.p1 = {2, 100.0, 5};
  r.p2 = {5, 110.0, 8};
  r.p3 = {8, 104.0, 10};
  r.close_at_identification = 106.0;
  r.decision_bar = 10;
  return r;
}

} // namespace

TEST_CASE("1-2-3 metrics, long side") {
  const IndicatorSeries atr = constant_atr(20, 2.0);
  const SituationMetrics m = metrics_123(up_123(), atr);
  REQUIRE_FALSE(m.degenerate);
  CHECK(m.r_atr == doctest::Approx(1.0));     // (106-104)/2
  CHECK(m.g_atr == doctest::Approx(2.0));     // (110-106)/2
  CHECK(m.r_pct == doctest::Approx(1.0 / 3)); // 2/6
  CHECK(m.g_pct == doctest::Approx(2.0 / 3));
  CHECK(m.r_pct + m.g_pct == doctest::Approx(1.0));
  CHECK(m.corr_to_move == doctest::Approx(0.6)); // 6/10
}

TEST_CASE("1-2-3 metrics, short side uses magnitudes") {
  SituationRecord r;
  r.kind = SituationKind::S123;
  r.direction = TrendDirection::Down;
  r.p1 = {2, 100.0, 4};
  r.p2 = {5, 90.0, 7};
  r.p3 = {8, 96.0, 10};
  r.close_at_identification = 94.0;
  const IndicatorSeries atr = constant_atr(20, 2.0);
  const SituationMetrics m = metrics_123(r, atr);
  REQUIRE_FALSE(m.degenerate);
  CHECK(m.r_atr == doctest::Approx(1.0));
  CHECK(m.g_atr == doctest::Approx(2.0));
  CHECK(m.r_pct == doctest::Approx(1.0 / 3));
  CHECK(m.g_pct == doctest::Approx(2.0 / 3));
  CHECK(m.corr_to_move == doctest::Approx(0.6));
}

TEST_CASE("1-2-3 metrics degenerate and error cases") {
  const IndicatorSeries atr = constant_atr(20, 2.0);
  SituationRecord r = up_123();
  r.p3.price = r.p2.price; // zero span
  CHECK(metrics_123(r, atr).degenerate);

  r = up_123();
  r.p1.price = r.p2.price; // zero initial move
  CHECK(metrics_123(r, atr).degenerate);

  r = up_123();
  CHECK(metrics_123(r, constant_atr(20, 0.0)).degenerate);

  r.kind = SituationKind::S232;
  CHECK_THROWS_AS(metrics_123(r, atr), Error);
  r.kind = SituationKind::S123;
  CHECK_THROWS_AS(metrics_123(r, IndicatorSeries::undefined_of_size(20)),
                  Error);
}

TEST_CASE("3-2-3 metrics") {
  SituationRecord r;
  r.kind = SituationKind::S323;
  r.direction = TrendDirection::Up;
  r.p3_old = {8, 104.0, 10};
  r.p2 = {12, 113.0, 15};
  r.p3_new = {15, 107.0, 17};
  r.close_at_identification = 109.0;
  const IndicatorSeries atr = constant_atr(20, 2.0);
  const SituationMetrics m = metrics_323(r, atr);
  REQUIRE_FALSE(m.degenerate);
  CHECK(m.r_atr == doctest::Approx(1.0));
  CHECK(m.g_atr == doctest::Approx(2.0));
  CHECK(m.r_pct == doctest::Approx(1.0 / 3));
  CHECK(m.g_pct == doctest::Approx(2.0 / 3));
  CHECK(m.corr_to_move == doctest::Approx(2.0 / 3)); // 6/9
  r.kind = SituationKind::S123;
  CHECK_THROWS_AS(metrics_323(r, atr), Error);
}

TEST_CASE("2-3-2 metrics") {
  SituationRecord r;
  r.kind = SituationKind::S232;
  r.direction = TrendDirection::Up;
  r.p2 = {5, 110.0, 8};
  r.p3 = {8, 104.0, 10};
  r.p2_new = {12, 113.0, 15};
  r.close_at_identification = 112.0;
  r.t2_break = 11;
  const IndicatorSeries atr = constant_atr(20, 2.0);
  const SituationMetrics m = metrics_232(r, atr);
  REQUIRE_FALSE(m.degenerate);
  CHECK(m.dynamic == doctest::Approx(1.5));           // 9/6
  CHECK(m.lagged_dynamic == doctest::Approx(8.0 / 6));
  CHECK(m.rel_dur_dynamic == doctest::Approx(4.0 / 3));
  CHECK(m.rel_dur_lagged == doctest::Approx(7.0 / 3));
  CHECK(m.rel_dur_break == doctest::Approx(1.0));
  CHECK(m.move_height_atr == doctest::Approx(4.5));
  CHECK(m.corr_height_atr == doctest::Approx(3.0));
  CHECK(m.move_height_rel == doctest::Approx(9.0 / 104));
  CHECK(m.corr_height_rel == doctest::Approx(6.0 / 104));

  r.p3.price = r.p2.price;
  CHECK(metrics_232(r, atr).degenerate);
}

TEST_CASE("probabilities over a mixed record set") {
  auto rec = [](SituationKind k, SituationOutcome o, bool rescinded = false) {
    SituationRecord r;
    r.kind = k;
    r.outcome = o;
    r.rescinded = rescinded;
    return r;
  };
  std::vector<SituationRecord> records = {
      rec(SituationKind::S123, SituationOutcome::TrendActivated),
      rec(SituationKind::S123, SituationOutcome::Failed),
      rec(SituationKind::S123, SituationOutcome::Failed),
      rec(SituationKind::S123, SituationOutcome::Censored),
      rec(SituationKind::S123, SituationOutcome::Failed, true),
      rec(SituationKind::S323, SituationOutcome::P2Passed),
      rec(SituationKind::S323, SituationOutcome::Failed),
      rec(SituationKind::S232, SituationOutcome::P2Passed),
      rec(SituationKind::S232, SituationOutcome::P2Passed),
      rec(SituationKind::S232, SituationOutcome::Failed),
      rec(SituationKind::S232, SituationOutcome::Censored),
  };
  std::vector<TrendRecord> trends(1);
  const Probabilities p = probabilities(records, trends);
  REQUIRE(p.activate_123);
  CHECK(*p.activate_123 == doctest::Approx(1.0 / 3));
  REQUIRE(p.pass_323);
  CHECK(*p.pass_323 == doctest::Approx(0.5));
  REQUIRE(p.pass_232);
  CHECK(*p.pass_232 == doctest::Approx(2.0 / 3));
  REQUIRE(p.pass_232_identity);
  CHECK(*p.pass_232_identity == doctest::Approx(0.75)); // 1 - 1/4

  const Probabilities none = probabilities({}, {});
  CHECK_FALSE(none.activate_123);
  CHECK_FALSE(none.pass_323);
  CHECK_FALSE(none.pass_232);
  CHECK_FALSE(none.pass_232_identity);
}

TEST_CASE("dynamic histogram bins and normalization") {
  const std::vector<double> values = {1.0, 1.1, 1.3, 2.0, 5.0, 0.5};
  const auto bins = dynamic_histogram(values, 0.25, 4.0);
  REQUIRE(bins.size() == 13); // 12 regular + terminal
  CHECK(bins.front().lower == doctest::Approx(1.0));
  CHECK(bins.front().upper == doctest::Approx(1.25));
  CHECK(std::isinf(bins.back().upper));
  CHECK(bins.back().lower == doctest::Approx(4.0));

  double total = 0.0;
  for (const auto& b : bins) total += b.frequency;
  CHECK(total == doctest::Approx(1.0));
  // 1.0, 1.1 and the below-range 0.5 land in the first bin
  CHECK(bins[0].frequency == doctest::Approx(3.0 / 6));
  CHECK(bins[1].frequency == doctest::Approx(1.0 / 6)); // 1.3 in [1.25,1.5)
  CHECK(bins[4].frequency == doctest::Approx(1.0 / 6)); // 2.0 in [2.0,2.25)
  CHECK(bins.back().frequency == doctest::Approx(1.0 / 6)); // 5.0 capped

  CHECK_THROWS_AS(dynamic_histogram({}, 0.25, 4.0), Error);
  CHECK_THROWS_AS(dynamic_histogram(values, 0.0, 4.0), Error);
  CHECK_THROWS_AS(dynamic_histogram(values, 0.25, 1.0), Error);
}

TEST_CASE("reversed cdf counts the upper-right quadrant") {
  const std::vector<std::pair<double, double>> samples = {
      {0.5, 1.0}, {1.0, 2.0}, {2.0, 1.5}, {3.0, 3.0}};
  const std::vector<double> xs = {0.0, 1.0, 2.5};
  const std::vector<double> ys = {1.0, 2.0};
  const auto grid = reversed_cdf(samples, xs, ys);
  REQUIRE(grid.size() == 6);
  CHECK(grid[0 * 3 + 0] == doctest::Approx(1.0));   // all
  CHECK(grid[0 * 3 + 1] == doctest::Approx(0.75));  // x >= 1
  CHECK(grid[0 * 3 + 2] == doctest::Approx(0.25));  // x >= 2.5
  CHECK(grid[1 * 3 + 0] == doctest::Approx(0.5));   // dyn >= 2
  CHECK(grid[1 * 3 + 1] == doctest::Approx(0.5));
  CHECK(grid[1 * 3 + 2] == doctest::Approx(0.25));
  CHECK_THROWS_AS(reversed_cdf({}, xs, ys), Error);
}

TEST_CASE("vector expectations average the three marked points") {
  SituationMetrics a;
  a.rel_dur_dynamic = 1.0;
  a.dynamic = 2.0;
  a.rel_dur_break = 0.5;
  a.rel_dur_lagged = 2.0;
  a.lagged_dynamic = 1.5;
  SituationMetrics b;
  b.rel_dur_dynamic = 3.0;
  b.dynamic = 4.0;
  b.rel_dur_break = 1.5;
  b.rel_dur_lagged = 4.0;
  b.lagged_dynamic = 2.5;
  SituationMetrics deg;
  deg.degenerate = true;
  const VectorExpectations e = vector_expectations({a, b, deg});
  CHECK(e.dynamic.first == doctest::Approx(2.0));
  CHECK(e.dynamic.second == doctest::Approx(3.0));
  CHECK(e.break_point.first == doctest::Approx(1.0));
  CHECK(e.break_point.second == doctest::Approx(1.0));
  CHECK(e.lagged_dynamic.first == doctest::Approx(3.0));
  CHECK(e.lagged_dynamic.second == doctest::Approx(2.0));
  CHECK_THROWS_AS(vector_expectations({deg}), Error);
}

TEST_CASE("build_report over a full synthetic run") {
  SynthSpec spec;
  spec.kind = SynthSpec::Kind::RandomWalk;
  spec.length = 2500;
  spec.seed = 7;
  spec.base = 1000.0;
  spec.step_sigma = 1.0;
  spec.drift = 0.05;
  const CandleSeries series = generate(spec);
  const auto extrema = run_minmax(series, SarConfig{});
  const TrendRunResult run = run_trend_indicator(extrema, series);
  const IndicatorSeries atr_series = atr(series, 100);

  const StatsReport rep =
      build_report(series, run.trends, run.situations, atr_series, 1.0);
  CHECK(rep.n_candles == 2500);
  CHECK(rep.n_trends == run.trends.size());
  CHECK(rep.n_123 + rep.n_323 + rep.n_232 + rep.n_rescinded ==
        run.situations.size());
  if (rep.n_trends > 0) {
    REQUIRE(rep.e_movements);
    CHECK(*rep.e_movements >= 1.0);
  }
  bool all_broken = true;
  for (const auto& t : run.trends) all_broken = all_broken && t.broken_at;
  if (rep.prob.pass_232 && rep.prob.pass_232_identity && rep.n_censored == 0 &&
      all_broken)
    CHECK(*rep.prob.pass_232 == doctest::Approx(*rep.prob.pass_232_identity));

  // both renderings must materialize without throwing
  const std::string text = rep.to_text();
  CHECK(text.find("number of trends") != std::string::npos);
  const auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j["counts"]["candles"] == 2500);
  CHECK(j["timescale"] == 1.0);
}
