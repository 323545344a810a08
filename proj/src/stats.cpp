#include "trendlab/stats.hpp"
#include "trendlab/format.hpp"

#include "json.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace trendlab {

namespace {

double abs_if_short(double value, TrendDirection dir) {
  return dir == TrendDirection::Down ? std::abs(value) : value;
}

void risk_goal(SituationMetrics& m, TrendDirection dir, double p2, double p3,
               double close_ident, double atr_at_p3) {
  const double risk = close_ident - p3;
  const double goal = p2 - close_ident;
  const double span = p2 - p3;
  if (span == 0.0 || atr_at_p3 == 0.0) {
    m.degenerate = true;
    return;
  }
  m.r_atr = abs_if_short(risk / atr_at_p3, dir);
  m.g_atr = abs_if_short(goal / atr_at_p3, dir);
  m.r_pct = abs_if_short(risk / span, dir);
  m.g_pct = 1.0 - m.r_pct;
}

} // namespace

SituationMetrics metrics_123(const SituationRecord& record,
                             const IndicatorSeries& atr) {
  if (record.kind != SituationKind::S123)
    throw Error("metrics_123: wrong record kind");
  if (!atr.defined(record.p3.at))
    throw Error("metrics_123: ATR undefined at P3");
  SituationMetrics m;
  risk_goal(m, record.direction, record.p2.price, record.p3.price,
            record.close_at_identification, atr.values[record.p3.at]);
  const double ini_move = std::abs(record.p2.price - record.p1.price);
  if (ini_move == 0.0)
    m.degenerate = true;
  else
    m.corr_to_move = std::abs(record.p2.price - record.p3.price) / ini_move;
  return m;
}

SituationMetrics metrics_323(const SituationRecord& record,
                             const IndicatorSeries& atr) {
  if (record.kind != SituationKind::S323)
    throw Error("metrics_323: wrong record kind");
  if (!atr.defined(record.p3_new.at))
    throw Error("metrics_323: ATR undefined at P3_new");
  SituationMetrics m;
  risk_goal(m, record.direction, record.p2.price, record.p3_new.price,
            record.close_at_identification, atr.values[record.p3_new.at]);
  const double move = std::abs(record.p2.price - record.p3_old.price);
  if (move == 0.0)
    m.degenerate = true;
  else
    m.corr_to_move = std::abs(record.p2.price - record.p3_new.price) / move;
  return m;
}

SituationMetrics metrics_232(const SituationRecord& record,
                             const IndicatorSeries& atr) {
  if (record.kind != SituationKind::S232)
    throw Error("metrics_232: wrong record kind");
  if (!atr.defined(record.p3.at))
    throw Error("metrics_232: ATR undefined at P3");
  SituationMetrics m;
  const double corr_height = std::abs(record.p2.price - record.p3.price);
  const double move_height = std::abs(record.p2_new.price - record.p3.price);
  const double t2 = static_cast<double>(record.p2.at);
  const double t3 = static_cast<double>(record.p3.at);
  const double t2n = static_cast<double>(record.p2_new.at);
  const double t2n_id = static_cast<double>(record.p2_new.identified_at);
  const double atr_p3 = atr.values[record.p3.at];
  if (corr_height == 0.0 || t3 == t2 || atr_p3 == 0.0 ||
      record.p3.price == 0.0) {
    m.degenerate = true;
    return m;
  }
  m.dynamic = move_height / corr_height;
  m.lagged_dynamic =
      std::abs(record.close_at_identification - record.p3.price) / corr_height;
  m.rel_dur_dynamic = (t2n - t3) / (t3 - t2);
  m.rel_dur_lagged = (t2n_id - t3) / (t3 - t2);
  if (record.t2_break)
    m.rel_dur_break =
        (static_cast<double>(*record.t2_break) - t3) / (t3 - t2);
  m.move_height_atr = move_height / atr_p3;
  m.corr_height_atr = corr_height / atr_p3;
  m.move_height_rel = move_height / record.p3.price;
  m.corr_height_rel = corr_height / record.p3.price;
  return m;
}

Probabilities probabilities(const std::vector<SituationRecord>& records,
                            const std::vector<TrendRecord>& trends) {
  std::size_t total_123 = 0, act_123 = 0;
  std::size_t total_323 = 0, pass_323 = 0;
  std::size_t total_232 = 0, resolved_232 = 0, pass_232 = 0;
  for (const SituationRecord& r : records) {
    if (r.rescinded || r.outcome == SituationOutcome::Pending) continue;
    const bool censored = r.outcome == SituationOutcome::Censored;
    switch (r.kind) {
      case SituationKind::S123:
        if (!censored) {
          ++total_123;
          if (r.outcome == SituationOutcome::TrendActivated) ++act_123;
        }
        break;
      case SituationKind::S323:
        if (!censored) {
          ++total_323;
          if (r.outcome == SituationOutcome::P2Passed) ++pass_323;
        }
        break;
      case SituationKind::S232:
        ++total_232;
        if (!censored) {
          ++resolved_232;
          if (r.outcome == SituationOutcome::P2Passed) ++pass_232;
        }
        break;
    }
  }
  Probabilities p;
  if (total_123 > 0)
    p.activate_123 = static_cast<double>(act_123) / total_123;
  if (total_323 > 0)
    p.pass_323 = static_cast<double>(pass_323) / total_323;
  if (resolved_232 > 0)
    p.pass_232 = static_cast<double>(pass_232) / resolved_232;
  if (total_232 > 0) {
    // computed as (count - trends)/count so that on fully resolved runs
    // it is bit-identical to the empirical ratio
    if (trends.size() <= total_232)
      p.pass_232_identity =
          static_cast<double>(total_232 - trends.size()) / total_232;
    else
      p.pass_232_identity =
          1.0 - static_cast<double>(trends.size()) / total_232;
  }
  return p;
}

std::vector<HistogramBin> dynamic_histogram(const std::vector<double>& values,
                                            double bin_width, double cap) {
  if (values.empty()) throw Error("dynamic_histogram: no values");
  if (bin_width <= 0.0) throw Error("dynamic_histogram: bin width <= 0");
  if (cap <= 1.0) throw Error("dynamic_histogram: cap must exceed 1");
  const std::size_t regular =
      static_cast<std::size_t>(std::ceil((cap - 1.0) / bin_width - 1e-9));
  std::vector<HistogramBin> bins(regular + 1);
  for (std::size_t i = 0; i < regular; ++i) {
    bins[i].lower = 1.0 + bin_width * static_cast<double>(i);
    bins[i].upper = 1.0 + bin_width * static_cast<double>(i + 1);
  }
  bins[regular].lower = 1.0 + bin_width * static_cast<double>(regular);
  bins[regular].upper = std::numeric_limits<double>::infinity();

  const double weight = 1.0 / static_cast<double>(values.size());
  for (double v : values) {
    std::size_t i;
    if (v >= bins[regular].lower) {
      i = regular;
    } else {
      const double off = (v - 1.0) / bin_width;
      i = off <= 0.0 ? 0 : static_cast<std::size_t>(off);
      if (i >= regular) i = regular - 1;
    }
    bins[i].frequency += weight;
  }
  return bins;
}

std::vector<double> reversed_cdf(
    const std::vector<std::pair<double, double>>& samples,
    const std::vector<double>& x_grid, const std::vector<double>& y_grid) {
  if (samples.empty()) throw Error("reversed_cdf: no samples");
  std::vector<double> grid(x_grid.size() * y_grid.size(), 0.0);
  for (std::size_t iy = 0; iy < y_grid.size(); ++iy) {
    for (std::size_t ix = 0; ix < x_grid.size(); ++ix) {
      std::size_t hits = 0;
      for (const auto& [rel_dur, dyn] : samples)
        if (rel_dur >= x_grid[ix] && dyn >= y_grid[iy]) ++hits;
      grid[iy * x_grid.size() + ix] =
          static_cast<double>(hits) / static_cast<double>(samples.size());
    }
  }
  return grid;
}

VectorExpectations vector_expectations(
    const std::vector<SituationMetrics>& s232) {
  std::size_t n = 0;
  VectorExpectations e{};
  for (const SituationMetrics& m : s232) {
    if (m.degenerate) continue;
    e.dynamic.first += m.rel_dur_dynamic;
    e.dynamic.second += m.dynamic;
    e.break_point.first += m.rel_dur_break;
    e.lagged_dynamic.first += m.rel_dur_lagged;
    e.lagged_dynamic.second += m.lagged_dynamic;
    ++n;
  }
  if (n == 0) throw Error("vector_expectations: no samples");
  const double d = static_cast<double>(n);
  e.dynamic.first /= d;
  e.dynamic.second /= d;
  e.break_point.first /= d;
  e.break_point.second = 1.0;
  e.lagged_dynamic.first /= d;
  e.lagged_dynamic.second /= d;
  return e;
}

namespace {

class MeanAccumulator {
public:
  void add(double v) {
    sum_ += v;
    ++n_;
  }
  std::optional<double> mean() const {
    if (n_ == 0) return std::nullopt;
    return sum_ / static_cast<double>(n_);
  }

private:
  double sum_ = 0.0;
  std::size_t n_ = 0;
};

} // namespace

StatsReport build_report(const CandleSeries& series,
                         const std::vector<TrendRecord>& trends,
                         const std::vector<SituationRecord>& records,
                         const IndicatorSeries& atr, double timescale,
                         double histogram_bin_width, double histogram_cap) {
  StatsReport rep;
  rep.symbol = series.symbol;
  rep.aggregation = series.aggregation;
  if (!series.empty()) {
    rep.period_start = series[0].timestamp;
    rep.period_end = series[series.size() - 1].timestamp;
  }
  rep.timescale = timescale;
  rep.n_candles = series.size();
  rep.n_trends = trends.size();

  MeanAccumulator movements;
  for (const TrendRecord& t : trends)
    movements.add(static_cast<double>(t.movements));
  rep.e_movements = movements.mean();

  MeanAccumulator r123, g123, rp123, cm123;
  MeanAccumulator r323, g323, rp323, cm323;
  MeanAccumulator dyn, rdd, lag, rdl, rdb, ma, ca, mr, cr;
  std::vector<double> dynamics;

  for (const SituationRecord& r : records) {
    if (r.rescinded) {
      ++rep.n_rescinded;
      continue;
    }
    const bool censored = r.outcome == SituationOutcome::Censored ||
                          r.outcome == SituationOutcome::Pending;
    switch (r.kind) {
      case SituationKind::S123: ++rep.n_123; break;
      case SituationKind::S323: ++rep.n_323; break;
      case SituationKind::S232: ++rep.n_232; break;
    }
    if (censored) {
      ++rep.n_censored;
      continue;
    }
    SituationMetrics m;
    switch (r.kind) {
      case SituationKind::S123: m = metrics_123(r, atr); break;
      case SituationKind::S323: m = metrics_323(r, atr); break;
      case SituationKind::S232: m = metrics_232(r, atr); break;
    }
    if (m.degenerate) {
      ++rep.n_degenerate;
      continue;
    }
    switch (r.kind) {
      case SituationKind::S123:
        r123.add(m.r_atr);
        g123.add(m.g_atr);
        rp123.add(m.r_pct);
        cm123.add(m.corr_to_move);
        break;
      case SituationKind::S323:
        r323.add(m.r_atr);
        g323.add(m.g_atr);
        rp323.add(m.r_pct);
        cm323.add(m.corr_to_move);
        break;
      case SituationKind::S232:
        dyn.add(m.dynamic);
        rdd.add(m.rel_dur_dynamic);
        lag.add(m.lagged_dynamic);
        rdl.add(m.rel_dur_lagged);
        rdb.add(m.rel_dur_break);
        ma.add(m.move_height_atr);
        ca.add(m.corr_height_atr);
        mr.add(m.move_height_rel);
        cr.add(m.corr_height_rel);
        dynamics.push_back(m.dynamic);
        rep.dynamic_samples.emplace_back(m.rel_dur_dynamic, m.dynamic);
        break;
    }
  }

  rep.prob = probabilities(records, trends);

  rep.e_r_atr_123 = r123.mean();
  rep.e_g_atr_123 = g123.mean();
  rep.e_r_pct_123 = rp123.mean();
  rep.e_corr_move_123 = cm123.mean();
  rep.e_r_atr_323 = r323.mean();
  rep.e_g_atr_323 = g323.mean();
  rep.e_r_pct_323 = rp323.mean();
  rep.e_corr_move_323 = cm323.mean();
  rep.e_dynamic = dyn.mean();
  rep.e_rel_dur_dynamic = rdd.mean();
  rep.e_lagged_dynamic = lag.mean();
  rep.e_rel_dur_lagged = rdl.mean();
  rep.e_rel_dur_break = rdb.mean();
  rep.e_move_atr = ma.mean();
  rep.e_corr_atr = ca.mean();
  rep.e_move_rel = mr.mean();
  rep.e_corr_rel = cr.mean();

  if (!dynamics.empty())
    rep.histogram = dynamic_histogram(dynamics, histogram_bin_width,
                                      histogram_cap);
  return rep;
}

namespace {

nlohmann::json opt_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

std::string fmt_opt(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream out;
  out.precision(4);
  out << std::fixed << *v;
  return out.str();
}

} // namespace

std::string StatsReport::to_json() const {
  nlohmann::json j;
  j["symbol"] = symbol;
  j["aggregation"] = aggregation;
  j["period_start"] = period_start;
  j["period_end"] = period_end;
  j["timescale"] = timescale;
  j["counts"] = {{"candles", n_candles}, {"trends", n_trends},
                 {"s123", n_123},        {"s323", n_323},
                 {"s232", n_232},        {"censored", n_censored},
                 {"degenerate", n_degenerate}, {"rescinded", n_rescinded}};
  j["probabilities"] = {
      {"activate_after_123", opt_json(prob.activate_123)},
      {"pass_p2_after_323", opt_json(prob.pass_323)},
      {"pass_p2_after_232", opt_json(prob.pass_232)},
      {"pass_p2_after_232_identity", opt_json(prob.pass_232_identity)}};
  j["expectations"] = {
      {"movements", opt_json(e_movements)},
      {"r_atr_123", opt_json(e_r_atr_123)},
      {"g_atr_123", opt_json(e_g_atr_123)},
      {"r_pct_123", opt_json(e_r_pct_123)},
      {"corr_over_initial_move_123", opt_json(e_corr_move_123)},
      {"r_atr_323", opt_json(e_r_atr_323)},
      {"g_atr_323", opt_json(e_g_atr_323)},
      {"r_pct_323", opt_json(e_r_pct_323)},
      {"corr_over_move_323", opt_json(e_corr_move_323)},
      {"dynamic", opt_json(e_dynamic)},
      {"rel_dur_dynamic", opt_json(e_rel_dur_dynamic)},
      {"lagged_dynamic", opt_json(e_lagged_dynamic)},
      {"rel_dur_lagged", opt_json(e_rel_dur_lagged)},
      {"rel_dur_break", opt_json(e_rel_dur_break)},
      {"move_height_over_atr", opt_json(e_move_atr)},
      {"corr_height_over_atr", opt_json(e_corr_atr)},
      {"move_height_over_p3", opt_json(e_move_rel)},
      {"corr_height_over_p3", opt_json(e_corr_rel)}};
  nlohmann::json hist = nlohmann::json::array();
  for (const HistogramBin& b : histogram) {
    nlohmann::json jb;
    jb["lower"] = b.lower;
    jb["upper"] = std::isinf(b.upper) ? nlohmann::json(nullptr)
                                      : nlohmann::json(b.upper);
    jb["frequency"] = b.frequency;
    hist.push_back(jb);
  }
  j["dynamic_histogram"] = hist;
  return j.dump(2);
}

std::string StatsReport::to_text() const {
  std::ostringstream out;
  auto line = [&](const std::string& label, const std::string& value) {
    out << label;
    for (std::size_t i = label.size(); i < 44; ++i) out << ' ';
    out << value << '\n';
  };
  line("symbol", symbol.empty() ? "-" : symbol);
  line("aggregation", aggregation.empty() ? "-" : aggregation);
  line("period", std::to_string(period_start) + " .. " +
                     std::to_string(period_end));
  line("timescale", format_double(timescale));
  line("number of candles", std::to_string(n_candles));
  line("number of trends", std::to_string(n_trends));
  line("#(1-2-3)", std::to_string(n_123));
  line("P(activate trend | 1-2-3)", fmt_opt(prob.activate_123));
  line("E(R_123_ATR)", fmt_opt(e_r_atr_123));
  line("E(G_123_ATR)", fmt_opt(e_g_atr_123));
  line("E(R_123_%)", fmt_opt(e_r_pct_123));
  line("E(corr height / initial move height)", fmt_opt(e_corr_move_123));
  line("#(3-2-3)", std::to_string(n_323));
  line("P(pass P2 | 3-2-3)", fmt_opt(prob.pass_323));
  line("E(R_323_ATR)", fmt_opt(e_r_atr_323));
  line("E(G_323_ATR)", fmt_opt(e_g_atr_323));
  line("E(R_323_%)", fmt_opt(e_r_pct_323));
  line("E(corr height / move height)", fmt_opt(e_corr_move_323));
  line("#(2-3-2)", std::to_string(n_232));
  line("P(pass P2 | 2-3-2)", fmt_opt(prob.pass_232));
  line("P(pass P2 | 2-3-2), identity", fmt_opt(prob.pass_232_identity));
  line("E(rel. dur. of break)", fmt_opt(e_rel_dur_break));
  line("E(rel. dur. of dynamic)", fmt_opt(e_rel_dur_dynamic));
  line("E(dynamic)", fmt_opt(e_dynamic));
  line("E(rel. dur. of lagged dynamic)", fmt_opt(e_rel_dur_lagged));
  line("E(lagged dynamic)", fmt_opt(e_lagged_dynamic));
  line("E(move height / ATR(P3))", fmt_opt(e_move_atr));
  line("E(corr height / ATR(P3))", fmt_opt(e_corr_atr));
  line("E(move height / P3)", fmt_opt(e_move_rel));
  line("E(corr height / P3)", fmt_opt(e_corr_rel));
  line("E(number of movements)", fmt_opt(e_movements));
  line("excluded censored", std::to_string(n_censored));
  line("excluded degenerate", std::to_string(n_degenerate));
  line("excluded rescinded", std::to_string(n_rescinded));
  return out.str();
}

} // namespace trendlab
