#pragma once

#include "trendlab/candle.hpp"
#include "trendlab/indicators.hpp"
#include "trendlab/trend_engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trendlab {

/// Per-situation metric values. Only the fields for the record's kind
/// are populated; `degenerate` marks zero-denominator records, which
/// are excluded from every aggregate.
struct SituationMetrics {
  bool degenerate = false;

  // 1-2-3 and 3-2-3
  double r_atr = 0.0;
  double g_atr = 0.0;
  double r_pct = 0.0;
  double g_pct = 0.0;
  double corr_to_move = 0.0;

  // 2-3-2
  double dynamic = 0.0;
  double lagged_dynamic = 0.0;
  double rel_dur_dynamic = 0.0;
  double rel_dur_lagged = 0.0;
  double rel_dur_break = 0.0;
  double move_height_atr = 0.0;
  double corr_height_atr = 0.0;
  double move_height_rel = 0.0;
  double corr_height_rel = 0.0;
};

SituationMetrics metrics_123(const SituationRecord& record,
                             const IndicatorSeries& atr);
SituationMetrics metrics_323(const SituationRecord& record,
                             const IndicatorSeries& atr);
SituationMetrics metrics_232(const SituationRecord& record,
                             const IndicatorSeries& atr);

struct Probabilities {
  std::optional<double> activate_123;
  std::optional<double> pass_323;
  std::optional<double> pass_232;          // empirical, from outcomes
  std::optional<double> pass_232_identity; // 1 - #trends / #(2-3-2)
};

Probabilities probabilities(const std::vector<SituationRecord>& records,
                            const std::vector<TrendRecord>& trends);

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0; // infinity for the terminal bin
  double frequency = 0.0;
};

/// Relative frequencies of the dynamic over bins [1, 1+w), ... with a
/// terminal [cap, inf) bin. Frequencies sum to one.
std::vector<HistogramBin> dynamic_histogram(const std::vector<double>& values,
                                            double bin_width = 0.25,
                                            double cap = 4.0);

/// F(x,y) = fraction of samples with rel_dur >= x and dynamic >= y.
/// Returned row-major: grid[iy * x_grid.size() + ix].
std::vector<double> reversed_cdf(
    const std::vector<std::pair<double, double>>& samples,
    const std::vector<double>& x_grid, const std::vector<double>& y_grid);

struct VectorExpectations {
  std::pair<double, double> dynamic;        // (rel dur of dyn, dynamic)
  std::pair<double, double> break_point;    // (rel dur of break, 1)
  std::pair<double, double> lagged_dynamic; // (rel dur lag, lag dyn)
};

VectorExpectations vector_expectations(const std::vector<SituationMetrics>& s232);

/// One column of the statistics catalog: counts, probabilities and the
/// expectation of every per-situation metric.
struct StatsReport {
  std::string symbol;
  std::string aggregation;
  std::int64_t period_start = 0; // timestamps echoed for comparisons
  std::int64_t period_end = 0;
  double timescale = 0.0;

  std::size_t n_candles = 0;
  std::size_t n_trends = 0;
  std::size_t n_123 = 0;
  std::size_t n_323 = 0;
  std::size_t n_232 = 0;
  std::size_t n_censored = 0;
  std::size_t n_degenerate = 0;
  std::size_t n_rescinded = 0;

  Probabilities prob;

  std::optional<double> e_movements;

  std::optional<double> e_r_atr_123, e_g_atr_123, e_r_pct_123, e_corr_move_123;
  std::optional<double> e_r_atr_323, e_g_atr_323, e_r_pct_323, e_corr_move_323;

  std::optional<double> e_dynamic, e_rel_dur_dynamic;
  std::optional<double> e_lagged_dynamic, e_rel_dur_lagged;
  std::optional<double> e_rel_dur_break;
  std::optional<double> e_move_atr, e_corr_atr, e_move_rel, e_corr_rel;

  std::vector<HistogramBin> histogram;
  // (rel dur of dyn, dynamic) per included 2-3-2, for the reversed CDF
  std::vector<std::pair<double, double>> dynamic_samples;

  std::string to_json() const;
  std::string to_text() const;
};

StatsReport build_report(const CandleSeries& series,
                         const std::vector<TrendRecord>& trends,
                         const std::vector<SituationRecord>& records,
                         const IndicatorSeries& atr, double timescale,
                         double histogram_bin_width = 0.25,
                         double histogram_cap = 4.0);

} // namespace trendlab
