#pragma once

#include "trendlab/candle.hpp"
#include "trendlab/sar_minmax.hpp"

#include <optional>
#include <vector>

namespace trendlab {

enum class TrendDirection { Up, Down };

struct PricePoint {
  std::size_t at = 0;
  double price = 0.0;
  std::size_t identified_at = 0;
};

enum class SituationKind { S123, S323, S232 };

enum class SituationOutcome { Pending, TrendActivated, P2Passed, Failed, Censored };

/// One detected situation with every price/time its metrics need.
/// Field roles by kind:
///   S123: p1, p2, p3 with close at P3 identification.
///   S323: p3_old, p2, p3_new with close at P3_new identification.
///   S232: p2, p3, p2_new with close at P2_new identification and the
///         bar that first passed the old P2 (t2_break).
struct SituationRecord {
  SituationKind kind = SituationKind::S123;
  TrendDirection direction = TrendDirection::Up;
  PricePoint p1;
  PricePoint p2;
  PricePoint p3;
  PricePoint p2_new;
  PricePoint p3_old;
  PricePoint p3_new;
  double close_at_identification = 0.0;
  std::size_t decision_bar = 0; // identification bar of the defining point
  std::optional<std::size_t> t2_break;
  SituationOutcome outcome = SituationOutcome::Pending;
  bool rescinded = false; // belongs to a discarded activation; excluded
};

struct TrendRecord {
  TrendDirection direction = TrendDirection::Up;
  PricePoint p1;
  PricePoint p2;       // the P2 the activation crossed
  PricePoint p3;       // the P3 anchoring the activation
  std::size_t activated_at = 0;
  std::optional<std::size_t> broken_at; // absent: censored by series end
  std::size_t movements = 0;            // 1 + number of confirmed new P2s
  std::size_t situations_232 = 0;
};

struct TrendRunResult {
  std::vector<TrendRecord> trends;
  std::vector<SituationRecord> situations;
  std::size_t ignored_situations = 0; // suppressed per the P2-broken rule
};

/// Runs the 1-2-3 trend indicator over an alternating extrema stream.
/// Extrema are consumed in identification order; activation and break
/// checks scan the candles bar by bar. Provisional trailing extrema are
/// skipped. See README for the exact lifecycle rules.
TrendRunResult run_trend_indicator(const std::vector<ExtremumEvent>& extrema,
                                   const CandleSeries& series);

/// Movement count of an activated trend; throws for non-activated use.
std::size_t count_movements(const TrendRecord& trend);

} // namespace trendlab
