#include "trendlab/trend_engine.hpp"

#include <algorithm>

namespace trendlab {

namespace {

// One direction of the indicator. The up machine reads minima as
// support points (P1/P3) and maxima as resistance points (P2); the
// down machine mirrors both roles and every comparison.
class Machine {
public:
  Machine(TrendDirection dir, const CandleSeries& series,
          TrendRunResult& out)
      : dir_(dir), sign_(dir == TrendDirection::Up ? 1 : -1),
        series_(series), out_(out) {}

  void on_event(const ExtremumEvent& e, std::size_t bar) {
    const bool support = is_support(e.kind);
    if (support)
      on_support(e, bar);
    else
      on_resistance(e, bar);
  }

  void on_bar(std::size_t t) {
    if (phase_ == Phase::Active) {
      if (breach_support(t, cur_p3_.price)) {
        finish_trend(t);
      } else {
        // an open 3-2-3 passes once its P2 is taken out
        for (std::size_t idx : open_323_) {
          SituationRecord& r = out_.situations[idx];
          if (r.outcome == SituationOutcome::Pending &&
              breach_resistance(t, r.p2.price))
            r.outcome = SituationOutcome::P2Passed;
        }
        prune_resolved(open_323_);
      }
    } else if (phase_ == Phase::Forming) {
      const bool act = breach_resistance(t, candidate_p2_.price);
      const bool fail = breach_support(t, candidate_p3_.price);
      if (act && fail) {
        phase_ = Phase::Seeking; // outside bar: activation suppressed
      } else if (act) {
        activate(t);
      } else if (fail) {
        phase_ = Phase::Seeking;
      }
    }
    resolve_open_123(t);
  }

  void on_series_end() {
    for (std::size_t idx : open_123_)
      censor(out_.situations[idx]);
    open_123_.clear();
    for (std::size_t idx : open_323_)
      censor(out_.situations[idx]);
    open_323_.clear();
    if (phase_ == Phase::Active) {
      if (open_232_) censor(out_.situations[*open_232_]);
      trend_.movements = 1 + n232_;
      trend_.situations_232 = n232_;
      out_.trends.push_back(trend_); // censored: no break bar
    }
  }

private:
  enum class Phase { Seeking, Forming, Active };

  bool is_support(ExtremumEvent::Kind k) const {
    return (dir_ == TrendDirection::Up) == (k == ExtremumEvent::Kind::Minimum);
  }
  bool better(double a, double b) const { return sign_ * (a - b) > 0; }
  bool breach_resistance(std::size_t t, double level) const {
    return sign_ > 0 ? series_[t].high > level : series_[t].low < level;
  }
  bool breach_support(std::size_t t, double level) const {
    return sign_ > 0 ? series_[t].low < level : series_[t].high > level;
  }
  static void censor(SituationRecord& r) {
    if (r.outcome == SituationOutcome::Pending)
      r.outcome = SituationOutcome::Censored;
  }

  void on_support(const ExtremumEvent& e, std::size_t bar) {
    const PricePoint p{e.at, e.price, e.identified_at};
    if (phase_ == Phase::Active) {
      if (better(e.price, cur_p3_.price)) {
        // new P3; emit a 3-2-3 unless the current P2 is already broken
        bool p2_broken = false;
        for (std::size_t u = cur_p2_.at + 1; u <= bar && !p2_broken; ++u)
          p2_broken = breach_resistance(u, cur_p2_.price);
        if (p2_broken) {
          ++out_.ignored_situations;
        } else {
          SituationRecord r;
          r.kind = SituationKind::S323;
          r.direction = dir_;
          r.p3_old = cur_p3_;
          r.p2 = cur_p2_;
          r.p3_new = p;
          r.close_at_identification = series_[bar].close;
          r.decision_bar = bar;
          open_323_.push_back(out_.situations.size());
          trend_situations_.push_back(out_.situations.size());
          out_.situations.push_back(r);
        }
        cur_p3_ = p;
      }
      // an equal or lower support while active is not part of the trend
    } else {
      if (last_support_ && last_resistance_ &&
          last_support_->at < last_resistance_->at &&
          last_resistance_->at < p.at && better(p.price, last_support_->price)) {
        candidate_p1_ = *last_support_;
        candidate_p2_ = *last_resistance_;
        candidate_p3_ = p;
        SituationRecord r;
        r.kind = SituationKind::S123;
        r.direction = dir_;
        r.p1 = candidate_p1_;
        r.p2 = candidate_p2_;
        r.p3 = candidate_p3_;
        r.close_at_identification = series_[bar].close;
        r.decision_bar = bar;
        candidate_s123_ = out_.situations.size();
        open_123_.push_back(out_.situations.size());
        out_.situations.push_back(r);
        phase_ = Phase::Forming;
      } else {
        phase_ = Phase::Seeking;
        candidate_s123_.reset();
      }
    }
    last_support_ = p;
  }

  void on_resistance(const ExtremumEvent& e, std::size_t bar) {
    const PricePoint p{e.at, e.price, e.identified_at};
    if (phase_ == Phase::Active && better(e.price, cur_p2_.price)) {
      // confirmed new P2: the previous 2-3-2 has passed its P2
      if (open_232_) {
        out_.situations[*open_232_].outcome = SituationOutcome::P2Passed;
        open_232_.reset();
      }
      SituationRecord r;
      r.kind = SituationKind::S232;
      r.direction = dir_;
      r.p2 = cur_p2_;
      r.p3 = cur_p3_;
      r.p2_new = p;
      r.close_at_identification = series_[bar].close;
      r.decision_bar = bar;
      r.t2_break = p.at;
      for (std::size_t u = cur_p3_.at + 1; u <= p.at; ++u) {
        if (breach_resistance(u, cur_p2_.price)) {
          r.t2_break = u;
          break;
        }
      }
      open_232_ = out_.situations.size();
      trend_situations_.push_back(out_.situations.size());
      out_.situations.push_back(r);
      ++n232_;
      cur_p2_ = p;
    }
    last_resistance_ = p;
  }

  void activate(std::size_t t) {
    trend_ = TrendRecord{};
    trend_.direction = dir_;
    trend_.p1 = candidate_p1_;
    trend_.p2 = candidate_p2_;
    trend_.p3 = candidate_p3_;
    trend_.activated_at = t;
    cur_p2_ = candidate_p2_;
    cur_p3_ = candidate_p3_;
    n232_ = 0;
    open_232_.reset();
    trend_situations_.clear();
    trend_s123_ = candidate_s123_;
    candidate_s123_.reset();
    phase_ = Phase::Active;
  }

  void finish_trend(std::size_t t) {
    if (n232_ == 0) {
      // Activation without a single confirmed new P2: not a trend.
      // Discard the record and anything emitted under it.
      if (trend_s123_) {
        SituationRecord& r = out_.situations[*trend_s123_];
        r.outcome = SituationOutcome::Failed;
        r.rescinded = true;
      }
      for (std::size_t idx : trend_situations_) {
        out_.situations[idx].outcome = SituationOutcome::Failed;
        out_.situations[idx].rescinded = true;
      }
    } else {
      if (open_232_) {
        out_.situations[*open_232_].outcome = SituationOutcome::Failed;
        open_232_.reset();
      }
      for (std::size_t idx : open_323_) {
        if (out_.situations[idx].outcome == SituationOutcome::Pending)
          out_.situations[idx].outcome = SituationOutcome::Failed;
      }
      trend_.broken_at = t;
      trend_.movements = 1 + n232_;
      trend_.situations_232 = n232_;
      out_.trends.push_back(trend_);
    }
    open_323_.clear();
    trend_situations_.clear();
    trend_s123_.reset();
    phase_ = Phase::Seeking;
  }

  void resolve_open_123(std::size_t t) {
    for (std::size_t idx : open_123_) {
      SituationRecord& r = out_.situations[idx];
      if (r.outcome != SituationOutcome::Pending) continue;
      const bool act = breach_resistance(t, r.p2.price);
      const bool fail = breach_support(t, r.p3.price);
      if (act && fail)
        r.outcome = SituationOutcome::Failed;
      else if (act)
        r.outcome = SituationOutcome::TrendActivated;
      else if (fail)
        r.outcome = SituationOutcome::Failed;
    }
    prune_resolved(open_123_);
  }

  void prune_resolved(std::vector<std::size_t>& open) {
    std::erase_if(open, [this](std::size_t idx) {
      return out_.situations[idx].outcome != SituationOutcome::Pending;
    });
  }

  TrendDirection dir_;
  int sign_;
  const CandleSeries& series_;
  TrendRunResult& out_;

  Phase phase_ = Phase::Seeking;
  std::optional<PricePoint> last_support_;
  std::optional<PricePoint> last_resistance_;
  PricePoint candidate_p1_, candidate_p2_, candidate_p3_;
  std::optional<std::size_t> candidate_s123_;

  TrendRecord trend_;
  PricePoint cur_p2_, cur_p3_;
  std::size_t n232_ = 0;
  std::optional<std::size_t> open_232_;
  std::optional<std::size_t> trend_s123_;
  std::vector<std::size_t> trend_situations_;
  std::vector<std::size_t> open_123_;
  std::vector<std::size_t> open_323_;
};

} // namespace

TrendRunResult run_trend_indicator(const std::vector<ExtremumEvent>& extrema,
                                   const CandleSeries& series) {
  std::vector<ExtremumEvent> events;
  events.reserve(extrema.size());
  for (const ExtremumEvent& e : extrema) {
    if (e.provisional) continue;
    if (e.identified_at < e.at)
      throw Error("trend indicator: identification precedes occurrence");
    if (e.identified_at >= series.size())
      throw Error("trend indicator: extremum beyond series");
    if (!events.empty() && events.back().kind == e.kind)
      throw Error("trend indicator: extrema must alternate");
    events.push_back(e);
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const ExtremumEvent& a, const ExtremumEvent& b) {
                     if (a.identified_at != b.identified_at)
                       return a.identified_at < b.identified_at;
                     return a.at < b.at;
                   });

  TrendRunResult result;
  Machine up(TrendDirection::Up, series, result);
  Machine down(TrendDirection::Down, series, result);

  std::size_t next_event = 0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    while (next_event < events.size() &&
           events[next_event].identified_at == t) {
      up.on_event(events[next_event], t);
      down.on_event(events[next_event], t);
      ++next_event;
    }
    up.on_bar(t);
    down.on_bar(t);
  }
  up.on_series_end();
  down.on_series_end();

  std::stable_sort(result.trends.begin(), result.trends.end(),
                   [](const TrendRecord& a, const TrendRecord& b) {
                     return a.activated_at < b.activated_at;
                   });
  return result;
}

std::size_t count_movements(const TrendRecord& trend) {
  if (trend.movements < 1)
    throw Error("count_movements: trend never activated");
  return trend.movements;
}

} // namespace trendlab
