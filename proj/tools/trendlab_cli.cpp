#include "CLI11.hpp"

#include "trendlab/calibration.hpp"
#include "trendlab/csv.hpp"
#include "trendlab/format.hpp"
#include "trendlab/indicators.hpp"
#include "trendlab/sar_minmax.hpp"
#include "trendlab/stats.hpp"
#include "trendlab/synth.hpp"
#include "trendlab/trend_engine.hpp"
#include "trendlab/wavelength.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace trendlab;

struct CommonOpts {
  std::string input;
  std::string out_dir = ".";
  std::string format = "csv";
  bool strict = false;
};

struct AnalysisOpts {
  std::size_t n_min = 2;
  std::size_t n_max = 300;
  double grid_start = 0.4;
  double grid_stop = 6.0;
  double grid_step = 0.1;
  double delta_factor = 0.3;
  std::size_t atr_period = 100;
  std::optional<double> timescale;
  double bin_width = 0.25;
  double cap = 4.0;
};

std::vector<std::string> g_warnings;

void warn(const std::string& msg) {
  g_warnings.push_back(msg);
  std::cerr << "warning: " << msg << '\n';
}

// All artifact files go through one sink: binary mode, '\n' endings,
// shortest round-trip decimals. Reruns are byte-identical.
void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << body;
  if (!out) throw Error("write failed: " + path.string());
}

std::filesystem::path artifact(const CommonOpts& common,
                               const std::string& name) {
  std::filesystem::create_directories(common.out_dir);
  return std::filesystem::path(common.out_dir) / name;
}

std::string correlogram_csv(const Correlogram& cg) {
  std::ostringstream out;
  out << "shift,phi,is_best\n";
  for (std::size_t i = 0; i < cg.shifts.size(); ++i)
    out << cg.shifts[i] << ',' << format_double(cg.phi[i]) << ','
        << (cg.shifts[i] == cg.best_shift ? 1 : 0) << '\n';
  return out.str();
}

std::string curve_csv(const CalibrationCurve& curve) {
  std::ostringstream out;
  out << "timescale,avg_period_length,extrema_count,selected\n";
  for (const CalibrationPoint& p : curve.grid) {
    out << format_double(p.timescale) << ',';
    if (p.avg_period_length) out << format_double(*p.avg_period_length);
    out << ',' << p.extrema_count << ','
        << (curve.selected && *curve.selected == p.timescale ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string extrema_csv(const CandleSeries& series,
                        const std::vector<ExtremumEvent>& extrema) {
  std::ostringstream out;
  out << "kind,at,timestamp,price,identified_at,provisional\n";
  for (const ExtremumEvent& e : extrema)
    out << (e.kind == ExtremumEvent::Kind::Minimum ? "min" : "max") << ','
        << e.at << ',' << series[e.at].timestamp << ','
        << format_double(e.price) << ',' << e.identified_at << ','
        << (e.provisional ? 1 : 0) << '\n';
  return out.str();
}

const char* direction_name(TrendDirection d) {
  return d == TrendDirection::Up ? "up" : "down";
}

const char* outcome_name(SituationOutcome o) {
  switch (o) {
    case SituationOutcome::Pending: return "pending";
    case SituationOutcome::TrendActivated: return "trend_activated";
    case SituationOutcome::P2Passed: return "p2_passed";
    case SituationOutcome::Failed: return "failed";
    case SituationOutcome::Censored: return "censored";
  }
  return "?";
}

std::string trends_csv(const std::vector<TrendRecord>& trends) {
  std::ostringstream out;
  out << "direction,p1_at,p1_price,p2_at,p2_price,p3_at,p3_price,"
         "activated_at,broken_at,movements,situations_232\n";
  for (const TrendRecord& t : trends) {
    out << direction_name(t.direction) << ',' << t.p1.at << ','
        << format_double(t.p1.price) << ',' << t.p2.at << ','
        << format_double(t.p2.price) << ',' << t.p3.at << ','
        << format_double(t.p3.price) << ',' << t.activated_at << ',';
    if (t.broken_at) out << *t.broken_at;
    out << ',' << t.movements << ',' << t.situations_232 << '\n';
  }
  return out.str();
}

void point_cols(std::ostringstream& out, const PricePoint& p, bool used) {
  if (used)
    out << ',' << p.at << ',' << format_double(p.price);
  else
    out << ",,";
}

std::string situations_csv(const std::vector<SituationRecord>& records) {
  std::ostringstream out;
  out << "kind,direction,outcome,rescinded,decision_bar,close,"
         "p1_at,p1_price,p2_at,p2_price,p3_at,p3_price,"
         "p2_new_at,p2_new_price,p3_old_at,p3_old_price,"
         "p3_new_at,p3_new_price,t2_break\n";
  for (const SituationRecord& r : records) {
    const bool s123 = r.kind == SituationKind::S123;
    const bool s323 = r.kind == SituationKind::S323;
    const bool s232 = r.kind == SituationKind::S232;
    out << (s123 ? "1-2-3" : s323 ? "3-2-3" : "2-3-2") << ','
        << direction_name(r.direction) << ',' << outcome_name(r.outcome)
        << ',' << (r.rescinded ? 1 : 0) << ',' << r.decision_bar << ','
        << format_double(r.close_at_identification);
    point_cols(out, r.p1, s123);
    point_cols(out, r.p2, true);
    point_cols(out, r.p3, s123 || s232);
    point_cols(out, r.p2_new, s232);
    point_cols(out, r.p3_old, s323);
    point_cols(out, r.p3_new, s323);
    out << ',';
    if (r.t2_break) out << *r.t2_break;
    out << '\n';
  }
  return out.str();
}

std::string histogram_csv(const std::vector<HistogramBin>& bins) {
  std::ostringstream out;
  out << "lower,upper,frequency\n";
  for (const HistogramBin& b : bins) {
    out << format_double(b.lower) << ',';
    if (std::isfinite(b.upper)) out << format_double(b.upper);
    out << ',' << format_double(b.frequency) << '\n';
  }
  return out.str();
}

std::string fcdf_csv(const std::vector<std::pair<double, double>>& samples) {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 20; ++i) xs.push_back(0.25 * i); // 0 .. 5
  for (int i = 0; i <= 12; ++i) ys.push_back(1.0 + 0.25 * i); // 1 .. 4
  const std::vector<double> grid = reversed_cdf(samples, xs, ys);
  std::ostringstream out;
  out << "rel_duration,dynamic,frequency\n";
  for (std::size_t iy = 0; iy < ys.size(); ++iy)
    for (std::size_t ix = 0; ix < xs.size(); ++ix)
      out << format_double(xs[ix]) << ',' << format_double(ys[iy]) << ','
          << format_double(grid[iy * xs.size() + ix]) << '\n';
  return out.str();
}

WavelengthOptions wl_options(const AnalysisOpts& a) {
  WavelengthOptions o;
  o.n_min = a.n_min;
  o.n_max = a.n_max;
  return o;
}

SarConfig sar_config(const AnalysisOpts& a, double timescale) {
  SarConfig c;
  c.timescale = timescale;
  c.delta_factor = a.delta_factor;
  c.atr_period = a.atr_period;
  return c;
}

std::vector<double> grid_of(const AnalysisOpts& a) {
  return default_timescale_grid(a.grid_start, a.grid_stop, a.grid_step);
}

int cmd_wavelength(const CommonOpts& common, const AnalysisOpts& a) {
  const CandleSeries series = load_csv(common.input);
  const std::vector<double> mids = mid_price_series(series);
  const Correlogram cg = correlogram(mids, wl_options(a));
  if (cg.truncated)
    warn("correlogram truncated: series too short for the full shift range");
  write_file(artifact(common, "correlogram.csv"), correlogram_csv(cg));
  std::cout << "n*=" << cg.best_shift << " phi=" << format_double(cg.best_phi)
            << " shifts=" << cg.shifts.size() << '\n';
  return 0;
}

int cmd_calibrate(const CommonOpts& common, const AnalysisOpts& a) {
  const CandleSeries series = load_csv(common.input);
  const CalibrationResult res =
      calibrate(series, wl_options(a), grid_of(a), sar_config(a, 1.0));
  if (res.weak_wavelength)
    warn("weak dominant wavelength: phi* = " + format_double(res.phi_star));
  if (res.edge_selection)
    warn("selected timescale sits on the grid boundary; widen the grid");
  if (res.correlogram.truncated)
    warn("correlogram truncated: series too short for the full shift range");
  write_file(artifact(common, "correlogram.csv"),
             correlogram_csv(res.correlogram));
  write_file(artifact(common, "calibration_curve.csv"), curve_csv(res.curve));
  std::cout << "n*=" << res.n_star << " phi=" << format_double(res.phi_star)
            << " t*=" << format_double(res.t_star) << '\n';
  return 0;
}

int cmd_extrema(const CommonOpts& common, const AnalysisOpts& a) {
  const CandleSeries series = load_csv(common.input);
  const double t = a.timescale.value_or(1.0);
  const auto extrema = run_minmax(series, sar_config(a, t));
  write_file(artifact(common, "extrema.csv"), extrema_csv(series, extrema));
  std::cout << "extrema=" << extrema.size() << " timescale=" << format_double(t)
            << '\n';
  return 0;
}

double resolve_timescale(const CandleSeries& series, const AnalysisOpts& a) {
  if (a.timescale) return *a.timescale;
  const CalibrationResult res =
      calibrate(series, wl_options(a), grid_of(a), sar_config(a, 1.0));
  if (res.weak_wavelength)
    warn("weak dominant wavelength: phi* = " + format_double(res.phi_star));
  if (res.edge_selection)
    warn("selected timescale sits on the grid boundary; widen the grid");
  std::cout << "calibrated timescale t*=" << format_double(res.t_star)
            << " (n*=" << res.n_star << ")\n";
  return res.t_star;
}

int cmd_trends(const CommonOpts& common, const AnalysisOpts& a) {
  const CandleSeries series = load_csv(common.input);
  const double t = resolve_timescale(series, a);
  const auto extrema = run_minmax(series, sar_config(a, t));
  const TrendRunResult run = run_trend_indicator(extrema, series);
  write_file(artifact(common, "trends.csv"), trends_csv(run.trends));
  write_file(artifact(common, "situations.csv"), situations_csv(run.situations));
  std::cout << "trends=" << run.trends.size()
            << " situations=" << run.situations.size()
            << " ignored=" << run.ignored_situations << '\n';
  return 0;
}

int cmd_stats(const CommonOpts& common, const AnalysisOpts& a) {
  const CandleSeries series = load_csv(common.input);
  const double t = resolve_timescale(series, a);
  const SarConfig config = sar_config(a, t);
  const auto extrema = run_minmax(series, config);
  const TrendRunResult run = run_trend_indicator(extrema, series);
  const IndicatorSeries atr_series = atr(series, config.atr_period);
  const StatsReport rep = build_report(series, run.trends, run.situations,
                                       atr_series, t, a.bin_width, a.cap);

  write_file(artifact(common, "trends.csv"), trends_csv(run.trends));
  write_file(artifact(common, "situations.csv"), situations_csv(run.situations));
  write_file(artifact(common, "report.json"), rep.to_json() + "\n");
  write_file(artifact(common, "report.txt"), rep.to_text());
  if (!rep.histogram.empty())
    write_file(artifact(common, "histogram.csv"), histogram_csv(rep.histogram));
  if (!rep.dynamic_samples.empty())
    write_file(artifact(common, "fcdf.csv"), fcdf_csv(rep.dynamic_samples));

  if (common.format == "json")
    std::cout << rep.to_json() << '\n';
  else
    std::cout << rep.to_text();
  return 0;
}

struct SynthOpts {
  std::string kind = "sine";
  std::size_t length = 1000;
  std::uint64_t seed = 1;
  double period = 50.0;
  double amplitude = 10.0;
  double base = 100.0;
  double noise_sigma = 0.0;
  double step_sigma = 1.0;
  double drift = 0.0;
  double half_range = 0.2;
  std::vector<std::string> anchors;
  std::string output = "synth.csv";
};

int cmd_synth(const CommonOpts& common, const SynthOpts& s) {
  SynthSpec spec;
  if (s.kind == "sine")
    spec.kind = SynthSpec::Kind::Sine;
  else if (s.kind == "staircase")
    spec.kind = SynthSpec::Kind::TrendStaircase;
  else if (s.kind == "walk")
    spec.kind = SynthSpec::Kind::RandomWalk;
  else
    throw Error("unknown kind: " + s.kind + " (sine|staircase|walk)");
  spec.length = s.length;
  spec.seed = s.seed;
  spec.period = s.period;
  spec.amplitude = s.amplitude;
  spec.base = s.base;
  spec.noise_sigma = s.noise_sigma;
  spec.step_sigma = s.step_sigma;
  spec.drift = s.drift;
  spec.half_range = s.half_range;
  for (const std::string& a : s.anchors) {
    const auto colon = a.find(':');
    if (colon == std::string::npos)
      throw Error("anchor must be bar:price, got " + a);
    spec.anchors.emplace_back(std::stoull(a.substr(0, colon)),
                              std::stod(a.substr(colon + 1)));
  }
  const CandleSeries series = generate(spec);
  const auto path = artifact(common, s.output);
  write_csv(series, path.string());
  std::cout << "wrote " << path.string() << " (" << series.size()
            << " candles)\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"trendlab: wavelength, calibration and 1-2-3 trend analytics "
               "for OHLC candle series"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonOpts common;
  AnalysisOpts analysis;
  SynthOpts synth_opts;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", common.input, "candle CSV file");
    if (needs_input) in->required();
    sub->add_option("--out-dir", common.out_dir, "artifact directory");
    sub->add_option("--format", common.format, "stdout format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--strict", common.strict,
                  "treat analysis warnings as errors (exit 1)");
  };
  auto add_wavelength = [&](CLI::App* sub) {
    sub->add_option("--n-min", analysis.n_min, "smallest shift");
    sub->add_option("--n-max", analysis.n_max, "largest shift");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid-start", analysis.grid_start, "first timescale");
    sub->add_option("--grid-stop", analysis.grid_stop, "last timescale");
    sub->add_option("--grid-step", analysis.grid_step, "timescale step");
  };
  auto add_sar = [&](CLI::App* sub) {
    sub->add_option("--delta-factor", analysis.delta_factor,
                    "hysteresis threshold as a multiple of ATR");
    sub->add_option("--atr-period", analysis.atr_period, "ATR window");
  };
  auto add_timescale = [&](CLI::App* sub) {
    sub->add_option("--timescale", analysis.timescale,
                    "MACD timescale; omitted: stats/trends calibrate first");
  };

  CLI::App* wl = app.add_subcommand("wavelength", "dominant wavelength n*");
  add_common(wl, true);
  add_wavelength(wl);

  CLI::App* cal = app.add_subcommand("calibrate", "timescale calibration t*");
  add_common(cal, true);
  add_wavelength(cal);
  add_grid(cal);
  add_sar(cal);

  CLI::App* ext = app.add_subcommand("extrema", "relevant minima and maxima");
  add_common(ext, true);
  add_sar(ext);
  add_timescale(ext);

  CLI::App* trd = app.add_subcommand("trends", "1-2-3 trends and situations");
  add_common(trd, true);
  add_wavelength(trd);
  add_grid(trd);
  add_sar(trd);
  add_timescale(trd);

  CLI::App* st = app.add_subcommand("stats", "full statistics catalog");
  add_common(st, true);
  add_wavelength(st);
  add_grid(st);
  add_sar(st);
  add_timescale(st);
  st->add_option("--bin-width", analysis.bin_width, "dynamic histogram bin");
  st->add_option("--cap", analysis.cap, "dynamic histogram terminal bin edge");

  CLI::App* sy = app.add_subcommand("synth", "deterministic fixture series");
  add_common(sy, false);
  sy->add_option("--kind", synth_opts.kind, "sine|staircase|walk");
  sy->add_option("--length", synth_opts.length, "number of candles");
  sy->add_option("--seed", synth_opts.seed, "RNG seed");
  sy->add_option("--period", synth_opts.period, "sine period in bars");
  sy->add_option("--amplitude", synth_opts.amplitude, "sine amplitude");
  sy->add_option("--base", synth_opts.base, "base price level");
  sy->add_option("--noise-sigma", synth_opts.noise_sigma, "sine noise sigma");
  sy->add_option("--step-sigma", synth_opts.step_sigma, "walk step sigma");
  sy->add_option("--drift", synth_opts.drift, "walk drift per bar");
  sy->add_option("--half-range", synth_opts.half_range,
                 "candle half range around the mid path");
  sy->add_option("--anchor", synth_opts.anchors,
                 "staircase anchor bar:price (repeatable)");
  sy->add_option("--output", synth_opts.output, "output file name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    int rc = 0;
    if (wl->parsed()) rc = cmd_wavelength(common, analysis);
    else if (cal->parsed()) rc = cmd_calibrate(common, analysis);
    else if (ext->parsed()) rc = cmd_extrema(common, analysis);
    else if (trd->parsed()) rc = cmd_trends(common, analysis);
    else if (st->parsed()) rc = cmd_stats(common, analysis);
    else if (sy->parsed()) rc = cmd_synth(common, synth_opts);
    if (rc == 0 && common.strict && !g_warnings.empty()) {
      std::cerr << "error: " << g_warnings.size()
                << " warning(s) escalated by --strict\n";
      return 1;
    }
    return rc;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
