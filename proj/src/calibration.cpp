#include "trendlab/calibration.hpp"

#include <algorithm>
#include <cmath>

namespace trendlab {

std::vector<double> default_timescale_grid(double start, double stop,
                                           double step) {
  if (step <= 0.0 || start <= 0.0 || stop < start)
    throw Error("timescale grid: need 0 < start <= stop and step > 0");
  std::vector<double> grid;
  const int steps = static_cast<int>(std::round((stop - start) / step));
  for (int i = 0; i <= steps; ++i) {
    const double t = start + step * i;
    if (t > stop + step / 2.0) break;
    grid.push_back(t);
  }
  return grid;
}

CalibrationCurve period_length_curve(const CandleSeries& series,
                                     const std::vector<double>& grid,
                                     const SarConfig& base) {
  if (grid.empty()) throw Error("period_length_curve: empty grid");
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());

  CalibrationCurve curve;
  bool any_defined = false;
  for (double t : sorted) {
    if (t <= 0.0) throw Error("period_length_curve: non-positive timescale");
    CalibrationPoint point;
    point.timescale = t;
    try {
      SarConfig config = base;
      config.timescale = t;
      const auto extrema = run_minmax(series, config);
      point.extrema_count = extrema.size();
      point.avg_period_length = average_period_length(extrema);
      any_defined = true;
    } catch (const Error&) {
      // undefined grid point, kept as a gap in the curve
    }
    curve.grid.push_back(point);
  }
  if (!any_defined)
    throw Error("period_length_curve: series too short for calibration");
  return curve;
}

double select_timescale(const CalibrationCurve& curve, std::size_t n_star) {
  const double target = static_cast<double>(n_star);
  std::optional<double> best_t;
  double best_gap = 0.0;
  for (const CalibrationPoint& p : curve.grid) {
    if (!p.avg_period_length) continue;
    const double gap = std::abs(*p.avg_period_length - target);
    if (!best_t || gap < best_gap) {
      best_t = p.timescale;
      best_gap = gap;
    }
  }
  if (!best_t) throw Error("select_timescale: no defined grid point");
  return *best_t;
}

CalibrationResult calibrate(const CandleSeries& series,
                            const WavelengthOptions& wl_opts,
                            const std::vector<double>& grid,
                            const SarConfig& base) {
  CalibrationResult result;
  const std::vector<double> a = mid_price_series(series);
  result.correlogram = correlogram(a, wl_opts);
  result.n_star = result.correlogram.best_shift;
  result.phi_star = result.correlogram.best_phi;
  result.weak_wavelength = result.phi_star < kWeakPhiThreshold;

  result.curve = period_length_curve(series, grid, base);
  result.t_star = select_timescale(result.curve, result.n_star);
  result.curve.selected = result.t_star;
  result.edge_selection = result.t_star == result.curve.grid.front().timescale ||
                          result.t_star == result.curve.grid.back().timescale;
  return result;
}

} // namespace trendlab
