#pragma once

#include "trendlab/candle.hpp"
#include "trendlab/sar_minmax.hpp"
#include "trendlab/wavelength.hpp"

#include <optional>
#include <vector>

namespace trendlab {

struct CalibrationPoint {
  double timescale = 0.0;
  std::optional<double> avg_period_length; // absent: too few extrema
  std::size_t extrema_count = 0;
};

struct CalibrationCurve {
  std::vector<CalibrationPoint> grid; // sorted by timescale
  std::optional<double> selected;
};

/// The default sweep grid: 0.4, 0.5, ..., 6.0.
std::vector<double> default_timescale_grid(double start = 0.4,
                                           double stop = 6.0,
                                           double step = 0.1);

/// Runs the SAR/MinMax pipeline for every timescale in the grid and
/// records the resulting average period length. Grid points where the
/// pipeline fails or yields too few extrema are kept but flagged
/// undefined. Throws when every point is undefined.
CalibrationCurve period_length_curve(const CandleSeries& series,
                                     const std::vector<double>& grid,
                                     const SarConfig& base = {});

/// Grid point minimizing |p(t) - n_star|; ties go to the smaller t.
double select_timescale(const CalibrationCurve& curve, std::size_t n_star);

struct CalibrationResult {
  std::size_t n_star = 0;
  double phi_star = 0.0;
  double t_star = 0.0;
  Correlogram correlogram;
  CalibrationCurve curve;
  bool weak_wavelength = false;  // phi_star below the warning threshold
  bool edge_selection = false;   // t_star sits on the grid boundary
};

/// phi below this is flagged as a weak wavelength signal.
inline constexpr double kWeakPhiThreshold = 0.02;

CalibrationResult calibrate(const CandleSeries& series,
                            const WavelengthOptions& wl_opts = {},
                            const std::vector<double>& grid =
                                default_timescale_grid(),
                            const SarConfig& base = {});

} // namespace trendlab
