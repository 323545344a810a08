#pragma once

#include "trendlab/candle.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace trendlab {

/// Cross-correlation values over a range of integer shifts.
struct Correlogram {
  std::vector<std::size_t> shifts;
  std::vector<double> phi;
  std::size_t best_shift = 0;
  double best_phi = 0.0;
  bool truncated = false; // true when the requested range was cut down
};

struct WavelengthOptions {
  std::size_t n_min = 2;
  std::size_t n_max = 300;
  bool centered = false; // mean-subtracted correlation, off by default
};

/// X_t^n = a_t - b_t^n on t in [floor(n/2), M-1-floor(n/2)].
/// Returns the defined values only (length M - 2*floor(n/2)).
std::vector<double> detrended_series(const std::vector<double>& a,
                                     std::size_t n);

/// Uncentered cosine similarity <x,y> / (|x| |y|). Set `centered` to
/// subtract the means first (sensitivity analysis only).
double correlation(const std::vector<double>& x, const std::vector<double>& y,
                   bool centered = false);

/// phi_n = correlation of (X^n_t) and (X^n_{t+n}) for
/// t = floor(n/2) .. N-floor(n/2), N = M-n-1.
double cross_correlation(const std::vector<double>& a, std::size_t n,
                         bool centered = false);

/// True when the shifted index ranges for phi_n are long enough.
bool shift_admissible(std::size_t series_length, std::size_t n);

Correlogram correlogram(const std::vector<double>& a,
                        const WavelengthOptions& opts = {});

/// Smallest shift achieving the maximal phi over the stored range.
std::pair<std::size_t, double> dominant_wavelength(const Correlogram& c);

} // namespace trendlab
