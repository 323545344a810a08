#include "trendlab/wavelength.hpp"
#include "trendlab/indicators.hpp"

#include <cmath>

namespace trendlab {

std::vector<double> detrended_series(const std::vector<double>& a,
                                     std::size_t n) {
  if (n == 0) throw Error("detrended_series: n must be >= 1");
  const std::size_t h = n / 2;
  const IndicatorSeries b = centered_ma(a, n); // throws when too short
  std::vector<double> x;
  x.reserve(a.size() - 2 * h);
  for (std::size_t t = h; t + h < a.size(); ++t)
    x.push_back(a[t] - b.values[t]);
  return x;
}

double correlation(const std::vector<double>& x, const std::vector<double>& y,
                   bool centered) {
  if (x.size() != y.size() || x.empty())
    throw Error("correlation: need equal nonzero lengths");
  double mx = 0.0, my = 0.0;
  if (centered) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      mx += x[i];
      my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
  }
  double xy = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i] - mx;
    const double yi = y[i] - my;
    xy += xi * yi;
    xx += xi * xi;
    yy += yi * yi;
  }
  if (xx == 0.0 || yy == 0.0) throw Error("correlation: degenerate vector");
  return xy / (std::sqrt(xx) * std::sqrt(yy));
}

bool shift_admissible(std::size_t series_length, std::size_t n) {
  if (n == 0) return false;
  const std::size_t h = n / 2;
  // Both Z-vectors share t = h .. N-h with N = M-n-1; require length >= 2.
  return series_length >= n + 2 * h + 2;
}

double cross_correlation(const std::vector<double>& a, std::size_t n,
                         bool centered) {
  const std::size_t M = a.size();
  if (!shift_admissible(M, n))
    throw Error("cross_correlation: shift " + std::to_string(n) +
                " too large for series of length " + std::to_string(M));
  const std::size_t h = n / 2;
  const std::size_t N = M - n - 1;
  const std::vector<double> x = detrended_series(a, n); // x[i] = X_{h+i}
  std::vector<double> z1, z2;
  z1.reserve(N - 2 * h + 1);
  z2.reserve(N - 2 * h + 1);
  for (std::size_t t = h; t + h <= N; ++t) {
    z1.push_back(x[t - h]);
    z2.push_back(x[t + n - h]);
  }
  return correlation(z1, z2, centered);
}

Correlogram correlogram(const std::vector<double>& a,
                        const WavelengthOptions& opts) {
  if (opts.n_min < 1 || opts.n_min > opts.n_max)
    throw Error("correlogram: need 1 <= n_min <= n_max");
  Correlogram c;
  for (std::size_t n = opts.n_min; n <= opts.n_max; ++n) {
    if (!shift_admissible(a.size(), n)) {
      c.truncated = true;
      break;
    }
    c.shifts.push_back(n);
    c.phi.push_back(cross_correlation(a, n, opts.centered));
  }
  if (c.shifts.empty())
    throw Error("correlogram: entire shift range inadmissible for series of "
                "length " + std::to_string(a.size()));
  const auto [n_star, phi_star] = dominant_wavelength(c);
  c.best_shift = n_star;
  c.best_phi = phi_star;
  return c;
}

std::pair<std::size_t, double> dominant_wavelength(const Correlogram& c) {
  if (c.shifts.empty()) throw Error("dominant_wavelength: empty correlogram");
  double top = c.phi[0];
  for (double v : c.phi) top = std::max(top, v);
  // smallest shift achieving the maximum; values within rounding noise
  // of the top count as ties (a pure cycle peaks at every multiple)
  const double cutoff = top - 1e-9 * std::max(1.0, std::abs(top));
  for (std::size_t i = 0; i < c.phi.size(); ++i)
    if (c.phi[i] >= cutoff) return {c.shifts[i], c.phi[i]};
  return {c.shifts[0], c.phi[0]};
}

} // namespace trendlab
