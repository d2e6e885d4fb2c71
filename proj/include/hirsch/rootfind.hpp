#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace hirsch::detail {

/// Bisection on a bracketed sign change. `ga` and `gb` must have opposite
/// signs (either may be zero). Returns the bracket midpoint once the bracket
/// half-width reaches `xtol`.
template <class F>
double bisect(F&& g, double a, double b, double ga, double gb, double xtol, int max_iter = 200) {
  if (ga == 0.0) return a;
  if (gb == 0.0) return b;
  for (int i = 0; i < max_iter && (b - a) > 2.0 * xtol; ++i) {
    double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;  // floating floor reached
    double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (ga > 0.0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
      gb = gm;
    }
  }
  return 0.5 * (a + b);
}

/// Golden-section minimization of f over [a, b]; returns (argmin, min).
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, double xtol, int max_iter = 200) {
  const double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double mid = 0.5 * (a + b);
  return {mid, f(mid)};
}

/// Absolute floor of the geometric scan grid used by the root solver.
inline constexpr double kScanFloor = 1e-30;

/// Scan abscissae over [lo, hi]: a uniform grid overlaid with a geometric
/// grid so that roots many decades below hi are still bracketed. Points at
/// or below zero are dropped; the result is sorted and deduplicated.
inline std::vector<double> make_scan_grid(double lo, double hi, int n, double floor = kScanFloor) {
  std::vector<double> pts;
  if (!(hi > lo)) {
    if (hi == lo && lo > 0.0) pts.push_back(lo);
    return pts;
  }
  pts.reserve(static_cast<std::size_t>(n) + n / 2 + 2);
  int n_uniform = std::max(8, n / 2);
  for (int k = 0; k <= n_uniform; ++k)
    pts.push_back(lo + (hi - lo) * static_cast<double>(k) / n_uniform);
  double geo_lo = std::max(lo, floor);
  if (geo_lo < hi) {
    int n_geo = std::max(8, n / 2);
    double log_lo = std::log(geo_lo);
    double log_hi = std::log(hi);
    for (int k = 0; k <= n_geo; ++k)
      pts.push_back(std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(k) / n_geo));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  pts.erase(std::remove_if(pts.begin(), pts.end(), [](double x) { return x <= 0.0; }), pts.end());
  return pts;
}

}  // namespace hirsch::detail
