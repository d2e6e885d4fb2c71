#pragma once

// Test-only oracles, independent of the library's solver paths. Expected
// values for non-trivial assertions are computed here (or frozen from a run
// of these routines), never taken from the implementation under test.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

/// Plain bisection on [lo, hi]; requires a sign change.
inline double bisect(const std::function<double(double)>& g, double lo, double hi,
                     double tol = 1e-14) {
  double glo = g(lo), ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) throw std::runtime_error("oracle_bisect: no sign change");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Hand-rolled linear interpolation through (x, y) knots.
inline double pwl(const std::vector<std::pair<double, double>>& knots, double x) {
  if (x < knots.front().first || x > knots.back().first)
    throw std::runtime_error("oracle_pwl: out of range");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (x <= knots[i].first) {
      auto [x0, y0] = knots[i - 1];
      auto [x1, y1] = knots[i];
      return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
  }
  return knots.back().second;
}

/// Exact integer Fibonacci with F_1 = F_2 = 1 (valid through F_92).
inline std::uint64_t fibonacci(int k) {
  if (k < 1 || k > 92) throw std::runtime_error("oracle_fibonacci: k out of range");
  std::uint64_t a = 1, b = 1;
  for (int i = 3; i <= k; ++i) {
    std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return k == 1 ? 1 : b;
}

inline double golden_section() { return (1.0 + std::sqrt(5.0)) / 2.0; }

}  // namespace oracle
