#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hirsch/errors.hpp"
#include "hirsch/function.hpp"
#include "hirsch/rootfind.hpp"

namespace hirsch {

/// Admissible Hirsch-function shapes: injective everywhere, zero on a
/// prefix [0, y0] then strictly increasing, strictly decreasing then zero
/// on a suffix [x0, +inf), identically zero, or rejected with a concrete
/// witness of the violation.
enum class ShapeKind { Injective, ZeroPlateauLow, ZeroPlateauHigh, Null, Rejected };

inline const char* shape_kind_name(ShapeKind k) {
  switch (k) {
    case ShapeKind::Injective: return "Injective";
    case ShapeKind::ZeroPlateauLow: return "ZeroPlateauLow";
    case ShapeKind::ZeroPlateauHigh: return "ZeroPlateauHigh";
    case ShapeKind::Null: return "Null";
    case ShapeKind::Rejected: return "Rejected";
  }
  return "?";
}

enum class Monotonicity { Increasing, Decreasing, Mixed, NotApplicable };

inline const char* monotonicity_name(Monotonicity m) {
  switch (m) {
    case Monotonicity::Increasing: return "Increasing";
    case Monotonicity::Decreasing: return "Decreasing";
    case Monotonicity::Mixed: return "Mixed";
    case Monotonicity::NotApplicable: return "NotApplicable";
  }
  return "?";
}

/// Concrete evidence for a Rejected verdict. `points` holds (x, phi(x))
/// pairs that reproduce the violation under direct re-evaluation.
struct Witness {
  enum class Kind {
    EqualNonzeroValues,        // phi(u) = phi(v) != 0 for u < v
    NonzeroBetweenZeros,       // zero ... positive ... zero
    ZeroBetweenNonzeros,       // positive ... zero ... positive
    MonotonicityReversal,      // rise then fall (or fall then rise) on {phi != 0}
    DomainGap,                 // window [0, scan_hi] not covered
  };
  Kind kind;
  std::vector<std::pair<double, double>> points;
  std::string description;
};

inline const char* witness_kind_name(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::EqualNonzeroValues: return "EqualNonzeroValues";
    case Witness::Kind::NonzeroBetweenZeros: return "NonzeroBetweenZeros";
    case Witness::Kind::ZeroBetweenNonzeros: return "ZeroBetweenNonzeros";
    case Witness::Kind::MonotonicityReversal: return "MonotonicityReversal";
    case Witness::Kind::DomainGap: return "DomainGap";
  }
  return "?";
}

struct ClassifyConfig {
  int grid_points = 4096;
  double zero_tol = 1e-10;
  double scan_hi = 1e4;

  void validate() const {
    if (grid_points < 64 || !(zero_tol > 0) || !(scan_hi > 0))
      throw Error(ErrorKind::InvalidArgument, "classify config fields must be positive");
  }
};

struct ShapeClass {
  ShapeKind kind = ShapeKind::Rejected;
  std::optional<double> boundary;            // y0 for ZeroPlateauLow, x0 for ZeroPlateauHigh
  std::optional<Interval> injective_interval;
  Monotonicity monotonicity = Monotonicity::NotApplicable;
  std::optional<Witness> witness;
  double window_lo = 0.0;  // certification window; tail behavior beyond
  double window_hi = 0.0;  // window_hi is extrapolated, not certified
};

namespace detail {

struct ShapeSample {
  double x;
  double v;
  bool zero;
};

/// Boundary of the numeric zero set between a zero sample and a nonzero
/// sample, bisected on the indicator phi(x) > zero_tol to width 1e-9.
inline double refine_zero_boundary(const FunctionSpec& phi, double x_zero, double x_nonzero,
                                   double zero_tol) {
  double a = x_zero, b = x_nonzero;
  for (int i = 0; i < 200 && std::abs(b - a) > 1e-9; ++i) {
    double mid = 0.5 * (a + b);
    double v;
    try {
      v = evaluate(phi, mid);
    } catch (const Error&) {
      break;
    }
    if (v <= zero_tol) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return a;
}

/// True when phi looks identically zero between `lo` and `hi`. A strictly
/// monotone run of positive probe values means the "zero set" is merely the
/// function dipping below zero_tol near its vanishing point, not a plateau.
inline bool probes_confirm_plateau(const FunctionSpec& phi, double lo, double hi,
                                   bool increasing) {
  std::vector<double> vals;
  for (int j = 1; j <= 7; ++j) {
    double x = lo + (hi - lo) * static_cast<double>(j) / 8.0;
    try {
      vals.push_back(evaluate(phi, x));
    } catch (const Error&) {
      return true;  // unevaluable probes cannot disprove the plateau
    }
  }
  bool strict = true;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    bool step_ok = increasing ? vals[i] < vals[i + 1] : vals[i] > vals[i + 1];
    if (!step_ok) strict = false;
  }
  bool all_positive = std::all_of(vals.begin(), vals.end(), [](double v) { return v > 0.0; });
  return !(strict && all_positive);
}

}  // namespace detail

/// Decide which of the admissible Hirsch shapes a candidate phi has, by
/// sampling the window [0, min(scan_hi, domain end)]. Domain gaps inside the
/// window reject the candidate; classification beyond the window is
/// extrapolation and is reported through window_hi.
inline ShapeClass classify_candidate(const FunctionSpec& phi, const ClassifyConfig& cfg = {}) {
  cfg.validate();
  ShapeClass out;
  out.window_lo = 0.0;

  if (phi.domain.empty() || phi.domain.intervals.front().lo > 0.0) {
    double where = phi.domain.empty() ? 0.0 : phi.domain.intervals.front().lo / 2.0;
    out.kind = ShapeKind::Rejected;
    out.witness = Witness{Witness::Kind::DomainGap,
                          {{where, 0.0}},
                          "domain does not start at 0"};
    return out;
  }
  const Interval& first = phi.domain.intervals.front();
  double window_hi = std::min(cfg.scan_hi, first.hi);
  out.window_hi = window_hi;
  if (phi.domain.intervals.size() > 1 && phi.domain.intervals[1].lo < cfg.scan_hi) {
    double gap_mid = 0.5 * (first.hi + phi.domain.intervals[1].lo);
    out.kind = ShapeKind::Rejected;
    out.witness = Witness{Witness::Kind::DomainGap,
                          {{gap_mid, 0.0}},
                          "domain has a gap inside the scan window"};
    return out;
  }
  if (!(window_hi > 0.0)) {
    out.kind = ShapeKind::Rejected;
    out.witness =
        Witness{Witness::Kind::DomainGap, {{0.0, 0.0}}, "scan window has zero width"};
    return out;
  }

  // Sample the window. x = 0 may be unevaluable (e.g. C/x); that merely
  // excludes the point, it is not a gap. A contiguous overflow tail
  // truncates the certification window; interior non-finite pockets stay
  // hard errors.
  std::vector<detail::ShapeSample> s;
  bool zero_point_excluded = true;
  if (first.lo_closed) {
    try {
      double v0 = evaluate(phi, 0.0);
      s.push_back({0.0, v0, v0 <= cfg.zero_tol});
      zero_point_excluded = false;
    } catch (const Error&) {
    }
  }
  // The geometric overlay floors at a window-relative scale: sampling many
  // decades below it only manufactures floating-point ties (5 - 2e-30 == 5).
  std::size_t first_nonfinite = std::string::npos;
  for (double x : detail::make_scan_grid(0.0, window_hi, cfg.grid_points, window_hi * 1e-9)) {
    if (!first.contains(x)) continue;  // open right endpoint
    try {
      double v = evaluate(phi, x);
      if (first_nonfinite != std::string::npos)
        throw Error(ErrorKind::NonFinite, "non-finite sample inside the scan window");
      s.push_back({x, v, v <= cfg.zero_tol});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DomainGap) {
        out.kind = ShapeKind::Rejected;
        out.witness = Witness{Witness::Kind::DomainGap, {{x, 0.0}}, e.what()};
        return out;
      }
      if (e.kind() == ErrorKind::NonFinite) {
        if (first_nonfinite != std::string::npos) continue;  // still in the tail
        if (!s.empty() && !s.back().zero) {
          first_nonfinite = s.size();  // begin a candidate overflow tail
          continue;
        }
      }
      throw;
    }
  }
  if (first_nonfinite != std::string::npos && !s.empty()) {
    window_hi = s.back().x;
    out.window_hi = window_hi;
  }
  if (s.empty()) {
    out.kind = ShapeKind::Rejected;
    out.witness = Witness{Witness::Kind::DomainGap, {{0.0, 0.0}}, "no evaluable samples"};
    return out;
  }

  const std::size_t n = s.size();
  std::size_t first_nz = n, last_nz = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!s[i].zero) {
      if (first_nz == n) first_nz = i;
      last_nz = i;
    }
  }

  if (first_nz == n) {
    out.kind = ShapeKind::Null;
    out.monotonicity = Monotonicity::NotApplicable;
    return out;
  }

  // interior zero flanked by nonzero values
  for (std::size_t i = first_nz + 1; i < last_nz; ++i) {
    if (s[i].zero) {
      out.kind = ShapeKind::Rejected;
      out.monotonicity = Monotonicity::Mixed;
      out.witness = Witness{
          Witness::Kind::ZeroBetweenNonzeros,
          {{s[first_nz].x, s[first_nz].v}, {s[i].x, s[i].v}, {s[last_nz].x, s[last_nz].v}},
          "interior zero flanked by nonzero values"};
      return out;
    }
  }

  bool has_prefix = first_nz > 0;
  bool has_suffix = last_nz + 1 < n;

  if (has_prefix && has_suffix) {
    std::size_t peak = first_nz;
    for (std::size_t i = first_nz; i <= last_nz; ++i)
      if (s[i].v > s[peak].v) peak = i;
    out.kind = ShapeKind::Rejected;
    out.monotonicity = Monotonicity::Mixed;
    out.witness = Witness{
        Witness::Kind::NonzeroBetweenZeros,
        {{s[first_nz - 1].x, s[first_nz - 1].v}, {s[peak].x, s[peak].v}, {s[last_nz + 1].x, s[last_nz + 1].v}},
        "nonzero values between two zero stretches"};
    return out;
  }

  // Resolve whether a zero prefix/suffix is a genuine plateau or just the
  // function passing below zero_tol near its zero. Boundaries inside the
  // 1e-9 refinement resolution certify nothing and are treated as the
  // function vanishing at a single point.
  std::optional<double> y0, x0;
  if (has_prefix) {
    double boundary =
        detail::refine_zero_boundary(phi, s[first_nz - 1].x, s[first_nz].x, cfg.zero_tol);
    if (boundary > 1e-9 &&
        detail::probes_confirm_plateau(phi, 0.0, boundary, /*increasing=*/true))
      y0 = boundary;
  }
  if (has_suffix) {
    double boundary =
        detail::refine_zero_boundary(phi, s[last_nz + 1].x, s[last_nz].x, cfg.zero_tol);
    if (boundary < window_hi - 1e-9 &&
        detail::probes_confirm_plateau(phi, boundary, window_hi, /*increasing=*/false))
      x0 = boundary;
  }

  // Strict monotonicity on the numerically nonzero samples.
  int direction = 0;  // +1 increasing, -1 decreasing
  for (std::size_t i = first_nz; i < last_nz; ++i) {
    double a = s[i].v, b = s[i + 1].v;
    if (a == b) {
      out.kind = ShapeKind::Rejected;
      out.monotonicity = Monotonicity::Mixed;
      out.witness = Witness{Witness::Kind::EqualNonzeroValues,
                            {{s[i].x, a}, {s[i + 1].x, b}},
                            "two equal nonzero values"};
      return out;
    }
    int step = b > a ? +1 : -1;
    if (direction == 0) {
      direction = step;
    } else if (step != direction) {
      out.kind = ShapeKind::Rejected;
      out.monotonicity = Monotonicity::Mixed;
      out.witness = Witness{Witness::Kind::MonotonicityReversal,
                            {{s[i - 1].x, s[i - 1].v}, {s[i].x, a}, {s[i + 1].x, b}},
                            "monotonicity reversal on the nonzero set"};
      return out;
    }
  }
  if (direction == 0) direction = +1;  // a single nonzero sample

  if (y0) {
    if (direction < 0) {
      out.kind = ShapeKind::Rejected;
      out.monotonicity = Monotonicity::Mixed;
      out.witness = Witness{Witness::Kind::MonotonicityReversal,
                            {{s[first_nz - 1].x, s[first_nz - 1].v},
                             {s[first_nz].x, s[first_nz].v},
                             {s[last_nz].x, s[last_nz].v}},
                            "zero prefix followed by decreasing values"};
      return out;
    }
    out.kind = ShapeKind::ZeroPlateauLow;
    out.boundary = *y0;
    out.monotonicity = Monotonicity::Increasing;
    out.injective_interval = Interval{*y0, window_hi, false, true};
    return out;
  }
  if (x0) {
    if (direction > 0) {
      out.kind = ShapeKind::Rejected;
      out.monotonicity = Monotonicity::Mixed;
      out.witness = Witness{Witness::Kind::MonotonicityReversal,
                            {{s[first_nz].x, s[first_nz].v},
                             {s[last_nz].x, s[last_nz].v},
                             {s[last_nz + 1].x, s[last_nz + 1].v}},
                            "increasing values followed by a zero suffix"};
      return out;
    }
    out.kind = ShapeKind::ZeroPlateauHigh;
    out.boundary = *x0;
    out.monotonicity = Monotonicity::Decreasing;
    out.injective_interval = Interval{0.0, *x0, !zero_point_excluded, false};
    return out;
  }

  out.kind = ShapeKind::Injective;
  out.monotonicity = direction > 0 ? Monotonicity::Increasing : Monotonicity::Decreasing;
  out.injective_interval = Interval{0.0, window_hi, !zero_point_excluded, true};
  return out;
}

/// The interval carrying the injective part of phi, per its classification.
inline Interval injective_part(const FunctionSpec& phi, const ShapeClass& cls) {
  (void)phi;
  if (cls.kind == ShapeKind::Null || cls.kind == ShapeKind::Rejected)
    throw Error(ErrorKind::NotInvertible,
                std::string("shape ") + shape_kind_name(cls.kind) + " has no injective part");
  return *cls.injective_interval;
}

}  // namespace hirsch
