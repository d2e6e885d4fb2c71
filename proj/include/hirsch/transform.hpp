#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hirsch/errors.hpp"
#include "hirsch/function.hpp"
#include "hirsch/rootfind.hpp"

namespace hirsch {

/// Which convention of the defining equation f(x) = theta*x produced the
/// value. The tags mirror the special cases of the definition: a unique
/// positive intersection (with or without an excluded extra solution at 0),
/// x = 0 accepted because theta does not exceed the initial slope, x = 0 by
/// exhaustion, and the null function.
enum class CaseTag { UniquePositive, ZeroExcluded, ZeroBoundary, AllZero, NullFunction };

inline const char* case_tag_name(CaseTag t) {
  switch (t) {
    case CaseTag::UniquePositive: return "UniquePositive";
    case CaseTag::ZeroExcluded: return "ZeroExcluded";
    case CaseTag::ZeroBoundary: return "ZeroBoundary";
    case CaseTag::AllZero: return "AllZero";
    case CaseTag::NullFunction: return "NullFunction";
  }
  return "?";
}

struct SolverConfig {
  double search_hi = 1e6;   // initial bracketing ceiling
  int grid_points = 4096;   // sign-scan resolution per domain interval
  double tol_x = 1e-12;     // bisection half-width stop
  double tol_residual = 1e-9;
  int max_expand = 40;      // ceiling doublings

  void validate() const {
    if (!(search_hi > 0) || !(tol_x > 0) || !(tol_residual > 0) || max_expand < 0)
      throw Error(ErrorKind::InvalidArgument, "solver config fields must be positive");
    if (grid_points < 64)
      throw Error(ErrorKind::InvalidArgument, "grid_points must be >= 64");
  }
};

struct HirschResult {
  double theta = 0.0;
  double value = 0.0;
  CaseTag case_tag = CaseTag::UniquePositive;
  double residual = 0.0;    // |f(value) - theta*value| when value > 0, else 0
  int roots_found = 0;      // distinct solutions examined
  bool derivative_warning = false;  // theta0 could not be estimated
};

/// psi_f(x) = f(x)/x.
inline double psi(const FunctionSpec& f, double x) {
  if (x == 0.0) throw Error(ErrorKind::ZeroArgument, "psi is undefined at x = 0");
  return evaluate(f, x) / x;
}

namespace detail {

/// True when every evaluable probe of f is exactly zero (and at least one
/// probe succeeded). Detection is grid-limited like everything else here.
inline bool probed_null(const FunctionSpec& f, double window_hi) {
  if (is_structurally_null(f)) return true;
  bool any = false;
  auto probe = [&](double x) -> bool {  // false: definitely not null
    try {
      double v = evaluate(f, x);
      any = true;
      return v == 0.0;
    } catch (const Error&) {
      return true;  // unevaluable point says nothing
    }
  };
  if (f.domain.contains(0.0) && !probe(0.0)) return false;
  for (const Interval& iv : f.domain.intervals) {
    double lo = iv.lo;
    double hi = std::min(iv.hi, window_hi);
    if (!(hi >= lo)) continue;
    for (double x : make_scan_grid(lo, hi, 64))
      if (!probe(x)) return false;
  }
  return any;
}

struct RootCandidate {
  double x;
  double g;  // residual f(x) - theta*x at the root estimate
};

/// The intervals over which f is continuous wherever it is finite: composite
/// bodies contribute one stretch per piece, everything else is continuous on
/// its own domain intervals. Scanning piece by piece keeps a jump at a piece
/// boundary from masquerading as a sign-change bracket.
inline void collect_scan_intervals(const FunctionSpec& f, std::vector<Interval>& out) {
  if (const auto* comp = std::get_if<PiecewiseComposite>(&f.body)) {
    for (const auto& piece : comp->pieces) collect_scan_intervals(piece, out);
    return;
  }
  for (const Interval& iv : f.domain.intervals) out.push_back(iv);
}

/// Scan one clipped piece interval for roots of g(x) = f(x) - theta*x:
/// exact grid zeros, sign-change brackets refined by bisection, and
/// sign-preserving tangencies refined by golden-section search. Grid points
/// excluded by open endpoints are dropped so a boundary point never samples
/// the neighboring piece.
inline void scan_interval(const FunctionSpec& f, double theta, const Interval& piece, double lo,
                          double hi, const SolverConfig& cfg, std::vector<RootCandidate>& roots,
                          std::optional<double>& tail_sign_value) {
  auto g = [&](double x) { return evaluate(f, x) - theta * x; };

  struct Sample {
    double x;
    double g;
  };
  std::vector<Sample> samples;
  for (double x : make_scan_grid(lo, hi, cfg.grid_points)) {
    if (!piece.contains(x)) continue;
    try {
      samples.push_back({x, g(x)});
    } catch (const Error&) {
      // unevaluable point: breaks bracket adjacency
      samples.push_back({x, std::nan("")});
    }
  }
  // compact invalid points but never bridge across them
  std::vector<std::vector<Sample>> segments(1);
  for (const Sample& s : samples) {
    if (std::isnan(s.g)) {
      if (!segments.back().empty()) segments.emplace_back();
    } else {
      segments.back().push_back(s);
    }
  }
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    if (!std::isnan(it->g)) {
      tail_sign_value = it->g;
      break;
    }
  }

  int refinements = 0;
  for (const auto& seg : segments) {
    // Exact-zero runs. A run flanked by nonzero samples is one contact
    // (crossing or graze). A run covering the whole segment means every
    // point solves the equation: record two roots to trip the multiplicity
    // check. A run starting at the geometric floor is cancellation noise
    // from f(x) ~ theta*x as x -> 0 (the x = 0 conventions own that case),
    // not a positive root.
    for (std::size_t i = 0; i < seg.size(); ++i) {
      if (seg[i].g != 0.0) continue;
      std::size_t j = i;
      while (j + 1 < seg.size() && seg[j + 1].g == 0.0) ++j;
      bool has_prev = i > 0;
      bool has_next = j + 1 < seg.size();
      if (!has_prev && !has_next) {
        roots.push_back({seg[i].x, 0.0});
        if (j > i) roots.push_back({seg[j].x, 0.0});
      } else if (!has_prev) {
        bool at_floor = lo <= 0.0 && seg.front().x <= 4.0 * kScanFloor;
        if (!at_floor) roots.push_back({seg[j].x, 0.0});
      } else {
        roots.push_back({seg[(i + j) / 2].x, 0.0});
      }
      i = j;
    }
    // sign changes
    for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
      double ga = seg[i].g, gb = seg[i + 1].g;
      if (ga == 0.0 || gb == 0.0) continue;
      if ((ga > 0.0) == (gb > 0.0)) continue;
      try {
        double r = bisect(g, seg[i].x, seg[i + 1].x, ga, gb, cfg.tol_x);
        roots.push_back({r, g(r)});
      } catch (const Error&) {
        // refinement hit an unevaluable pocket; drop the bracket
      }
    }
    // tangencies: strict local minima of |g| with no sign change around them
    for (std::size_t i = 1; i + 1 < seg.size() && refinements < 64; ++i) {
      double a = seg[i - 1].g, m = seg[i].g, b = seg[i + 1].g;
      if (a == 0.0 || m == 0.0 || b == 0.0) continue;
      if (!((a > 0.0) == (m > 0.0) && (m > 0.0) == (b > 0.0))) continue;
      if (!(std::abs(m) < std::abs(a) && std::abs(m) <= std::abs(b))) continue;
      ++refinements;
      try {
        auto [xm, gm] = golden_min([&](double x) { return std::abs(g(x)); }, seg[i - 1].x,
                                   seg[i + 1].x, cfg.tol_x);
        if (gm <= cfg.tol_residual) roots.push_back({xm, gm});
      } catch (const Error&) {
      }
    }
  }
}

inline std::vector<RootCandidate> merge_roots(std::vector<RootCandidate> roots, double tol_x) {
  std::sort(roots.begin(), roots.end(),
            [](const RootCandidate& a, const RootCandidate& b) { return a.x < b.x; });
  std::vector<RootCandidate> merged;
  for (const auto& r : roots) {
    if (!merged.empty() && r.x - merged.back().x <= 10.0 * tol_x) {
      if (std::abs(r.g) < std::abs(merged.back().g)) merged.back() = r;
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

}  // namespace detail

/// Solve f(x) = theta*x for the Hirsch value h_f(theta).
///
/// Algorithm: sign-scan g(x) = f(x) - theta*x over a geometric-plus-uniform
/// grid on each domain interval up to the search ceiling, doubling the
/// ceiling while g stays positive there; refine brackets by bisection; merge
/// near-duplicates; then apply the zero conventions of the defining
/// equation (see CaseTag).
inline HirschResult hirsch_eval(const FunctionSpec& f, double theta,
                                const SolverConfig& cfg = {}) {
  cfg.validate();
  if (!(theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "theta must be > 0");
  if (f.domain.empty()) throw Error(ErrorKind::InvalidArgument, "function has an empty domain");

  if (detail::probed_null(f, cfg.search_hi)) {
    return {theta, 0.0, CaseTag::NullFunction, 0.0, 1, false};
  }

  std::optional<double> f_at_zero;
  if (f.domain.contains(0.0)) {
    try {
      f_at_zero = evaluate(f, 0.0);
    } catch (const Error&) {
    }
  }

  const bool unbounded = !std::isfinite(f.domain.sup());
  double ceiling = cfg.search_hi;
  std::vector<detail::RootCandidate> roots;
  std::optional<double> tail_g;

  std::vector<Interval> scan_intervals;
  detail::collect_scan_intervals(f, scan_intervals);
  std::sort(scan_intervals.begin(), scan_intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  auto scan_all = [&](double scan_lo, double scan_hi) {
    tail_g.reset();
    for (const Interval& iv : scan_intervals) {
      double lo = std::max(iv.lo, scan_lo);
      double hi = std::min(iv.hi, scan_hi);
      if (!(hi > lo) && !(hi == lo && lo > 0.0)) continue;
      detail::scan_interval(f, theta, iv, lo, hi, cfg, roots, tail_g);
    }
  };

  scan_all(0.0, ceiling);
  bool exhausted_positive = false;
  if (roots.empty() && unbounded) {
    int expansions = 0;
    while (roots.empty() && expansions < cfg.max_expand && tail_g && *tail_g > 0.0) {
      double next = ceiling * 2.0;
      scan_all(ceiling, next);
      ceiling = next;
      ++expansions;
    }
    exhausted_positive = roots.empty() && tail_g && *tail_g > 0.0;
  }

  roots = detail::merge_roots(std::move(roots), cfg.tol_x);

  if (roots.size() >= 2) {
    throw Error(ErrorKind::MultipleIntersections,
                "f(x) = theta*x has " + std::to_string(roots.size()) +
                    " admissible solutions (first two near x = " + format_double(roots[0].x) +
                    " and x = " + format_double(roots[1].x) + ")");
  }

  const bool zero_solution = f_at_zero.has_value() && *f_at_zero == 0.0;

  if (roots.size() == 1) {
    // A positive root wins: the extra solution x = 0 (when f(0) = 0) is
    // excluded because it is not unique.
    const auto& r = roots.front();
    HirschResult out{theta, r.x, CaseTag::UniquePositive, std::abs(r.g), 1, false};
    if (zero_solution) {
      out.case_tag = CaseTag::ZeroExcluded;
      out.roots_found = 2;
    }
    return out;
  }

  // no positive root: the x = 0 conventions decide
  if (zero_solution) {
    std::optional<double> theta0;
    bool derivative_warning = false;
    try {
      theta0 = std::max(0.0, derivative_at(f, 0.0));
    } catch (const Error&) {
      derivative_warning = true;
    }
    if (theta0 && *theta0 > 0.0 && theta <= *theta0)
      return {theta, 0.0, CaseTag::ZeroBoundary, 0.0, 1, derivative_warning};
    return {theta, 0.0, CaseTag::AllZero, 0.0, 1, derivative_warning};
  }
  if (exhausted_positive)
    throw Error(ErrorKind::BracketingExhausted,
                "no sign change after " + std::to_string(cfg.max_expand) +
                    " ceiling doublings; asymptotics inconclusive");
  throw Error(ErrorKind::NoSolution, "f(x) - theta*x keeps one sign over the domain");
}

/// h_f at theta = 1: the classical h-index of the continuous curve.
inline HirschResult h_index(const FunctionSpec& f, const SolverConfig& cfg = {}) {
  return hirsch_eval(f, 1.0, cfg);
}

struct CurvePoint {
  double theta = 0.0;
  std::optional<HirschResult> result;
  std::optional<std::pair<ErrorKind, std::string>> error;
};

/// Elementwise hirsch_eval over an ascending theta grid. Per-theta failures
/// are recorded in place instead of aborting the sweep.
inline std::vector<CurvePoint> hirsch_curve(const FunctionSpec& f,
                                            const std::vector<double>& thetas,
                                            const SolverConfig& cfg = {}) {
  if (thetas.empty()) throw Error(ErrorKind::InvalidArgument, "theta grid is empty");
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (!(thetas[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "thetas must be > 0");
    if (i > 0 && !(thetas[i - 1] < thetas[i]))
      throw Error(ErrorKind::InvalidArgument, "thetas must be strictly ascending");
  }
  std::vector<CurvePoint> out;
  out.reserve(thetas.size());
  for (double theta : thetas) {
    CurvePoint p;
    p.theta = theta;
    try {
      p.result = hirsch_eval(f, theta, cfg);
    } catch (const Error& e) {
      p.error = {e.kind(), e.what()};
    }
    out.push_back(std::move(p));
  }
  return out;
}

struct PsiInverseReport {
  struct Failure {
    double theta;
    std::string message;
  };
  double max_abs_error = 0.0;
  std::vector<Failure> failures;
  bool pass(double tol) const { return failures.empty() && max_abs_error <= tol; }
};

/// Checks the inverse identity psi_f(h_f(theta)) = theta wherever
/// h_f(theta) > 0.
inline PsiInverseReport check_psi_inverse(const FunctionSpec& f, const std::vector<double>& thetas,
                                          const SolverConfig& cfg = {}) {
  PsiInverseReport report;
  for (double theta : thetas) {
    if (!(theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "thetas must be > 0");
    try {
      HirschResult r = hirsch_eval(f, theta, cfg);
      if (r.value > 0.0) {
        double err = std::abs(psi(f, r.value) - theta);
        report.max_abs_error = std::max(report.max_abs_error, err);
        if (err > cfg.tol_residual)
          report.failures.push_back(
              {theta, "|psi(h(theta)) - theta| = " + format_double(err) + " exceeds tolerance"});
      }
    } catch (const Error& e) {
      report.failures.push_back({theta, e.what()});
    }
  }
  return report;
}

}  // namespace hirsch
