#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hirsch/domain.hpp"
#include "hirsch/errors.hpp"
#include "hirsch/expression.hpp"

namespace hirsch {

/// Named parametric families used throughout the worked examples:
/// x^c, the positive constant C, the exponential shift a^(x-b) - 1 glued to
/// a zero plateau on [0, b), and the null function.
struct CatalogFamily {
  enum class Kind { PowerLaw, ConstantC, ExpShift, Null };

  Kind kind = Kind::Null;
  double c = 0.0;  // PowerLaw exponent
  double C = 0.0;  // ConstantC value
  double a = 0.0;  // ExpShift base (> 1)
  double b = 0.0;  // ExpShift plateau end (> 0)

  static CatalogFamily power_law(double c) {
    if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "PowerLaw requires c > 0");
    CatalogFamily f;
    f.kind = Kind::PowerLaw;
    f.c = c;
    return f;
  }
  static CatalogFamily constant_c(double C) {
    if (!(C > 0.0)) throw Error(ErrorKind::InvalidArgument, "ConstantC requires C > 0");
    CatalogFamily f;
    f.kind = Kind::ConstantC;
    f.C = C;
    return f;
  }
  static CatalogFamily exp_shift(double a, double b) {
    if (!(a > 1.0) || !(b > 0.0))
      throw Error(ErrorKind::InvalidArgument, "ExpShift requires a > 1 and b > 0");
    CatalogFamily f;
    f.kind = Kind::ExpShift;
    f.a = a;
    f.b = b;
    return f;
  }
  static CatalogFamily null_function() { return CatalogFamily{}; }

  double eval(double x) const {
    switch (kind) {
      case Kind::PowerLaw: return std::pow(x, c);
      case Kind::ConstantC: return C;
      case Kind::ExpShift: return x < b ? 0.0 : std::pow(a, x - b) - 1.0;
      case Kind::Null: return 0.0;
    }
    return 0.0;
  }
};

/// Piecewise-linear interpolant through strictly ascending knots with
/// nonnegative ordinates. Outside the knot span evaluation is undefined
/// unless `clamp_right` extends the last ordinate to +inf.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> knots;
  bool clamp_right = false;

  void validate() const {
    if (knots.empty()) throw Error(ErrorKind::InvalidArgument, "piecewise linear needs >= 1 knot");
    for (std::size_t i = 0; i < knots.size(); ++i) {
      if (!(knots[i].second >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "knot ordinates must be >= 0");
      if (i > 0 && !(knots[i - 1].first < knots[i].first))
        throw Error(ErrorKind::InvalidArgument, "knot abscissae must be strictly ascending");
    }
  }

  DomainSet span_domain() const {
    Interval iv = Interval::closed(knots.front().first, knots.back().first);
    if (clamp_right) {
      iv.hi = kInf;
      iv.hi_closed = false;
    }
    return DomainSet::single(iv);
  }

  double eval(double x) const {
    if (x >= knots.back().first) {
      if (x == knots.back().first || clamp_right) return knots.back().second;
      throw Error(ErrorKind::DomainGap, "x beyond the last knot");
    }
    if (x < knots.front().first) throw Error(ErrorKind::DomainGap, "x before the first knot");
    auto it = std::upper_bound(knots.begin(), knots.end(), x,
                               [](double v, const auto& k) { return v < k.first; });
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *(it - 1);
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  }

  /// Slope of the segment to the right of x (left of x at the last knot,
  /// 0 in the clamped tail).
  double slope_at(double x) const {
    if (knots.size() < 2) return 0.0;
    if (x >= knots.back().first) {
      if (clamp_right && x > knots.back().first) return 0.0;
      std::size_t n = knots.size();
      return (knots[n - 1].second - knots[n - 2].second) /
             (knots[n - 1].first - knots[n - 2].first);
    }
    std::size_t hi = 1;
    while (knots[hi].first <= x) ++hi;
    return (knots[hi].second - knots[hi - 1].second) / (knots[hi].first - knots[hi - 1].first);
  }
};

struct FunctionSpec;

/// Pieces with pairwise disjoint domains whose union is the declared domain.
struct PiecewiseComposite {
  std::vector<FunctionSpec> pieces;
};

/// f(x) = x * phi^{-1}(x) realized by bisecting the certified-monotone
/// injective part of phi. Produced by the reconstruction operation.
struct MonotoneInverse {
  std::shared_ptr<const FunctionSpec> phi;
  Interval bracket;  // injective part of phi, clipped to the scan window
  double tol = 1e-10;
  bool increasing = true;
  bool zero_at_origin = false;
};

/// A function R+ -> R+ with an explicit (possibly gapped) domain and
/// optional isolated point redefinitions.
struct FunctionSpec {
  using Body = std::variant<ExprPtr, CatalogFamily, PiecewiseLinear, PiecewiseComposite, MonotoneInverse>;

  Body body = CatalogFamily::null_function();
  DomainSet domain = DomainSet::nonnegative_reals();
  std::map<double, double> point_overrides;
  std::string text;  // original source text when parsed, else empty

  bool is_expression() const { return std::holds_alternative<ExprPtr>(body); }
  bool is_catalog() const { return std::holds_alternative<CatalogFamily>(body); }
  bool is_piecewise_linear() const { return std::holds_alternative<PiecewiseLinear>(body); }
  bool is_composite() const { return std::holds_alternative<PiecewiseComposite>(body); }
  bool is_numeric_inverse() const { return std::holds_alternative<MonotoneInverse>(body); }
};

// ---- construction helpers -------------------------------------------------

inline FunctionSpec make_expression(ExprPtr tree, DomainSet domain = DomainSet::nonnegative_reals(),
                                    std::string text = {}) {
  domain.validate();
  FunctionSpec s;
  s.body = std::move(tree);
  s.domain = std::move(domain);
  s.text = std::move(text);
  return s;
}

inline FunctionSpec make_catalog(CatalogFamily fam) {
  FunctionSpec s;
  s.body = fam;
  s.domain = DomainSet::nonnegative_reals();
  return s;
}

inline FunctionSpec make_power_law(double c) { return make_catalog(CatalogFamily::power_law(c)); }
inline FunctionSpec make_constant(double C) { return make_catalog(CatalogFamily::constant_c(C)); }
inline FunctionSpec make_exp_shift(double a, double b) {
  return make_catalog(CatalogFamily::exp_shift(a, b));
}
inline FunctionSpec make_null() { return make_catalog(CatalogFamily::null_function()); }

inline FunctionSpec make_piecewise_linear(std::vector<std::pair<double, double>> knots,
                                          bool clamp_right = false) {
  PiecewiseLinear pwl{std::move(knots), clamp_right};
  pwl.validate();
  FunctionSpec s;
  s.domain = pwl.span_domain();
  s.body = std::move(pwl);
  return s;
}

inline FunctionSpec make_composite(std::vector<FunctionSpec> pieces) {
  if (pieces.empty()) throw Error(ErrorKind::InvalidArgument, "composite needs >= 1 piece");
  // piece domains must be pairwise disjoint; the composite domain is their union
  std::vector<Interval> all;
  for (const auto& p : pieces)
    all.insert(all.end(), p.domain.intervals.begin(), p.domain.intervals.end());
  std::sort(all.begin(), all.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < all.size(); ++i) {
    const Interval& a = all[i - 1];
    const Interval& b = all[i];
    if (!(a.hi < b.lo || (a.hi == b.lo && !(a.hi_closed && b.lo_closed))))
      throw Error(ErrorKind::InvalidArgument, "composite piece domains must be disjoint");
  }
  DomainSet dom;
  for (const auto& p : pieces) dom = domain_union(dom, p.domain);
  dom.validate();
  FunctionSpec s;
  s.body = PiecewiseComposite{std::move(pieces)};
  s.domain = std::move(dom);
  return s;
}

/// Parse expression text (grammar in expression.hpp). The default domain is
/// [0, +inf); an `on ...` clause overrides it.
inline FunctionSpec parse_expression(std::string_view source) {
  ParsedExpression p = parse_expression_text(source);
  DomainSet dom = p.domain.value_or(DomainSet::nonnegative_reals());
  return make_expression(p.tree, std::move(dom), std::string(source));
}

// ---- evaluation -----------------------------------------------------------

namespace detail {
double evaluate_impl(const FunctionSpec& f, double x, bool use_overrides);

inline double eval_body(const FunctionSpec& f, double x, bool use_overrides) {
  return std::visit(
      [&](const auto& body) -> double {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, ExprPtr>) {
          return eval_expr(body, x);
        } else if constexpr (std::is_same_v<T, CatalogFamily>) {
          return body.eval(x);
        } else if constexpr (std::is_same_v<T, PiecewiseLinear>) {
          return body.eval(x);
        } else if constexpr (std::is_same_v<T, PiecewiseComposite>) {
          for (const auto& piece : body.pieces)
            if (piece.domain.contains(x)) return evaluate_impl(piece, x, use_overrides);
          throw Error(ErrorKind::DomainGap, "no composite piece covers x");
        } else {  // MonotoneInverse
          if (x == 0.0 && body.zero_at_origin) return 0.0;
          double lo = body.bracket.lo;
          double hi = body.bracket.hi;
          auto residual = [&](double t) { return evaluate_impl(*body.phi, t, true) - x; };
          // Nudge edges inward until phi is evaluable (open endpoints,
          // C/x-style blowups at 0).
          auto usable = [&](double& t, double toward) -> double {
            double step = std::max(1e-12, 1e-12 * std::abs(t));
            for (int k = 0; k < 60; ++k) {
              try {
                return residual(t);
              } catch (const Error&) {
                t += toward * step;
                step *= 4.0;
              }
            }
            throw Error(ErrorKind::InversionRangeGap, "phi not evaluable over the bracket");
          };
          double rlo = usable(lo, +1.0);
          double rhi = usable(hi, -1.0);
          if (rlo == 0.0) return x * lo;
          if (rhi == 0.0) return x * hi;
          if ((rlo > 0.0) == (rhi > 0.0)) {
            // No bracket: x matches an edge within tolerance (plateau
            // boundary) or lies outside phi's range entirely.
            double edge_tol = 1e-9 * std::max(1.0, std::abs(x));
            if (std::abs(rlo) <= std::abs(rhi) && std::abs(rlo) <= edge_tol) return x * lo;
            if (std::abs(rhi) <= edge_tol) return x * hi;
            throw Error(ErrorKind::InversionRangeGap,
                        "x outside the range of phi over its injective part");
          }
          while (hi - lo > body.tol) {
            double mid = 0.5 * (lo + hi);
            double rm = residual(mid);
            if (rm == 0.0) return x * mid;
            if ((rm > 0.0) == (rlo > 0.0)) {
              lo = mid;
              rlo = rm;
            } else {
              hi = mid;
            }
          }
          return x * 0.5 * (lo + hi);
        }
      },
      f.body);
}

inline double evaluate_impl(const FunctionSpec& f, double x, bool use_overrides) {
  if (use_overrides) {
    auto it = f.point_overrides.find(x);
    if (it != f.point_overrides.end()) return it->second;
  }
  if (!f.domain.contains(x)) throw Error(ErrorKind::DomainGap, "x lies in no domain interval");
  double v = eval_body(f, x, use_overrides);
  if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "function value is not finite");
  if (v < 0.0) throw Error(ErrorKind::NegativeValue, "function value is negative; range must be R+");
  return v;
}
}  // namespace detail

/// f(x). Point overrides are consulted before the domain check.
inline double evaluate(const FunctionSpec& f, double x) {
  return detail::evaluate_impl(f, x, true);
}

/// f(x) ignoring point overrides (used by derivative estimation).
inline double evaluate_raw(const FunctionSpec& f, double x) {
  return detail::evaluate_impl(f, x, false);
}

/// Structural null check; sampling-based detection lives in the solver.
inline bool is_structurally_null(const FunctionSpec& f) {
  if (const auto* cat = std::get_if<CatalogFamily>(&f.body))
    return cat->kind == CatalogFamily::Kind::Null;
  if (const auto* e = std::get_if<ExprPtr>(&f.body)) {
    auto c = expr::fold_constant(*e);
    return c && *c == 0.0;
  }
  return false;
}

// ---- derivative -----------------------------------------------------------

namespace detail {

/// One-sided second-order finite difference with Richardson cross-check.
/// Tries the right side first, mirrors to the left when the right side
/// leaves the domain.
inline double finite_difference(const FunctionSpec& f, double x) {
  double h = std::max(1e-6, 1e-6 * std::abs(x));
  auto attempt = [&](double sign) -> std::optional<double> {
    auto value = [&](double step) -> std::optional<double> {
      try {
        return evaluate_raw(f, x + sign * step);
      } catch (const Error&) {
        return std::nullopt;
      }
    };
    auto f0 = value(0.0), f1 = value(h / 2), f2 = value(h), f3 = value(2 * h);
    if (!f0 || !f1 || !f2 || !f3) return std::nullopt;
    double d_h = sign * (-3.0 * *f0 + 4.0 * *f2 - *f3) / (2.0 * h);
    double d_h2 = sign * (-3.0 * *f0 + 4.0 * *f1 - *f2) / h;
    double denom = std::max({std::abs(d_h), std::abs(d_h2), 1e-12});
    if (std::abs(d_h - d_h2) > 1e-3 * denom && std::abs(d_h - d_h2) > 1e-12)
      throw Error(ErrorKind::NotDifferentiable,
                  "finite-difference estimates at h and h/2 disagree");
    return d_h2;
  };
  if (auto right = attempt(+1.0)) return *right;
  if (auto left = attempt(-1.0)) return *left;
  throw Error(ErrorKind::NotDifferentiable, "no one-sided neighborhood is evaluable");
}

}  // namespace detail

/// f'(x): symbolic when the body has a closed form, otherwise a one-sided
/// second-order finite difference. Point overrides do not participate.
inline double derivative_at(const FunctionSpec& f, double x) {
  if (!f.domain.contains(x)) throw Error(ErrorKind::DomainGap, "x lies in no domain interval");
  if (const auto* e = std::get_if<ExprPtr>(&f.body)) {
    try {
      ExprPtr d = differentiate(*e);
      return eval_expr(d, x);
    } catch (const Error&) {
      return detail::finite_difference(f, x);
    }
  }
  if (const auto* cat = std::get_if<CatalogFamily>(&f.body)) {
    switch (cat->kind) {
      case CatalogFamily::Kind::ConstantC:
      case CatalogFamily::Kind::Null:
        return 0.0;
      case CatalogFamily::Kind::PowerLaw:
        if (x > 0.0) return cat->c * std::pow(x, cat->c - 1.0);
        if (cat->c > 1.0) return 0.0;
        if (cat->c == 1.0) return 1.0;
        throw Error(ErrorKind::NotDifferentiable, "x^c with c < 1 has no finite slope at 0");
      case CatalogFamily::Kind::ExpShift:
        return x < cat->b ? 0.0 : std::log(cat->a) * std::pow(cat->a, x - cat->b);
    }
  }
  if (const auto* pwl = std::get_if<PiecewiseLinear>(&f.body)) return pwl->slope_at(x);
  if (const auto* comp = std::get_if<PiecewiseComposite>(&f.body)) {
    for (const auto& piece : comp->pieces)
      if (piece.domain.contains(x)) return derivative_at(piece, x);
    throw Error(ErrorKind::DomainGap, "no composite piece covers x");
  }
  return detail::finite_difference(f, x);
}

}  // namespace hirsch
