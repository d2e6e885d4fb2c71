#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hirsch/classify.hpp"
#include "hirsch/errors.hpp"
#include "hirsch/function.hpp"
#include "hirsch/transform.hpp"

namespace hirsch {

enum class ReconstructMethod { ClosedForm, NumericInverse };

inline const char* reconstruct_method_name(ReconstructMethod m) {
  return m == ReconstructMethod::ClosedForm ? "ClosedForm" : "NumericInverse";
}

struct ReconstructionResult {
  FunctionSpec f;
  ReconstructMethod method = ReconstructMethod::ClosedForm;
  Interval injective_interval;
  bool zero_at_origin = false;
  std::string expression_text;  // nonempty for closed forms
};

namespace detail {

// Closed-form candidates recognized in phi: x^c (including plain x),
// C/x, and the exponential-shift plateau family.
struct PowerMatch {
  double c;
};
struct ReciprocalMatch {
  double C;
};
struct ExpShiftMatch {
  double a, b;
};

inline std::optional<PowerMatch> match_power(const FunctionSpec& phi) {
  if (const auto* cat = std::get_if<CatalogFamily>(&phi.body)) {
    if (cat->kind == CatalogFamily::Kind::PowerLaw) return PowerMatch{cat->c};
    return std::nullopt;
  }
  if (const auto* e = std::get_if<ExprPtr>(&phi.body)) {
    const ExprNode& n = **e;
    if (n.op == ExprNode::Op::Variable) return PowerMatch{1.0};
    if (n.op == ExprNode::Op::Pow && n.lhs->op == ExprNode::Op::Variable) {
      auto c = expr::fold_constant(n.rhs);
      if (c && *c > 0.0) return PowerMatch{*c};
    }
  }
  return std::nullopt;
}

inline std::optional<ReciprocalMatch> match_reciprocal(const FunctionSpec& phi) {
  if (const auto* e = std::get_if<ExprPtr>(&phi.body)) {
    const ExprNode& n = **e;
    if (n.op == ExprNode::Op::Div && n.rhs->op == ExprNode::Op::Variable) {
      auto C = expr::fold_constant(n.lhs);
      if (C && *C > 0.0) return ReciprocalMatch{*C};
    }
  }
  return std::nullopt;
}

inline std::optional<ExpShiftMatch> match_exp_shift(const FunctionSpec& phi) {
  if (const auto* cat = std::get_if<CatalogFamily>(&phi.body))
    if (cat->kind == CatalogFamily::Kind::ExpShift) return ExpShiftMatch{cat->a, cat->b};
  return std::nullopt;
}

}  // namespace detail

/// Rebuild f with h_f = phi via f(x) = x * phi^{-1}(x). Catalog shapes
/// invert symbolically; anything else gets a numeric monotone inverse over
/// the certified injective part. `tol` is the t-space bisection tolerance
/// of the numeric inverse.
inline ReconstructionResult reconstruct_f(const FunctionSpec& phi, const ShapeClass& cls,
                                          double tol = 1e-10) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be > 0");
  if (cls.kind == ShapeKind::Rejected)
    throw Error(ErrorKind::NotHirschCandidate,
                "phi is not a Hirsch shape" +
                    (cls.witness ? ": " + cls.witness->description : std::string()));

  ReconstructionResult out;
  if (cls.kind == ShapeKind::Null) {
    out.f = make_null();
    out.method = ReconstructMethod::ClosedForm;
    out.injective_interval = Interval{0.0, 0.0, true, true};
    out.zero_at_origin = true;
    out.expression_text = "0";
    return out;
  }

  out.injective_interval = injective_part(phi, cls);
  out.zero_at_origin = cls.kind != ShapeKind::Injective;

  if (cls.kind == ShapeKind::Injective && cls.monotonicity == Monotonicity::Increasing) {
    if (auto p = detail::match_power(phi)) {
      // phi = x^c  =>  phi^{-1} = x^{1/c}  =>  f = x^{1 + 1/c}
      double expo = 1.0 + 1.0 / p->c;
      out.f = make_power_law(expo);
      out.method = ReconstructMethod::ClosedForm;
      out.expression_text = "x^" + format_double(expo);
      return out;
    }
  }
  if (cls.kind == ShapeKind::Injective && cls.monotonicity == Monotonicity::Decreasing) {
    if (auto r = detail::match_reciprocal(phi)) {
      // phi = C/x is its own inverse  =>  f = x * C/x = C
      out.f = make_constant(r->C);
      out.method = ReconstructMethod::ClosedForm;
      out.expression_text = format_double(r->C);
      return out;
    }
  }
  if (cls.kind == ShapeKind::ZeroPlateauLow) {
    if (auto es = detail::match_exp_shift(phi)) {
      // phi^{-1}(x) = b + log_a(x + 1)  =>  f = x*(b + log_a(x + 1)), f(0) = 0
      using namespace expr;
      ExprPtr tree = mul(variable(), add(constant(es->b),
                                         log_base(es->a, add(variable(), constant(1.0)))));
      std::string text = "x*(" + format_double(es->b) + " + log(" + format_double(es->a) +
                         ", x + 1))";
      out.f = make_expression(tree, DomainSet::nonnegative_reals(), text);
      out.method = ReconstructMethod::ClosedForm;
      out.expression_text = text;
      return out;
    }
  }

  // Numeric inverse over the injective part.
  out.method = ReconstructMethod::NumericInverse;
  MonotoneInverse inv;
  inv.phi = std::make_shared<const FunctionSpec>(phi);
  inv.bracket = out.injective_interval;
  inv.tol = tol;
  inv.increasing = cls.monotonicity == Monotonicity::Increasing;
  inv.zero_at_origin = out.zero_at_origin;

  // Domain of f = closure of phi's range over the injective part, plus 0 in
  // the plateau cases where f(0) = 0 is pinned.
  auto try_eval = [&](double x) -> std::optional<double> {
    try {
      return evaluate(phi, x);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  double edge_lo = inv.bracket.lo;
  double edge_hi = inv.bracket.hi;
  std::optional<double> v_lo = try_eval(edge_lo);
  if (!v_lo) v_lo = try_eval(edge_lo + std::max(1e-9, 1e-9 * std::abs(edge_lo)));
  std::optional<double> v_hi = try_eval(edge_hi);
  if (!v_hi) v_hi = try_eval(edge_hi - std::max(1e-9, 1e-9 * std::abs(edge_hi)));

  Interval range;
  if (inv.increasing) {
    double r_lo = out.zero_at_origin ? 0.0 : v_lo.value_or(0.0);
    double r_hi = v_hi.value_or(kInf);
    range = Interval{std::min(r_lo, r_hi), std::max(r_lo, r_hi), true, true};
  } else {
    double r_lo = out.zero_at_origin ? 0.0 : v_hi.value_or(0.0);
    // A decreasing phi may blow up toward the left edge (C/x); leave the
    // domain open above when the edge value is unavailable.
    if (v_lo) {
      range = Interval{r_lo, std::max(r_lo, *v_lo), true, true};
    } else {
      range = Interval{r_lo, kInf, true, false};
    }
  }
  if (out.zero_at_origin) range.lo = 0.0;
  range.validate();

  FunctionSpec f;
  f.body = std::move(inv);
  f.domain = DomainSet::single(range);
  out.f = std::move(f);
  return out;
}

struct PairReport {
  struct Failure {
    double theta;
    std::string message;
  };
  double max_residual = 0.0;
  bool pass = false;
  std::vector<Failure> failures;
};

/// Check the defining relation f(phi(theta)) = theta * phi(theta) over a
/// theta grid. Residuals are normalized by max(1, theta*phi(theta)).
inline PairReport verify_hirsch_pair(const FunctionSpec& f, const FunctionSpec& phi,
                                     const std::vector<double>& thetas, double tol = 1e-10) {
  if (thetas.empty()) throw Error(ErrorKind::InvalidArgument, "theta grid is empty");
  PairReport report;
  for (double theta : thetas) {
    if (!(theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "thetas must be > 0");
    double y, fy;
    try {
      y = evaluate(phi, theta);
    } catch (const Error& e) {
      report.failures.push_back({theta, std::string("phi(theta): ") + e.what()});
      continue;
    }
    try {
      fy = evaluate(f, y);
    } catch (const Error& e) {
      report.failures.push_back({theta, std::string("f(phi(theta)): ") + e.what()});
      continue;
    }
    double target = theta * y;
    double r = std::abs(fy - target) / std::max(1.0, std::abs(target));
    report.max_residual = std::max(report.max_residual, r);
    if (r > tol)
      report.failures.push_back(
          {theta, "relation residual " + format_double(r) + " exceeds tolerance"});
  }
  report.pass = report.failures.empty() && report.max_residual <= tol;
  return report;
}

struct RoundTripReport {
  struct Entry {
    double theta;
    double h;        // h_f(theta) of the reconstructed f
    double phi_val;  // phi(theta)
    double error;
  };
  struct Failure {
    double theta;
    std::string message;
  };
  ShapeKind shape = ShapeKind::Rejected;
  ReconstructMethod method = ReconstructMethod::ClosedForm;
  double sup_error = 0.0;
  std::vector<Entry> entries;
  std::vector<Failure> failures;
};

/// phi -> f (reconstruction) -> h_f (solver), reporting sup |h_f - phi|
/// over the grid.
inline RoundTripReport round_trip_check(const FunctionSpec& phi, const SolverConfig& cfg,
                                        const std::vector<double>& thetas,
                                        const ClassifyConfig& ccfg = {}, double tol = 1e-10) {
  ShapeClass cls = classify_candidate(phi, ccfg);
  ReconstructionResult recon = reconstruct_f(phi, cls, tol);
  RoundTripReport report;
  report.shape = cls.kind;
  report.method = recon.method;
  for (double theta : thetas) {
    double phi_val;
    try {
      phi_val = evaluate(phi, theta);
    } catch (const Error& e) {
      report.failures.push_back({theta, std::string("phi(theta): ") + e.what()});
      continue;
    }
    try {
      HirschResult r = hirsch_eval(recon.f, theta, cfg);
      double err = std::abs(r.value - phi_val);
      report.entries.push_back({theta, r.value, phi_val, err});
      report.sup_error = std::max(report.sup_error, err);
    } catch (const Error& e) {
      report.failures.push_back({theta, std::string("h_f(theta): ") + e.what()});
    }
  }
  return report;
}

}  // namespace hirsch
