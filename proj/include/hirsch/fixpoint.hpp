#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hirsch/errors.hpp"
#include "hirsch/function.hpp"
#include "hirsch/transform.hpp"

namespace hirsch {

/// Self-referential composition families under the power-law ansatz
/// f(x) = x^c:
///   ForwardCompose(n): phi = f o ... o f (n times)  =>  c^(n+1) = c^n + 1
///   InverseCompose(m): f = phi o ... o phi (m times) =>  c^(m+1) = c + 1
/// Both reduce to the golden-section equation c^2 = c + 1 at depth 1;
/// InverseCompose(2) yields the plastic number.
enum class CompositionKind { ForwardCompose, InverseCompose };

inline const char* composition_kind_name(CompositionKind k) {
  return k == CompositionKind::ForwardCompose ? "ForwardCompose" : "InverseCompose";
}

struct ExponentProblem {
  CompositionKind kind = CompositionKind::ForwardCompose;
  int depth = 1;
  std::string polynomial;  // human-readable root equation
  double root = 0.0;
  double residual = 0.0;   // |root^(k+1) - (root^j + 1)|
};

/// Solve the exponent equation of the chosen family by bisection on (1, 2)
/// followed by Newton polish. The polynomial has exactly one root there:
/// p(1) = -1 and p(2) >= 1 for every depth >= 1.
inline ExponentProblem solve_exponent(CompositionKind kind, int depth, double tol = 1e-14) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be >= 1");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be > 0");

  const bool forward = kind == CompositionKind::ForwardCompose;
  auto p = [&](double c) {
    return forward ? std::pow(c, depth + 1) - std::pow(c, depth) - 1.0
                   : std::pow(c, depth + 1) - c - 1.0;
  };
  auto dp = [&](double c) {
    return forward
               ? (depth + 1) * std::pow(c, depth) - depth * std::pow(c, depth - 1)
               : (depth + 1) * std::pow(c, depth) - 1.0;
  };

  double lo = 1.0, hi = 2.0;
  double plo = p(lo), phi_v = p(hi);
  if (!(plo < 0.0) || !(phi_v > 0.0))
    throw Error(ErrorKind::InvalidArgument, "root equation lost its bracket on (1, 2)");
  for (int i = 0; i < 200 && (hi - lo) > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    double pm = p(mid);
    if (pm == 0.0) {
      lo = hi = mid;
      break;
    }
    if (pm < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double root = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    double step = p(root) / dp(root);
    double next = root - step;
    if (!(next > 1.0 && next < 2.0)) break;
    root = next;
  }

  ExponentProblem out;
  out.kind = kind;
  out.depth = depth;
  out.root = root;
  out.residual = std::abs(p(root));
  out.polynomial = forward ? "c^" + std::to_string(depth + 1) + " = c^" + std::to_string(depth) + " + 1"
                           : "c^" + std::to_string(depth + 1) + " = c + 1";
  return out;
}

/// F_{k+1} / F_k with F_1 = F_2 = 1, computed iteratively in floating point
/// (rescaled to dodge overflow) as a convergence demonstration toward the
/// golden section.
inline double fibonacci_ratio(int k) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "fibonacci_ratio requires k >= 2");
  double prev = 1.0, curr = 1.0;  // F_1, F_2
  for (int i = 3; i <= k + 1; ++i) {
    double next = prev + curr;
    prev = curr;
    curr = next;
    if (curr > 1e300) {  // rescale; only the ratio matters
      prev /= curr;
      curr = 1.0;
    }
  }
  return curr / prev;
}

struct SelfHirschReport {
  struct Entry {
    double theta;
    double h;
    double f_val;  // theta^c
    double error;
  };
  struct Failure {
    double theta;
    std::string message;
  };
  double sup_error = 0.0;
  std::vector<Entry> entries;
  std::vector<Failure> failures;
};

/// How far f = x^c is from being its own Hirsch function: reports
/// sup |h_f(theta) - theta^c|. Vanishes (numerically) exactly at the golden
/// section, where 1/(c-1) = c.
inline SelfHirschReport verify_self_hirsch(double c, const std::vector<double>& thetas,
                                           const SolverConfig& cfg = {}) {
  if (!(c > 1.0)) throw Error(ErrorKind::InvalidArgument, "verify_self_hirsch requires c > 1");
  FunctionSpec f = make_power_law(c);
  SelfHirschReport report;
  for (double theta : thetas) {
    if (!(theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "thetas must be > 0");
    try {
      HirschResult r = hirsch_eval(f, theta, cfg);
      double fv = std::pow(theta, c);
      double err = std::abs(r.value - fv);
      report.entries.push_back({theta, r.value, fv, err});
      report.sup_error = std::max(report.sup_error, err);
    } catch (const Error& e) {
      report.failures.push_back({theta, e.what()});
    }
  }
  return report;
}

}  // namespace hirsch
