#include <catch2/catch.hpp>

#include <cmath>
#include <memory>
#include <vector>

#include "hirsch/reconstruct.hpp"

#include "oracles.hpp"

using namespace hirsch;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1)));
  return out;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

ReconstructionResult reconstruct(const FunctionSpec& phi, double tol = 1e-10) {
  return reconstruct_f(phi, classify_candidate(phi), tol);
}

}  // namespace

TEST_CASE("catalog shapes invert symbolically") {
  ReconstructionResult rec = reconstruct(parse_expression("8/x"));
  CHECK(rec.method == ReconstructMethod::ClosedForm);
  CHECK(rec.expression_text == "8");
  CHECK(evaluate(rec.f, 3.0) == 8.0);

  ReconstructionResult sq = reconstruct(parse_expression("x^2"));
  CHECK(sq.method == ReconstructMethod::ClosedForm);
  CHECK(sq.expression_text == "x^1.5");
  CHECK(evaluate(sq.f, 4.0) == Approx(8.0));
  CHECK_FALSE(sq.zero_at_origin);

  ReconstructionResult es = reconstruct(make_exp_shift(2.0, 1.0));
  CHECK(es.method == ReconstructMethod::ClosedForm);
  CHECK(evaluate(es.f, 0.0) == 0.0);
  CHECK(evaluate(es.f, 1.0) == Approx(2.0));  // x*(1 + log2(x+1)) at 1
  CHECK(derivative_at(es.f, 0.0) == Approx(1.0));  // f'(0) = b
  CHECK(es.zero_at_origin);

  ReconstructionResult nul = reconstruct(make_null());
  CHECK(evaluate(nul.f, 5.0) == 0.0);
}

TEST_CASE("rejected shapes cannot be inverted") {
  FunctionSpec hump = make_piecewise_linear({{0, 0}, {1, 0}, {2, 1}, {3, 0}, {4, 0}});
  try {
    reconstruct(hump);
    FAIL("expected NotHirschCandidate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHirschCandidate);
  }
}

TEST_CASE("the golden-section power law reconstructs to itself") {
  double alpha = oracle::golden_section();
  ReconstructionResult rec = reconstruct(make_power_law(alpha));
  const auto* cat = std::get_if<CatalogFamily>(&rec.f.body);
  REQUIRE(cat != nullptr);
  // 1 + 1/alpha = alpha, the fixed-point identity
  CHECK(std::abs(cat->c - alpha) <= 1e-12);
}

TEST_CASE("verify_hirsch_pair accepts the worked pairs and rejects the mismatch") {
  auto grid = log_grid(0.01, 100.0, 60);

  PairReport constant_pair =
      verify_hirsch_pair(parse_expression("8"), parse_expression("8/x"), grid, 1e-10);
  CHECK(constant_pair.pass);
  CHECK(constant_pair.max_residual <= 1e-10);

  PairReport power_pair =
      verify_hirsch_pair(parse_expression("x^1.5"), parse_expression("x^2"), grid, 1e-10);
  CHECK(power_pair.pass);

  PairReport mismatch =
      verify_hirsch_pair(parse_expression("x^2"), parse_expression("x^2"), {2.0}, 1e-10);
  CHECK_FALSE(mismatch.pass);
  // direct arithmetic: f(phi(2)) = 16, theta*phi(2) = 8, normalized by 8
  CHECK(mismatch.max_residual == Approx(1.0));
}

TEST_CASE("verify_hirsch_pair records domain violations as failures") {
  FunctionSpec f = parse_expression("x^1.5 on [0, 1]");
  PairReport r = verify_hirsch_pair(f, parse_expression("x^2"), {0.5, 3.0}, 1e-10);
  CHECK_FALSE(r.pass);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].theta == 3.0);  // phi(3) = 9 lies outside D(f)
}

TEST_CASE("round trips recover phi across the catalog families") {
  SolverConfig cfg;
  auto thetas = lin_grid(0.1, 10.0, 100);

  for (const FunctionSpec& phi : {parse_expression("8/x"), parse_expression("x^0.5"),
                                  parse_expression("x^2")}) {
    RoundTripReport rt = round_trip_check(phi, cfg, thetas);
    CHECK(rt.failures.empty());
    CHECK(rt.sup_error <= 1e-6);
  }

  SECTION("the plateau family reproduces its exact zeros") {
    RoundTripReport rt = round_trip_check(make_exp_shift(2.0, 1.0), cfg, thetas);
    CHECK(rt.failures.empty());
    CHECK(rt.sup_error <= 1e-6);
    for (const auto& e : rt.entries) {
      if (e.theta <= 1.0) {
        CHECK(e.h == 0.0);
        CHECK(e.phi_val == 0.0);
      }
    }
  }

  SECTION("null round trips to null") {
    RoundTripReport rt = round_trip_check(make_null(), cfg, thetas);
    CHECK(rt.sup_error == 0.0);
  }
}

TEST_CASE("non-catalog shapes go through the numeric inverse") {
  FunctionSpec phi = parse_expression("x^3 + x");
  ReconstructionResult rec = reconstruct(phi, 1e-11);
  CHECK(rec.method == ReconstructMethod::NumericInverse);
  // phi^{-1}(2) = 1, so f(2) = 2
  CHECK(evaluate(rec.f, 2.0) == Approx(2.0).margin(1e-9));
  CHECK(evaluate(rec.f, 0.0) == Approx(0.0).margin(1e-12));

  PairReport pair = verify_hirsch_pair(rec.f, phi, lin_grid(0.2, 5.0, 40), 1e-7);
  CHECK(pair.pass);

  SolverConfig cfg;
  cfg.grid_points = 512;
  RoundTripReport rt = round_trip_check(phi, cfg, lin_grid(0.5, 4.0, 15), ClassifyConfig{}, 1e-11);
  CHECK(rt.failures.empty());
  CHECK(rt.sup_error <= 1e-6);
}

TEST_CASE("a numeric inverse over a plateau pins f(0) = 0") {
  // piecewise-linear plateau: zero until 1, then rising
  FunctionSpec phi = make_piecewise_linear({{0, 0}, {1, 0}, {2, 3}, {4, 9}});
  ShapeClass cls = classify_candidate(phi);
  REQUIRE(cls.kind == ShapeKind::ZeroPlateauLow);
  ReconstructionResult rec = reconstruct_f(phi, cls, 1e-11);
  CHECK(rec.method == ReconstructMethod::NumericInverse);
  CHECK(rec.zero_at_origin);
  CHECK(evaluate(rec.f, 0.0) == 0.0);
  // phi^{-1}(3) = 2 -> f(3) = 6
  CHECK(evaluate(rec.f, 3.0) == Approx(6.0).margin(1e-8));
}

TEST_CASE("inversion outside the attained range raises InversionRangeGap") {
  FunctionSpec phi = parse_expression("x^2");
  MonotoneInverse inv;
  inv.phi = std::make_shared<const FunctionSpec>(phi);
  inv.bracket = Interval::closed(0.0, 2.0);  // phi attains [0, 4] here
  inv.increasing = true;
  FunctionSpec f;
  f.body = inv;
  f.domain = DomainSet::single(Interval::closed(0.0, 100.0));  // declared too wide
  CHECK(evaluate(f, 4.0) == Approx(8.0).margin(1e-8));
  try {
    evaluate(f, 9.0);
    FAIL("expected InversionRangeGap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InversionRangeGap);
  }
}

TEST_CASE("round_trip_check refuses rejected candidates") {
  FunctionSpec hump = make_piecewise_linear({{0, 0}, {1, 0}, {2, 1}, {3, 0}, {4, 0}});
  CHECK_THROWS_AS(round_trip_check(hump, SolverConfig{}, {1.0, 2.0}), Error);
}
