#include <catch2/catch.hpp>

#include <cmath>
#include <vector>

#include "hirsch/fixpoint.hpp"
#include "hirsch/reconstruct.hpp"

#include "oracles.hpp"

using namespace hirsch;

TEST_CASE("depth 1 yields the golden section in both directions") {
  double alpha = oracle::golden_section();
  ExponentProblem fwd = solve_exponent(CompositionKind::ForwardCompose, 1);
  ExponentProblem inv = solve_exponent(CompositionKind::InverseCompose, 1);
  CHECK(std::abs(fwd.root - alpha) <= 1e-12);
  CHECK(std::abs(inv.root - alpha) <= 1e-12);
  CHECK(fwd.root == Approx(inv.root).margin(1e-14));
  CHECK(fwd.polynomial == "c^2 = c^1 + 1");
  CHECK(inv.polynomial == "c^2 = c + 1");
  CHECK(fwd.residual <= 1e-12);
}

TEST_CASE("inverse depth 2 yields the plastic number") {
  // oracle: bisect c^3 - c - 1 on (1, 2)
  double plastic = oracle::bisect([](double c) { return c * c * c - c - 1.0; }, 1.0, 2.0);
  CHECK(plastic == Approx(1.3247179572447460).margin(1e-12));  // frozen from the oracle

  ExponentProblem p = solve_exponent(CompositionKind::InverseCompose, 2);
  CHECK(std::abs(p.root - plastic) <= 1e-12);
  CHECK(std::abs(p.root - 1.3247178) <= 5e-7);  // printed reference value
  CHECK(std::abs(std::pow(p.root, 3) - p.root - 1.0) <= 1e-12);
  CHECK(p.polynomial == "c^3 = c + 1");
}

TEST_CASE("forward depth 2 solves c^3 = c^2 + 1") {
  double expect = oracle::bisect([](double c) { return c * c * c - c * c - 1.0; }, 1.0, 2.0);
  CHECK(expect == Approx(1.4655712318767682).margin(1e-12));  // frozen from the oracle

  ExponentProblem p = solve_exponent(CompositionKind::ForwardCompose, 2);
  CHECK(std::abs(p.root - expect) <= 1e-12);
  CHECK(p.polynomial == "c^3 = c^2 + 1");
  CHECK(p.residual <= 1e-12);
}

TEST_CASE("roots stay in (1, 2), keep tiny residuals, and decrease with depth") {
  for (CompositionKind kind : {CompositionKind::ForwardCompose, CompositionKind::InverseCompose}) {
    double prev = 2.0;
    for (int depth = 1; depth <= 10; ++depth) {
      ExponentProblem p = solve_exponent(kind, depth);
      CHECK(p.root > 1.0);
      CHECK(p.root < 2.0);
      CHECK(p.residual <= 1e-12);
      CHECK(p.root < prev);
      prev = p.root;
    }
  }
  CHECK_THROWS_AS(solve_exponent(CompositionKind::ForwardCompose, 0), Error);
  CHECK_THROWS_AS(solve_exponent(CompositionKind::ForwardCompose, 1, 0.0), Error);
}

TEST_CASE("fibonacci ratios converge to the golden section") {
  CHECK(fibonacci_ratio(2) == 2.0);  // F_3 / F_2 = 2/1
  double expect_10 = static_cast<double>(oracle::fibonacci(11)) / oracle::fibonacci(10);
  CHECK(expect_10 == Approx(89.0 / 55.0).margin(0));
  CHECK(fibonacci_ratio(10) == Approx(expect_10).margin(1e-15));
  CHECK(std::abs(fibonacci_ratio(40) - oracle::golden_section()) <= 1e-12);
  // rescaling guards very deep iterates against overflow
  CHECK(std::abs(fibonacci_ratio(5000) - oracle::golden_section()) <= 1e-12);
  CHECK_THROWS_AS(fibonacci_ratio(1), Error);
}

TEST_CASE("x^alpha is its own Hirsch function only at the golden section") {
  std::vector<double> thetas{0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  SelfHirschReport at_alpha = verify_self_hirsch(oracle::golden_section(), thetas);
  CHECK(at_alpha.failures.empty());
  CHECK(at_alpha.sup_error <= 1e-7);

  // at c = 1.5 the match fails measurably: h(4) = 4^2 = 16 but f(4) = 8
  SelfHirschReport off = verify_self_hirsch(1.5, {4.0});
  REQUIRE(off.entries.size() == 1);
  CHECK(off.entries[0].h == Approx(16.0).margin(1e-8));
  CHECK(off.entries[0].f_val == Approx(8.0));
  CHECK(off.sup_error == Approx(8.0).margin(1e-7));

  // theta = 1 is a single-point coincidence for every exponent
  SelfHirschReport c2 = verify_self_hirsch(2.0, {1.0});
  CHECK(c2.entries[0].error <= 1e-9);

  CHECK_THROWS_AS(verify_self_hirsch(1.0, thetas), Error);
}

TEST_CASE("the exponent fixed point agrees with the reconstruction route") {
  // phi = x^alpha round-trips to itself: reconstruct gives f = x^alpha back,
  // and h_f = phi numerically
  double alpha = oracle::golden_section();
  FunctionSpec phi = make_power_law(alpha);
  std::vector<double> thetas;
  for (int i = 0; i < 20; ++i) thetas.push_back(0.5 + i * (2.0 - 0.5) / 19.0);
  RoundTripReport rt = round_trip_check(phi, SolverConfig{}, thetas);
  CHECK(rt.failures.empty());
  CHECK(rt.sup_error <= 1e-6);
}
