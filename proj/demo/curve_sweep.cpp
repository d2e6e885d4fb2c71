// Sweep h_f over a theta grid for a few closed-form curves and print a
// small table next to the known analytic values.

#include <cstdio>
#include <cmath>

#include "hirsch/hirsch.hpp"

int main() {
  using namespace hirsch;

  struct Row {
    const char* label;
    FunctionSpec f;
    double (*analytic)(double);
  };
  Row rows[] = {
      {"f(x) = x^2   (h = theta)", parse_expression("x^2"), [](double t) { return t; }},
      {"f(x) = x^3   (h = theta^0.5)", parse_expression("x^3"), [](double t) { return std::sqrt(t); }},
      {"f(x) = 5     (h = 5/theta)", parse_expression("5"), [](double t) { return 5.0 / t; }},
  };

  for (const Row& row : rows) {
    std::printf("%s\n", row.label);
    std::printf("  %8s  %14s  %14s  %10s\n", "theta", "h (solved)", "h (analytic)", "error");
    for (double theta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      HirschResult r = hirsch_eval(row.f, theta);
      double exact = row.analytic(theta);
      std::printf("  %8.3f  %14.10f  %14.10f  %10.2e\n", theta, r.value, exact,
                  std::abs(r.value - exact));
    }
    std::printf("\n");
  }

  auto golden = solve_exponent(CompositionKind::ForwardCompose, 1);
  auto plastic = solve_exponent(CompositionKind::InverseCompose, 2);
  std::printf("golden section  = %.12f  (%s)\n", golden.root, golden.polynomial.c_str());
  std::printf("plastic number  = %.12f  (%s)\n", plastic.root, plastic.polynomial.c_str());
  return 0;
}
