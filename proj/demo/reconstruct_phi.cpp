// Classify a candidate phi, reconstruct f with h_f = phi, and confirm the
// round trip phi -> f -> h_f numerically.

#include <cstdio>
#include <vector>

#include "hirsch/hirsch.hpp"

int main() {
  using namespace hirsch;

  FunctionSpec candidates[] = {
      parse_expression("x^2"),
      parse_expression("8/x"),
      make_exp_shift(2.0, 1.0),
      make_piecewise_linear({{0, 0}, {1, 0}, {2, 1}, {3, 0}, {4, 0}}),  // hump: not a Hirsch shape
  };

  std::vector<double> thetas;
  for (int i = 0; i < 40; ++i) thetas.push_back(0.2 + i * 0.2);

  for (const FunctionSpec& phi : candidates) {
    ShapeClass cls = classify_candidate(phi);
    std::printf("shape: %-16s", shape_kind_name(cls.kind));
    if (cls.boundary) std::printf(" boundary=%.6f", *cls.boundary);
    if (cls.witness) std::printf(" witness: %s", cls.witness->description.c_str());
    std::printf("\n");
    if (cls.kind == ShapeKind::Rejected) {
      std::printf("  no f with h_f = phi exists\n\n");
      continue;
    }
    ReconstructionResult rec = reconstruct_f(phi, cls);
    if (rec.method == ReconstructMethod::ClosedForm)
      std::printf("  f(x) = %s\n", rec.expression_text.c_str());
    else
      std::printf("  f = x * phi^-1(x) by numeric inversion\n");
    RoundTripReport rt = round_trip_check(phi, SolverConfig{}, thetas);
    std::printf("  round trip sup |h_f - phi| = %.3e over %zu points\n\n", rt.sup_error,
                rt.entries.size());
  }
  return 0;
}
