// Command-line front end: evaluate Hirsch functions, sweep curves, classify
// candidate shapes, reconstruct f from phi, solve the composition exponent
// equations, and compute generalized h-indices from citation data.
//
// Output is an OutputRecord (JSON by default, CSV with --output csv):
//   {"schema_version": "1", "command": ..., "inputs": ..., "results": [...],
//    "warnings": [...]}

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hirsch/hirsch.hpp"

namespace {

using nlohmann::json;
using namespace hirsch;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::MultipleIntersections:
      return 2;
    case ErrorKind::NoSolution:
    case ErrorKind::BracketingExhausted:
    case ErrorKind::NotHirschCandidate:
    case ErrorKind::NotInvertible:
    case ErrorKind::InversionRangeGap:
      return 3;
    default:
      return 1;
  }
}

struct OutputRecord {
  std::string command;
  json inputs = json::object();
  std::vector<json> results;
  std::vector<std::string> warnings;
  std::vector<std::string> csv_columns;
};

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
    return buf;
  }
  return v.dump();
}

void emit(const OutputRecord& rec, bool csv) {
  if (!csv) {
    json out{{"schema_version", "1"},
             {"command", rec.command},
             {"inputs", rec.inputs},
             {"results", rec.results},
             {"warnings", rec.warnings}};
    std::cout << out.dump(2) << "\n";
    return;
  }
  for (const auto& w : rec.warnings) std::cerr << "warning: " << w << "\n";
  for (std::size_t i = 0; i < rec.csv_columns.size(); ++i)
    std::cout << (i ? "," : "") << rec.csv_columns[i];
  std::cout << "\n";
  for (const auto& row : rec.results) {
    for (std::size_t i = 0; i < rec.csv_columns.size(); ++i) {
      const std::string& col = rec.csv_columns[i];
      std::cout << (i ? "," : "") << (row.contains(col) ? csv_cell(row.at(col)) : "");
    }
    std::cout << "\n";
  }
}

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// --function accepts an expression, a catalog form
/// (null | power(c) | const(C) | expshift(a, b)), or @file.json.
FunctionSpec parse_function_arg(const std::string& text) {
  if (!text.empty() && text[0] == '@') {
    json j;
    try {
      j = json::parse(read_all(text.substr(1)));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::ParseError, std::string("JSON: ") + e.what());
    }
    return spec_from_json(j);
  }
  std::string lowered;
  for (char c : text)
    if (c != ' ' && c != '\t') lowered.push_back(static_cast<char>(std::tolower(c)));
  if (lowered == "null") return make_null();
  auto catalog = [&](const std::string& name, int arity) -> std::optional<std::vector<double>> {
    if (lowered.rfind(name + "(", 0) != 0 || lowered.back() != ')') return std::nullopt;
    std::string args = lowered.substr(name.size() + 1, lowered.size() - name.size() - 2);
    std::vector<double> vals;
    std::stringstream ss(args);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      try {
        vals.push_back(std::stod(piece));
      } catch (...) {
        throw Error(ErrorKind::SyntaxError, "bad argument in " + text);
      }
    }
    if (static_cast<int>(vals.size()) != arity)
      throw Error(ErrorKind::SyntaxError, name + " takes " + std::to_string(arity) + " argument(s)");
    return vals;
  };
  if (auto v = catalog("expshift", 2)) return make_exp_shift((*v)[0], (*v)[1]);
  if (auto v = catalog("power", 1)) return make_power_law((*v)[0]);
  if (auto v = catalog("const", 1)) return make_constant((*v)[0]);
  return parse_expression(text);
}

std::vector<double> parse_theta_grid(const std::string& text, const std::string& spacing) {
  double lo = 0, hi = 0;
  int n = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3)
    throw Error(ErrorKind::InvalidArgument, "--theta-grid expects lo:hi:n");
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "--theta-grid needs n >= 2");
  if (!(lo > 0) || !(hi > lo))
    throw Error(ErrorKind::InvalidArgument, "--theta-grid needs 0 < lo < hi");
  std::vector<double> out;
  out.reserve(n);
  if (spacing == "log") {
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) out.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
  } else {
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

double default_tol(double fallback) {
  if (const char* env = std::getenv("HIRSCH_DEFAULT_TOL")) {
    try {
      double v = std::stod(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return fallback;
}

json result_row(const HirschResult& r) {
  return {{"theta", r.theta},
          {"value", r.value},
          {"case_tag", case_tag_name(r.case_tag)},
          {"residual", r.residual},
          {"roots_found", r.roots_found}};
}

json witness_to_json(const Witness& w) {
  json points = json::array();
  for (const auto& [x, v] : w.points) points.push_back({x, v});
  return {{"kind", witness_kind_name(w.kind)}, {"points", points}, {"description", w.description}};
}

json interval_to_json(const Interval& iv) {
  return {iv.lo, std::isfinite(iv.hi) ? json(iv.hi) : json(nullptr), iv.lo_closed, iv.hi_closed};
}

// ---- subcommand state -------------------------------------------------

struct CommonOpts {
  std::string output = "json";
  bool csv() const { return output == "csv"; }
};

struct SolverOpts {
  double tol = default_tol(1e-9);
  double search_hi = 1e6;
  int grid = 4096;

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.tol_residual = tol;
    cfg.search_hi = search_hi;
    cfg.grid_points = grid;
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--output", c.output, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void add_solver(CLI::App* cmd, SolverOpts& s) {
  cmd->add_option("--tol", s.tol, "Solver residual tolerance")->capture_default_str();
  cmd->add_option("--search-hi", s.search_hi, "Initial bracketing ceiling")->capture_default_str();
  cmd->add_option("--grid", s.grid, "Sign-scan grid points per interval")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hirsch transform toolkit: h_f(theta) evaluation, shape classification,\n"
               "reconstruction f(x) = x*phi^-1(x), composition exponents, and generalized\n"
               "h-indices over citation data."};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Solve f(x) = theta*x for h_f(theta)");
  std::string eval_fn;
  double eval_theta = 1.0;
  CommonOpts eval_common;
  SolverOpts eval_solver;
  eval_cmd->add_option("--function", eval_fn, "f as expression, catalog form, or @file.json")
      ->required();
  eval_cmd->add_option("--theta", eval_theta, "theta > 0")->required();
  add_solver(eval_cmd, eval_solver);
  add_common(eval_cmd, eval_common);

  // curve
  auto* curve_cmd = app.add_subcommand("curve", "Sweep h_f over a theta grid");
  std::string curve_fn, curve_grid, curve_spacing = "linear";
  CommonOpts curve_common;
  SolverOpts curve_solver;
  curve_cmd->add_option("--function", curve_fn, "f as expression, catalog form, or @file.json")
      ->required();
  curve_cmd->add_option("--theta-grid", curve_grid, "lo:hi:n")->required();
  curve_cmd->add_option("--spacing", curve_spacing, "Grid spacing")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
  add_solver(curve_cmd, curve_solver);
  add_common(curve_cmd, curve_common);

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Trichotomy verdict for a candidate phi");
  std::string classify_fn;
  double classify_scan_hi = 1e4;
  int classify_grid = 4096;
  CommonOpts classify_common;
  classify_cmd->add_option("--function", classify_fn, "phi as expression, catalog form, or @file.json")
      ->required();
  classify_cmd->add_option("--scan-hi", classify_scan_hi, "Scan window end")->capture_default_str();
  classify_cmd->add_option("--grid", classify_grid, "Samples over the window")->capture_default_str();
  add_common(classify_cmd, classify_common);

  // invert
  auto* invert_cmd = app.add_subcommand("invert", "Reconstruct f with h_f = phi via f(x) = x*phi^-1(x)");
  std::string invert_fn, invert_verify_grid, invert_spacing = "linear";
  double invert_tol = default_tol(1e-10);
  double invert_scan_hi = 1e4;
  CommonOpts invert_common;
  SolverOpts invert_solver;
  invert_cmd->add_option("--function", invert_fn, "phi as expression, catalog form, or @file.json")
      ->required();
  invert_cmd->add_option("--tol", invert_tol, "Numeric inverse tolerance")->capture_default_str();
  invert_cmd->add_option("--scan-hi", invert_scan_hi, "Classification window end")
      ->capture_default_str();
  invert_cmd->add_option("--verify-grid", invert_verify_grid,
                         "Run the round trip phi -> f -> h_f over lo:hi:n");
  invert_cmd->add_option("--spacing", invert_spacing, "Verify grid spacing")
      ->check(CLI::IsMember({"linear", "log"}));
  add_common(invert_cmd, invert_common);

  // fixpoint
  auto* fix_cmd = app.add_subcommand("fixpoint", "Composition exponent equations (golden section, plastic number)");
  std::string fix_kind;
  int fix_depth = 1;
  double fix_tol = 1e-14;
  CommonOpts fix_common;
  fix_cmd->add_option("--kind", fix_kind, "forward: phi = f o..o f; inverse: f = phi o..o phi")
      ->required()
      ->check(CLI::IsMember({"forward", "inverse"}));
  fix_cmd->add_option("--depth", fix_depth, "Composition depth n >= 1")
      ->required()
      ->check(CLI::PositiveNumber);
  fix_cmd->add_option("--tol", fix_tol, "Bisection tolerance")->capture_default_str();
  add_common(fix_cmd, fix_common);

  // hindex
  auto* hx_cmd = app.add_subcommand("hindex", "Generalized h-index of a citation dataset");
  std::string hx_input, hx_format = "csv", hx_interp = "knot";
  double hx_theta = 1.0;
  bool hx_discrete = false;
  CommonOpts hx_common;
  SolverOpts hx_solver;
  hx_cmd->add_option("--input", hx_input, "Path to the dataset, or - for stdin")->required();
  hx_cmd->add_option("--format", hx_format, "Input format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  hx_cmd->add_option("--theta", hx_theta, "theta > 0")->capture_default_str();
  hx_cmd->add_option("--interpolation", hx_interp, "Curve construction")
      ->check(CLI::IsMember({"knot", "step"}))
      ->capture_default_str();
  hx_cmd->add_flag("--discrete", hx_discrete, "Also print the discrete h-index");
  add_solver(hx_cmd, hx_solver);
  add_common(hx_cmd, hx_common);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check f(phi(theta)) = theta*phi(theta) over a grid");
  std::string verify_f, verify_phi, verify_grid, verify_spacing = "linear";
  double verify_tol = default_tol(1e-10);
  CommonOpts verify_common;
  verify_cmd->add_option("--f", verify_f, "f as expression, catalog form, or @file.json")->required();
  verify_cmd->add_option("--phi", verify_phi, "phi as expression, catalog form, or @file.json")
      ->required();
  verify_cmd->add_option("--theta-grid", verify_grid, "lo:hi:n")->required();
  verify_cmd->add_option("--spacing", verify_spacing, "Grid spacing")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
  verify_cmd->add_option("--tol", verify_tol, "Pass threshold on the residual")->capture_default_str();
  add_common(verify_cmd, verify_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  OutputRecord rec;
  bool csv = false;
  try {
    if (eval_cmd->parsed()) {
      csv = eval_common.csv();
      rec.command = "eval";
      rec.inputs = {{"function", eval_fn}, {"theta", eval_theta}, {"tol", eval_solver.tol},
                    {"search_hi", eval_solver.search_hi}};
      rec.csv_columns = {"theta", "value", "case_tag", "residual", "roots_found"};
      FunctionSpec f = parse_function_arg(eval_fn);
      HirschResult r = hirsch_eval(f, eval_theta, eval_solver.config());
      if (r.derivative_warning)
        rec.warnings.push_back("theta0 = f'(0) could not be estimated; zero conventions fell back");
      rec.results.push_back(result_row(r));
      emit(rec, csv);
      return 0;
    }

    if (curve_cmd->parsed()) {
      csv = curve_common.csv();
      rec.command = "curve";
      rec.inputs = {{"function", curve_fn}, {"theta_grid", curve_grid}, {"spacing", curve_spacing},
                    {"tol", curve_solver.tol}};
      rec.csv_columns = {"theta", "value", "case_tag", "residual", "roots_found"};
      FunctionSpec f = parse_function_arg(curve_fn);
      std::vector<double> thetas = parse_theta_grid(curve_grid, curve_spacing);
      auto points = hirsch_curve(f, thetas, curve_solver.config());
      std::size_t ok = 0;
      for (const auto& p : points) {
        if (p.result) {
          rec.results.push_back(result_row(*p.result));
          ++ok;
        } else {
          rec.warnings.push_back("theta=" + format_double(p.theta) + ": " + p.error->second);
        }
      }
      emit(rec, csv);
      return ok > 0 ? 0 : 1;
    }

    if (classify_cmd->parsed()) {
      csv = classify_common.csv();
      rec.command = "classify";
      rec.inputs = {{"function", classify_fn}, {"scan_hi", classify_scan_hi}, {"grid", classify_grid}};
      rec.csv_columns = {"kind", "monotonicity", "boundary", "window_lo", "window_hi", "witness"};
      FunctionSpec phi = parse_function_arg(classify_fn);
      ClassifyConfig cfg;
      cfg.scan_hi = classify_scan_hi;
      cfg.grid_points = classify_grid;
      ShapeClass cls = classify_candidate(phi, cfg);
      json row{{"kind", shape_kind_name(cls.kind)},
               {"monotonicity", monotonicity_name(cls.monotonicity)},
               {"boundary", cls.boundary ? json(*cls.boundary) : json(nullptr)},
               {"window_lo", cls.window_lo},
               {"window_hi", cls.window_hi},
               {"witness", cls.witness ? witness_to_json(*cls.witness) : json(nullptr)},
               {"injective_interval",
                cls.injective_interval ? interval_to_json(*cls.injective_interval) : json(nullptr)}};
      rec.results.push_back(row);
      emit(rec, csv);
      return cls.kind == ShapeKind::Rejected ? 3 : 0;
    }

    if (invert_cmd->parsed()) {
      csv = invert_common.csv();
      rec.command = "invert";
      rec.inputs = {{"function", invert_fn}, {"tol", invert_tol}, {"scan_hi", invert_scan_hi}};
      rec.csv_columns = {"method", "expression", "zero_at_origin", "sup_error"};
      FunctionSpec phi = parse_function_arg(invert_fn);
      ClassifyConfig ccfg;
      ccfg.scan_hi = invert_scan_hi;
      ShapeClass cls = classify_candidate(phi, ccfg);
      ReconstructionResult recon = reconstruct_f(phi, cls, invert_tol);
      json row{{"method", reconstruct_method_name(recon.method)},
               {"expression", recon.method == ReconstructMethod::ClosedForm
                                  ? json(recon.expression_text)
                                  : json(nullptr)},
               {"zero_at_origin", recon.zero_at_origin},
               {"injective_interval", interval_to_json(recon.injective_interval)},
               {"f", spec_to_json(recon.f)}};
      if (!invert_verify_grid.empty()) {
        std::vector<double> thetas = parse_theta_grid(invert_verify_grid, invert_spacing);
        RoundTripReport rt = round_trip_check(phi, SolverConfig{}, thetas, ccfg, invert_tol);
        row["sup_error"] = rt.sup_error;
        row["verified_points"] = rt.entries.size();
        for (const auto& fail : rt.failures)
          rec.warnings.push_back("theta=" + format_double(fail.theta) + ": " + fail.message);
      }
      rec.results.push_back(row);
      emit(rec, csv);
      return 0;
    }

    if (fix_cmd->parsed()) {
      csv = fix_common.csv();
      rec.command = "fixpoint";
      rec.inputs = {{"kind", fix_kind}, {"depth", fix_depth}, {"tol", fix_tol}};
      rec.csv_columns = {"kind", "depth", "polynomial", "root", "residual"};
      CompositionKind kind = fix_kind == "forward" ? CompositionKind::ForwardCompose
                                                   : CompositionKind::InverseCompose;
      ExponentProblem p = solve_exponent(kind, fix_depth, fix_tol);
      json row{{"kind", composition_kind_name(p.kind)},
               {"depth", p.depth},
               {"polynomial", p.polynomial},
               {"root", p.root},
               {"residual", p.residual}};
      if (fix_depth == 1) {
        row["closed_form"] = "(1 + sqrt(5))/2";
        row["closed_form_value"] = (1.0 + std::sqrt(5.0)) / 2.0;
      }
      rec.results.push_back(row);
      emit(rec, csv);
      return 0;
    }

    if (hx_cmd->parsed()) {
      csv = hx_common.csv();
      rec.command = "hindex";
      rec.inputs = {{"input", hx_input}, {"format", hx_format}, {"theta", hx_theta},
                    {"interpolation", hx_interp}};
      rec.csv_columns = {"theta", "value", "case_tag", "residual", "discrete_h", "entries"};
      CitationDataset ds = load_dataset(read_all(hx_input),
                                        hx_format == "json" ? DataFormat::Json : DataFormat::Csv,
                                        hx_input);
      ds.interpolation =
          hx_interp == "step" ? InterpolationPolicy::StepRamp : InterpolationPolicy::KnotLinear;
      HirschResult r = generalized_h(ds, hx_theta, hx_solver.config());
      json row = result_row(r);
      row["entries"] = ds.counts.size();
      if (hx_discrete) row["discrete_h"] = discrete_h(ds);
      rec.results.push_back(row);
      emit(rec, csv);
      return 0;
    }

    if (verify_cmd->parsed()) {
      csv = verify_common.csv();
      rec.command = "verify";
      rec.inputs = {{"f", verify_f}, {"phi", verify_phi}, {"theta_grid", verify_grid},
                    {"spacing", verify_spacing}, {"tol", verify_tol}};
      rec.csv_columns = {"max_residual", "pass", "points"};
      FunctionSpec f = parse_function_arg(verify_f);
      FunctionSpec phi = parse_function_arg(verify_phi);
      std::vector<double> thetas = parse_theta_grid(verify_grid, verify_spacing);
      PairReport report = verify_hirsch_pair(f, phi, thetas, verify_tol);
      for (const auto& fail : report.failures)
        rec.warnings.push_back("theta=" + format_double(fail.theta) + ": " + fail.message);
      rec.results.push_back(
          {{"max_residual", report.max_residual}, {"pass", report.pass}, {"points", thetas.size()}});
      emit(rec, csv);
      return report.pass ? 0 : 3;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
