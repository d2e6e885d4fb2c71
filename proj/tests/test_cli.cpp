#include <catch2/catch.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

// CLI_BIN is injected by the build: the path of the hirsch executable.

namespace {

struct CliResult {
  int exit_code = -1;
  std::string stdout_text;
};

CliResult run_cli(const std::string& args, const std::string& stdin_text = {},
                  const std::string& env_prefix = {}) {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "hirsch_cli_tests";
  std::filesystem::create_directories(dir);
  std::string cmd = env_prefix + std::string(CLI_BIN) + " " + args + " 2>/dev/null";
  if (!stdin_text.empty()) {
    auto in_path = dir / "stdin.txt";
    std::ofstream(in_path) << stdin_text;
    cmd = cmd + " < " + in_path.string();
  }
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.stdout_text.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse_record(const CliResult& r) {
  nlohmann::json j = nlohmann::json::parse(r.stdout_text);
  REQUIRE(j.at("schema_version") == "1");
  REQUIRE(j.contains("command"));
  REQUIRE(j.contains("inputs"));
  REQUIRE(j.contains("results"));
  REQUIRE(j.contains("warnings"));
  return j;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "hirsch_cli_tests";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p) << content;
  return p.string();
}

}  // namespace

TEST_CASE("eval: documented invocations and exit codes") {
  CliResult c = run_cli("eval --function \"5\" --theta 2");
  CHECK(c.exit_code == 0);
  nlohmann::json j = parse_record(c);
  CHECK(j.at("results").at(0).at("value").get<double>() == Approx(2.5).margin(1e-9));
  CHECK(j.at("results").at(0).at("case_tag") == "UniquePositive");

  CliResult p = run_cli("eval --function \"x^3\" --theta 4");
  CHECK(p.exit_code == 0);
  CHECK(parse_record(p).at("results").at(0).at("value").get<double>() ==
        Approx(2.0).margin(1e-9));

  // every x solves x = x: infinitely many intersections
  CHECK(run_cli("eval --function \"x\" --theta 1").exit_code == 2);

  // parse failure
  CHECK(run_cli("eval --function \"x +\" --theta 1").exit_code == 1);
  // no solution on a bounded domain
  CHECK(run_cli("eval --function \"5 on [0, 1]\" --theta 1").exit_code == 3);
}

TEST_CASE("curve: grids, spacing, and warning rows") {
  CliResult c = run_cli("curve --function \"x^2\" --theta-grid 0.5:2:4");
  CHECK(c.exit_code == 0);
  nlohmann::json j = parse_record(c);
  REQUIRE(j.at("results").size() == 4);
  const double expect[] = {0.5, 1.0, 1.5, 2.0};
  for (int i = 0; i < 4; ++i) {
    CHECK(j.at("results").at(i).at("theta").get<double>() == Approx(expect[i]));
    CHECK(j.at("results").at(i).at("value").get<double>() == Approx(expect[i]).margin(1e-9));
  }

  CliResult c2 = run_cli("curve --function \"5\" --theta-grid 1:5:2");
  nlohmann::json j2 = parse_record(c2);
  CHECK(j2.at("results").at(0).at("value").get<double>() == Approx(5.0).margin(1e-9));
  CHECK(j2.at("results").at(1).at("value").get<double>() == Approx(1.0).margin(1e-9));

  CliResult c3 = run_cli("curve --function \"0\" --theta-grid 1:2:2");
  CHECK(c3.exit_code == 0);
  nlohmann::json j3 = parse_record(c3);
  for (const auto& row : j3.at("results")) {
    CHECK(row.at("value").get<double>() == 0.0);
    CHECK(row.at("case_tag") == "NullFunction");
  }

  // per-point failures become warnings; exit 0 while at least one succeeds
  std::string gap = write_temp("gap.json", R"({
    "kind": "composite",
    "body": {"pieces": [
      {"kind": "expr", "body": "5", "domain": [[0, 1, true, true]], "overrides": []},
      {"kind": "expr", "body": "1", "domain": [[1, null, false, false]], "overrides": []}
    ]},
    "domain": [], "overrides": []
  })");
  CliResult c4 = run_cli("curve --function @" + gap + " --theta-grid 0.5:6:12");
  CHECK(c4.exit_code == 0);
  nlohmann::json j4 = parse_record(c4);
  CHECK(j4.at("results").size() >= 1);
  CHECK(j4.at("warnings").size() >= 1);

  // zero successful points
  CHECK(run_cli("curve --function \"5 on [0, 1]\" --theta-grid 1:2:3").exit_code == 1);
}

TEST_CASE("classify: verdicts and the rejection exit code") {
  CliResult inj = run_cli("classify --function \"x^2\"");
  CHECK(inj.exit_code == 0);
  nlohmann::json j = parse_record(inj);
  CHECK(j.at("results").at(0).at("kind") == "Injective");
  CHECK(j.at("results").at(0).at("monotonicity") == "Increasing");

  CliResult es = run_cli("classify --function \"expshift(2, 1)\"");
  CHECK(es.exit_code == 0);
  nlohmann::json je = parse_record(es);
  CHECK(je.at("results").at(0).at("kind") == "ZeroPlateauLow");
  CHECK(je.at("results").at(0).at("boundary").get<double>() == Approx(1.0).margin(1e-6));

  std::string hump = write_temp("hump.json", R"({
    "kind": "pwl",
    "body": {"knots": [[0, 0], [1, 0], [2, 1], [3, 0], [4, 0]], "clampRight": false},
    "domain": [[0, 4, true, true]], "overrides": []
  })");
  CliResult rej = run_cli("classify --function @" + hump);
  CHECK(rej.exit_code == 3);
  nlohmann::json jr = parse_record(rej);
  CHECK(jr.at("results").at(0).at("kind") == "Rejected");
  CHECK_FALSE(jr.at("results").at(0).at("witness").is_null());
}

TEST_CASE("invert: closed forms, numeric fallback, and verification") {
  CliResult rec = run_cli("invert --function \"8/x\"");
  CHECK(rec.exit_code == 0);
  nlohmann::json j = parse_record(rec);
  CHECK(j.at("results").at(0).at("method") == "ClosedForm");
  CHECK(j.at("results").at(0).at("expression") == "8");

  CliResult sq = run_cli("invert --function \"x^2\"");
  CHECK(parse_record(sq).at("results").at(0).at("expression") == "x^1.5");

  std::string hump = write_temp("hump.json", R"({
    "kind": "pwl",
    "body": {"knots": [[0, 0], [1, 0], [2, 1], [3, 0], [4, 0]], "clampRight": false},
    "domain": [[0, 4, true, true]], "overrides": []
  })");
  CHECK(run_cli("invert --function @" + hump).exit_code == 3);

  CliResult verified = run_cli("invert --function \"x^2\" --verify-grid 0.1:10:25");
  CHECK(verified.exit_code == 0);
  nlohmann::json jv = parse_record(verified);
  CHECK(jv.at("results").at(0).at("sup_error").get<double>() <= 1e-6);

  // numeric-inverse marker on a non-catalog shape
  CliResult numeric = run_cli("invert --function \"x^3 + x\"");
  CHECK(numeric.exit_code == 0);
  nlohmann::json jn = parse_record(numeric);
  CHECK(jn.at("results").at(0).at("method") == "NumericInverse");
  CHECK(jn.at("results").at(0).at("f").at("kind") == "numeric_inverse");
}

TEST_CASE("fixpoint: golden section and plastic number") {
  CliResult fwd = run_cli("fixpoint --kind forward --depth 1");
  CHECK(fwd.exit_code == 0);
  nlohmann::json j = parse_record(fwd);
  CHECK(j.at("results").at(0).at("root").get<double>() ==
        Approx(1.6180339887498949).margin(1e-10));
  CHECK(j.at("results").at(0).contains("closed_form"));

  CliResult inv2 = run_cli("fixpoint --kind inverse --depth 2");
  CHECK(parse_record(inv2).at("results").at(0).at("root").get<double>() ==
        Approx(1.3247178).margin(5e-7));

  CliResult fwd2 = run_cli("fixpoint --kind forward --depth 2");
  CHECK(parse_record(fwd2).at("results").at(0).at("root").get<double>() ==
        Approx(1.4655712318767682).margin(1e-10));

  CHECK(run_cli("fixpoint --kind forward --depth 0").exit_code == 1);
  CHECK(run_cli("fixpoint --kind sideways --depth 1").exit_code == 1);
}

TEST_CASE("hindex: files, stdin, discrete oracle, and the empty dataset") {
  std::string data = write_temp("data.csv", "5\n3\n3\n1\n");
  CliResult h = run_cli("hindex --input " + data);
  CHECK(h.exit_code == 0);
  nlohmann::json j = parse_record(h);
  CHECK(j.at("results").at(0).at("value").get<double>() == Approx(7.0 / 3.0).margin(1e-9));

  CliResult hd = run_cli("hindex --input " + data + " --discrete");
  CHECK(parse_record(hd).at("results").at(0).at("discrete_h").get<int>() == 3);

  std::string empty = write_temp("empty.csv", "");
  CliResult he = run_cli("hindex --input " + empty);
  CHECK(he.exit_code == 0);
  CHECK(parse_record(he).at("results").at(0).at("value").get<double>() == 0.0);

  CliResult hs = run_cli("hindex --input - --format json --theta 5", "[5, 3, 3, 1]");
  CHECK(hs.exit_code == 0);
  CHECK(parse_record(hs).at("results").at(0).at("value").get<double>() ==
        Approx(5.0 / 7.0).margin(1e-9));

  std::string bad = write_temp("bad.csv", "5\noops\n");
  CHECK(run_cli("hindex --input " + bad).exit_code == 1);

  // the curve never reaches the diagonal inside its bounded domain
  std::string tall = write_temp("tall.csv", "10\n9\n");
  CHECK(run_cli("hindex --input " + tall).exit_code == 3);

  // step interpolation tracks the discrete staircase
  CliResult step = run_cli("hindex --input " + data + " --interpolation step");
  CHECK(step.exit_code == 0);
  CHECK(parse_record(step).at("results").at(0).at("value").get<double>() ==
        Approx(3.0).margin(0.01));
}

TEST_CASE("verify: pass and fail routes") {
  CHECK(run_cli("verify --f \"8\" --phi \"8/x\" --theta-grid 0.01:100:40 --spacing log")
            .exit_code == 0);
  CHECK(run_cli("verify --f \"x^1.5\" --phi \"x^2\" --theta-grid 0.01:100:40 --spacing log")
            .exit_code == 0);
  CliResult bad = run_cli("verify --f \"x^2\" --phi \"x^2\" --theta-grid 1:4:4");
  CHECK(bad.exit_code == 3);
  nlohmann::json j = parse_record(bad);
  CHECK(j.at("results").at(0).at("pass") == false);
  CHECK(j.at("warnings").size() >= 1);
}

TEST_CASE("JSON output parses and round-trips; CSV carries full precision") {
  CliResult c = run_cli("eval --function \"x^3\" --theta 4");
  nlohmann::json j = parse_record(c);
  nlohmann::json again = nlohmann::json::parse(j.dump());
  CHECK(again == j);

  CliResult csv = run_cli("eval --function \"x^3\" --theta 4 --output csv");
  CHECK(csv.exit_code == 0);
  REQUIRE(csv.stdout_text.rfind("theta,value,", 0) == 0);
  // second line: row values; value column round-trips through 17 digits
  std::size_t nl = csv.stdout_text.find('\n');
  std::string row = csv.stdout_text.substr(nl + 1, csv.stdout_text.find('\n', nl + 1) - nl - 1);
  std::size_t c1 = row.find(',');
  std::size_t c2 = row.find(',', c1 + 1);
  double value = std::stod(row.substr(c1 + 1, c2 - c1 - 1));
  CHECK(value == Approx(2.0).margin(1e-12));
}

TEST_CASE("determinism: identical flags give identical bytes") {
  CliResult a = run_cli("curve --function \"x^1.5\" --theta-grid 0.5:4:9");
  CliResult b = run_cli("curve --function \"x^1.5\" --theta-grid 0.5:4:9");
  CHECK(a.stdout_text == b.stdout_text);
}

TEST_CASE("HIRSCH_DEFAULT_TOL feeds the tolerance defaults") {
  CliResult via_env = run_cli("eval --function \"5\" --theta 2", {},
                              "HIRSCH_DEFAULT_TOL=1e-5 ");
  CHECK(via_env.exit_code == 0);
  CHECK(parse_record(via_env).at("inputs").at("tol").get<double>() == Approx(1e-5));

  // an explicit flag wins over the environment
  CliResult via_flag = run_cli("eval --function \"5\" --theta 2 --tol 1e-6", {},
                               "HIRSCH_DEFAULT_TOL=1e-5 ");
  CHECK(parse_record(via_flag).at("inputs").at("tol").get<double>() == Approx(1e-6));
}
