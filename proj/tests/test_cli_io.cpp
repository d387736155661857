#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "jetcc/parse.hpp"
#include "test_util.hpp"

using namespace jetcc;
using testutil::fixture_text;
using testutil::run_cli;

namespace {

std::string fixture_path(const std::string& name) {
  return testutil::source_dir() + "/fixtures/" + name + ".pde";
}

}  // namespace

TEST_CASE("parsing the grammar") {
  SystemFile f = parse_system(
      "# comment line\n"
      "vars x1 x2\n"
      "unknowns y z   # trailing comment\n"
      "option depth 3\n"
      "eq first: y_12 - (2 + x1)*z_2 + 1/2*y = a; eq: z_11 = 0\n");
  CHECK(f.system.vars == std::vector<std::string>{"x1", "x2"});
  CHECK(f.system.unknowns == std::vector<std::string>{"y", "z"});
  CHECK(f.system.sources == std::vector<std::string>{"a"});
  CHECK(f.options.at("depth") == 3);
  CHECK(f.labels == std::vector<std::string>{"first", "e2"});
  REQUIRE(f.system.eqs.size() == 2);

  const Equation& e1 = f.system.eqs[0];
  CHECK(e1.order() == 2);
  Jet y12{0, mi_from_digits("12", 2)};
  Jet z2{1, mi_from_digits("2", 2)};
  Jet y0{0, MultiIndex(2, 0)};
  CHECK(e1.lhs.at(y12).is_one());
  CHECK(e1.lhs.at(z2) ==
        -(RatFunc::constant(2, Rational(2)) + RatFunc::variable(2, 0)));
  CHECK(e1.lhs.at(y0) == RatFunc::constant(2, rat(1, 2)));
  // Homogeneous equation: empty rhs.
  CHECK(f.system.eqs[1].rhs.empty());
  CHECK(f.system.eqs[1].order() == 2);
}

TEST_CASE("jet suffix forms") {
  SystemFile f = parse_system(
      "vars x1 x2 x3\n"
      "unknown y\n"
      "eq: y_321 + y_0 - y = s\n");
  const LinForm& lhs = f.system.eqs[0].lhs;
  Jet mixed{0, mi_from_digits("123", 3)};
  CHECK(lhs.at(mixed).is_one());
  // y_0 and bare y both denote the order-0 jet; they cancel here.
  CHECK(lhs.count(Jet{0, MultiIndex(3, 0)}) == 0);
}

TEST_CASE("coefficient arithmetic, powers, and signs") {
  SystemFile f = parse_system(
      "vars x1 x2\n"
      "unknown y\n"
      "eq: -y_1 + (x1 - x2)^2/4*y_2 - 3^2*y = f\n");
  const LinForm& lhs = f.system.eqs[0].lhs;
  Jet y1{0, mi_from_digits("1", 2)};
  Jet y2{0, mi_from_digits("2", 2)};
  Jet y0{0, MultiIndex(2, 0)};
  CHECK(lhs.at(y1) == RatFunc::constant(2, Rational(-1)));
  Poly diff = Poly::variable(2, 0) - Poly::variable(2, 1);
  CHECK(lhs.at(y2) == RatFunc(diff.pow(2), Poly::constant(2, Rational(4))));
  CHECK(lhs.at(y0) == RatFunc::constant(2, Rational(-9)));
}

TEST_CASE("parse errors carry positions") {
  auto expect_error = [](const std::string& text, int line,
                         const char* needle) {
    try {
      parse_system(text);
      FAIL_CHECK("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line == line);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("vars x1\nunknown y\neq: y_2 = f\n", 3, "out of range");
  expect_error("vars x1\nunknown y\neq: w_1 = f\n", 3, "unknown");
  expect_error("vars x1\nunknown y\neq: y_1 f\n", 3, "=");
  expect_error("vars x1\neq: y_1 = f\n", 2, "unknown");
  expect_error("unknown y\neq: y = f\n", 2, "variables");
  expect_error("vars x1\nunknown y\neq a: y_1 = f\neq a: y = g\n", 4,
               "duplicate");
  expect_error("vars x1\nunknown y\neq: = f\n", 3, "coefficient or jet");
  expect_error("vars x1\nunknown y\neq: y_1 = 2\n", 3, "source");
}

TEST_CASE("emit and reparse is the identity on every fixture") {
  std::vector<std::string> names{"deformation", "mixed1", "mixed2",
                                 "macaulay"};
  for (int i = 1; i <= 10; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "random/r%02d", i);
    names.push_back(buf);
  }
  for (const std::string& name : names) {
    CAPTURE(name);
    SystemFile a = parse_system(fixture_text(name));
    std::string emitted = emit_system(a);
    SystemFile b = parse_system(emitted);
    CHECK(emit_system(b) == emitted);  // emission is idempotent
    CHECK(a.system.vars == b.system.vars);
    CHECK(a.system.unknowns == b.system.unknowns);
    CHECK(a.system.sources == b.system.sources);
    CHECK(a.labels == b.labels);
    REQUIRE(a.system.eqs.size() == b.system.eqs.size());
    for (size_t k = 0; k < a.system.eqs.size(); ++k) {
      CHECK(a.system.eqs[k].lhs == b.system.eqs[k].lhs);
      CHECK(a.system.eqs[k].rhs == b.system.eqs[k].rhs);
    }
  }
}

TEST_CASE("form rendering conventions") {
  SystemFile f = parse_system(fixture_text("mixed1"));
  CHECK(form_to_string(f.system.eqs[0].lhs, f.system.unknowns,
                       f.system.vars) == "y_33 - x2*y_1");
  LinForm empty;
  CHECK(form_to_string(empty, {"y"}, {"x1"}) == "0");
}

TEST_CASE("cli: subcommands run and exit zero on the fixtures") {
  for (const char* cmd : {"dims", "tabular", "cc", "syzygies", "resolution",
                          "full"}) {
    CAPTURE(cmd);
    testutil::CliResult r =
        run_cli(std::string(cmd) + " " + fixture_path("macaulay"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("y_33") != std::string::npos);
  }
  testutil::CliResult cc = run_cli("cc " + fixture_path("macaulay"));
  CHECK(cc.output.find("u_33 - v_13 + v_2") != std::string::npos);
  CHECK(cc.output.find("t = 3") != std::string::npos);
}

TEST_CASE("cli: reads from stdin when no file is given") {
  testutil::CliResult r =
      run_cli("dims - < " + fixture_path("deformation"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("formally integrable to depth 4: yes") !=
        std::string::npos);
}

TEST_CASE("cli: exit codes for failure modes") {
  // Parse error -> 1.
  std::string bad = std::filesystem::temp_directory_path() / "jetcc_bad.pde";
  {
    FILE* f = std::fopen(bad.c_str(), "w");
    std::fputs("vars x1\nunknown y\neq: y_9 = f\n", f);
    std::fclose(f);
  }
  testutil::CliResult pe = run_cli("dims " + bad);
  CHECK(pe.exit_code == 1);
  CHECK(pe.output.find("parse error") != std::string::npos);
  std::remove(bad.c_str());

  // Missing file -> 1.
  CHECK(run_cli("dims /nonexistent/no.pde").exit_code == 1);

  // Scan cap too small to certify termination -> 2 (incomplete result).
  testutil::CliResult inc =
      run_cli("cc --max-order 1 " + fixture_path("mixed1"));
  CHECK(inc.exit_code == 2);
  CHECK(inc.output.find("INCOMPLETE") != std::string::npos);
}

TEST_CASE("cli: structured output is deterministic and carries the schema") {
  std::string args = "full --seed 7 --format structured " +
                     fixture_path("mixed1");
  testutil::CliResult a = run_cli(args);
  testutil::CliResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);  // byte-identical reruns
  CHECK(a.output.find("\"schema\": \"jetcc-report-v1\"") != std::string::npos);
  CHECK(a.output.find("\"command\": \"full\"") != std::string::npos);

  // Text mode is deterministic too.
  std::string targs = "full --seed 7 " + fixture_path("mixed1");
  CHECK(run_cli(targs).output == run_cli(targs).output);
}

TEST_CASE("cli: --out writes the report to a file") {
  std::string out = std::filesystem::temp_directory_path() / "jetcc_out.json";
  testutil::CliResult r = run_cli("dims --format structured --out " + out +
                                  " " + fixture_path("macaulay"));
  CHECK(r.exit_code == 0);
  std::string data = testutil::read_file(out);
  CHECK(data.find("\"schema\": \"jetcc-report-v1\"") != std::string::npos);
  CHECK(data.find("\"dims\"") != std::string::npos);
  std::remove(out.c_str());
}
