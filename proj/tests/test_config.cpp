#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cdl/analysis.hpp"
#include "cdl/config.hpp"
#include "cdl/report.hpp"
#include "cdl/runner.hpp"
#include "cdl/solver.hpp"

using namespace cdl;

namespace {

std::string write_temp(const std::string& text) {
  static int counter = 0;
  const auto path = std::filesystem::temp_directory_path() /
                    ("cdl_cfg_" + std::to_string(counter++) + ".cfg");
  std::ofstream os(path);
  os << text;
  return path.string();
}

const char* kExample1Cfg =
    "# example 1\n"
    "a = 1 - t^2\n"
    "f = 2*x*t\n"
    "phi = 0\n"
    "gL = 1 + t\n"
    "gR = 0\n"
    "eps = 2^-10\n"
    "alpha = 0.5\n"
    "T = 0.5\n"
    "d = t - 0.33333333333333331*t^3\n";

}  // namespace

TEST_CASE("polynomial parsing") {
  const Poly2 a = parse_poly("1 - t^2", true, true);
  CHECK(a(0.0, 0.5) == 0.75);
  CHECK_FALSE(a.depends_on_x());
  const Poly2 f = parse_poly("4*x - 4*x^2", true, true);
  CHECK(f(0.25, 0.0) == 0.75);
  const Poly2 g = parse_poly("2*x*t + 0.5", true, true);
  CHECK(g(2.0, 3.0) == 12.5);
  const Poly2 neg = parse_poly("-x + 1", true, false);
  CHECK(neg(0.25, 0.0) == 0.75);
  CHECK_THROWS_AS(parse_poly("1 + q", true, true), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("x^", true, true), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("", true, true), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("1 + x", false, true), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("t", true, false), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("2 2", true, true), std::invalid_argument);
}

TEST_CASE("eps literal parsing") {
  CHECK(parse_eps_value("2^-12") == std::ldexp(1.0, -12));
  CHECK(parse_eps_value("2^0") == 1.0);
  CHECK(parse_eps_value("0.25") == 0.25);
  CHECK(parse_eps_value(" 1e-3 ") == 1e-3);
  CHECK_THROWS_AS(parse_eps_value("2^x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_eps_value("2^"), std::invalid_argument);
  CHECK_THROWS_AS(parse_eps_value("abc"), std::invalid_argument);
}

TEST_CASE("eps labels round-trip through the report formatter") {
  CHECK(format_eps(1.0) == "2^0");
  CHECK(format_eps(std::ldexp(1.0, -12)) == "2^-12");
  CHECK(format_eps(0.25) == "2^-2");
  CHECK(parse_eps_value(format_eps(0.75)) == 0.75);
  CHECK(parse_eps_value(format_eps(1e-3)) == 1e-3);
}

TEST_CASE("surface writer emits time-outer blocks") {
  GridFunction g;
  auto m = std::make_shared<TensorMesh>();
  m->xs = {0.0, 1.0};
  m->ts = {0.0, 0.5};
  g.mesh = m;
  g.values = {1, 2, 3, 4};
  std::ostringstream os;
  write_surface(g, os);
  CHECK(os.str() == "0 0 1\n1 0 2\n\n0 0.5 3\n1 0.5 4\n\n");
}

TEST_CASE("a problem file reproducing example 1 parses to identical data") {
  const ProblemSpec parsed = parse_problem_file(write_temp(kExample1Cfg));
  const ProblemSpec builtin = builtin_example(1);
  CHECK(parsed.a_is_time_only);
  CHECK(parsed.eps == builtin.eps);
  CHECK(parsed.T == builtin.T);
  for (double x : {0.0, 0.3, 1.0})
    for (double t : {0.0, 0.2, 0.5}) {
      CHECK(parsed.a(x, t) == builtin.a(x, t));
      CHECK(parsed.f(x, t) == builtin.f(x, t));
      CHECK(parsed.phi(x, 0.0) == builtin.phi(x, 0.0));
      CHECK(parsed.gL(0.0, t) == builtin.gL(0.0, t));
      CHECK(parsed.gR(0.0, t) == builtin.gR(0.0, t));
    }
}

TEST_CASE("problem file rejection paths") {
  // missing required key
  CHECK_THROWS_WITH_AS(
      parse_problem_file(write_temp("a = 1\nf = 0\nphi = 0\ngL = 0\ngR = 0\n"
                                    "alpha = 1\nT = 0.5\n")),
      doctest::Contains("eps"), std::invalid_argument);
  // positivity violation
  CHECK_THROWS_WITH_AS(
      parse_problem_file(write_temp("a = -1\nf = 0\nphi = 0\ngL = 0\ngR = 0\n"
                                    "eps = 0.5\nalpha = 1\nT = 0.5\n")),
      doctest::Contains("a(x,t) <= 0"), std::invalid_argument);
  // syntax error carries the line number
  CHECK_THROWS_WITH_AS(
      parse_problem_file(write_temp("a = 1\nf = 2*\nphi = 0\ngL = 0\ngR = 0\n"
                                    "eps = 0.5\nalpha = 1\nT = 0.5\n")),
      doctest::Contains(":2:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_problem_file("/nonexistent/missing.cfg"),
                  std::invalid_argument);
  // 'd' is rejected when a depends on x
  CHECK_THROWS_AS(
      parse_problem_file(write_temp("a = 1 + x\nf = 0\nphi = 0\ngL = 0\n"
                                    "gR = 0\neps = 0.5\nalpha = 1\nT = 0.5\n"
                                    "d = t\n")),
      std::invalid_argument);
}

TEST_CASE("corner-derivative overrides flow into compatibility") {
  const ProblemSpec p = parse_problem_file(
      write_temp("a = 1\nf = 0\nphi = x^2\ngL = 0\ngR = 1\neps = 0.5\n"
                 "alpha = 1\nT = 0.5\nphi2_0 = 10\n"));
  const CharacteristicData cd = compatibility(p);
  // A1 = -eps*override + a*phi'(0) + gL'(0) - f = -5
  CHECK(cd.A1 == doctest::Approx(-5.0).epsilon(1e-14));
}

TEST_CASE("round trip: builtins through config text give identical sweeps") {
  for (int k = 1; k <= 5; ++k) {
    const ProblemSpec builtin = builtin_example(k);
    const ProblemSpec parsed =
        parse_problem_file(write_temp(to_config_text(builtin)));
    SweepOptions opt;
    opt.N_list = {16, 32};
    opt.eps_set = {std::ldexp(1.0, -6)};
    opt.subtract_singular = compatibility(builtin).A0 != 0.0;
    const ConvergenceReport a = sweep(builtin, opt);
    const ConvergenceReport b = sweep(parsed, opt);
    for (std::size_t c = 0; c < a.rows[0].D.size(); ++c) {
      INFO("example ", k, " column ", c);
      CHECK(a.rows[0].D[c] == b.rows[0].D[c]);  // bitwise
    }
  }
}

TEST_CASE("runner: error paths exit nonzero with a message") {
  std::ostringstream log, err;
  RunConfig missing;
  missing.problem_file = "definitely_missing.cfg";
  CHECK(run(missing, log, err) != 0);
  CHECK(err.str().find("not found") != std::string::npos);

  RunConfig both;
  CHECK(run(both, log, err) != 0);  // neither example nor file

  // A0 != 0 with x-dependent a cannot be subtracted
  const std::string bad = write_temp(
      "a = 1 + x\nf = 0\nphi = 0\ngL = 1\ngR = 0\neps = 0.5\nalpha = 1\n"
      "T = 0.5\n");
  RunConfig xdep;
  xdep.problem_file = bad;
  xdep.N_list = {8, 16};
  std::ostringstream err2;
  CHECK(run(xdep, log, err2) != 0);
  CHECK(err2.str().find("depends on x") != std::string::npos);
}

TEST_CASE("runner: full run emits tables and surfaces") {
  const auto dir = std::filesystem::temp_directory_path() / "cdl_run_out";
  std::filesystem::remove_all(dir);
  RunConfig cfg;
  cfg.example = 1;
  cfg.N_list = {8, 16};
  cfg.eps_set = {std::ldexp(1.0, -6)};
  cfg.surface_at = SurfaceAt{std::ldexp(1.0, -10), 16, 16};
  cfg.out_dir = dir.string();
  std::ostringstream log, err;
  REQUIRE(run(cfg, log, err) == 0);
  CHECK(log.str().find("subtraction on") != std::string::npos);  // auto mode
  CHECK(std::filesystem::exists(dir / "example1_table.csv"));
  CHECK(std::filesystem::exists(dir / "example1_table.md"));
  CHECK(std::filesystem::exists(dir / "example1_Y.dat"));
  CHECK(std::filesystem::exists(dir / "example1_U.dat"));
  // CSV carries the header and a uniform row
  std::ifstream csv(dir / "example1_table.csv");
  std::string text((std::istreambuf_iterator<char>(csv)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("example,eps,N,M,D,P") != std::string::npos);
  CHECK(text.find("uniform") != std::string::npos);
  CHECK(text.find("2^-6") != std::string::npos);
}

TEST_CASE("runner: auto mode leaves compatible problems unsubtracted") {
  RunConfig cfg;
  cfg.example = 4;  // A0 = 0
  cfg.N_list = {8, 16};
  cfg.eps_set = {std::ldexp(1.0, -6)};
  cfg.out_dir =
      (std::filesystem::temp_directory_path() / "cdl_run_out4").string();
  std::ostringstream log, err;
  REQUIRE(run(cfg, log, err) == 0);
  CHECK(log.str().find("subtraction off") != std::string::npos);
}
