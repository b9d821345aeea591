#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cdl/analysis.hpp"

using namespace cdl;

namespace {

Poly2 poly(std::initializer_list<Poly2::Term> terms) {
  Poly2 out;
  for (const auto& m : terms) out.add_term(m.px, m.pt, m.c);
  return out;
}

ProblemSpec linear_problem(double eps) {
  ProblemSpec p;
  p.a = Fn2(Poly2(1.0));
  p.f = Fn2(Poly2(2.0));
  p.phi = Fn2(poly({{1, 0, 1.0}}));
  p.gL = Fn2(poly({{0, 1, 1.0}}));
  p.gR = Fn2(poly({{0, 0, 1.0}, {0, 1, 1.0}}));
  p.eps = eps;
  p.alpha = 1.0;
  p.T = 0.5;
  p.a_is_time_only = true;
  validate(p);
  return p;
}

}  // namespace

TEST_CASE("order_from") {
  CHECK(order_from(3.551e-2, 2.363e-2) == doctest::Approx(0.588).epsilon(2e-3));
  CHECK(order_from(0.125, 0.125) == 0.0);
  CHECK(order_from(4 * 0.03, 0.03) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(order_from(0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(order_from(0.1, -0.1), std::domain_error);
}

TEST_CASE("two-mesh difference vanishes on an exactly reproduced solution") {
  CHECK(two_mesh_difference(linear_problem(std::ldexp(1.0, -8)), 16, 16, false) <=
        1e-12);
  CHECK(two_mesh_difference(linear_problem(1.0), 32, 32, false) <= 1e-12);
}

TEST_CASE("reference anchors for example 1") {
  const ProblemSpec p = builtin_example(1);
  const double d0 = two_mesh_difference(with_eps(p, 1.0), 16, 16, true);
  CHECK(std::abs(d0 / 2.593e-3 - 1.0) < 0.02);
  const double d12 =
      two_mesh_difference(with_eps(p, std::ldexp(1.0, -12)), 16, 16, true);
  CHECK(std::abs(d12 / 3.547e-2 - 1.0) < 0.02);
}

TEST_CASE("sweep assembles rows, orders, and uniform data") {
  SweepOptions opt;
  opt.N_list = {16, 32, 64};
  opt.eps_set = {1.0, std::ldexp(1.0, -12)};
  opt.subtract_singular = true;
  opt.mode = ExecMode::serial;
  const ConvergenceReport rep = sweep(builtin_example(1), opt);
  REQUIRE(rep.rows.size() == 2);
  REQUIRE(rep.rows[0].D.size() == 3);
  REQUIRE(rep.rows[0].P.size() == 2);
  // stored orders reproduce log2 of stored differences exactly
  for (const auto& row : rep.rows)
    for (int c = 0; c < 2; ++c)
      CHECK(row.P[c] == std::log2(row.D[c] / row.D[c + 1]));
  // uniform row is the columnwise max
  for (int c = 0; c < 3; ++c)
    CHECK(rep.uniform.D[c] == std::max(rep.rows[0].D[c], rep.rows[1].D[c]));
  // uniform differences decrease in N (trivially here, asserted for shape)
  CHECK(rep.uniform.D[0] > rep.uniform.D[1]);
  CHECK(rep.uniform.D[1] > rep.uniform.D[2]);
  CHECK(rep.time_mesh == "uniform");
  CHECK(rep.m_rule == "M = N");
}

TEST_CASE("serial and OpenMP sweeps agree bit for bit") {
  SweepOptions serial;
  serial.N_list = {16, 32};
  serial.eps_set = {1.0, std::ldexp(1.0, -10), std::ldexp(1.0, -20)};
  serial.subtract_singular = true;
  serial.mode = ExecMode::serial;
  SweepOptions parallel = serial;
  parallel.mode = ExecMode::openmp;
  const ProblemSpec p = builtin_example(2);
  const ConvergenceReport a = sweep(p, serial);
  const ConvergenceReport b = sweep(p, parallel);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t e = 0; e < a.rows.size(); ++e)
    for (std::size_t c = 0; c < a.rows[e].D.size(); ++c) {
      CHECK(a.rows[e].D[c] == b.rows[e].D[c]);
      if (c < a.rows[e].P.size()) CHECK(a.rows[e].P[c] == b.rows[e].P[c]);
    }
}

TEST_CASE("interaction mesh engages for example 3") {
  SweepOptions opt;
  opt.N_list = {16, 32};
  opt.eps_set = {std::ldexp(1.0, -8)};
  opt.subtract_singular = true;
  const ConvergenceReport rep = sweep(builtin_example(3), opt);
  CHECK(rep.time_mesh == "interaction");
  CHECK(rep.uniform.D[0] > rep.uniform.D[1]);
}

TEST_CASE("solver failures propagate annotated with (N, M, eps)") {
  ProblemSpec p = linear_problem(0.25);
  p.f = Fn2(std::function<double(double, double)>(
      [](double x, double) { return x > 0.5 ? std::nan("") : 0.0; }));
  CHECK_THROWS_WITH_AS(two_mesh_difference(p, 16, 16, false),
                       doctest::Contains("two_mesh_difference(N=16"),
                       std::runtime_error);
}

TEST_CASE("sweep input validation") {
  SweepOptions opt;
  opt.N_list = {32, 16};
  opt.eps_set = {0.5};
  CHECK_THROWS_AS(sweep(builtin_example(1), opt), std::invalid_argument);
  opt.N_list = {16};
  opt.eps_set = {};
  CHECK_THROWS_AS(sweep(builtin_example(1), opt), std::invalid_argument);
}

TEST_CASE("eps sets") {
  const auto sub = table_eps_subset();
  REQUIRE(sub.size() == 6);
  CHECK(sub.front() == 1.0);
  CHECK(sub.back() == std::ldexp(1.0, -30));
  const auto full = full_eps_sweep();
  REQUIRE(full.size() == 31);
  CHECK(full[1] == 0.5);
}
