#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cdl/specfun.hpp"
#include "oracle.hpp"

using namespace cdl::specfun;

namespace {
double rel_err(double got, long double want) {
  const long double denom = std::max<long double>(1e-300L, fabsl(want));
  return static_cast<double>(fabsl((long double)got - want) / denom);
}
}  // namespace

TEST_CASE("oracle reproduces libm erfc") {
  for (double x : {-4.0, -1.3, 0.0, 0.5, 2.0, 5.0, 9.0}) {
    const long double q = oracle::erfc_n(0, x);
    CHECK(rel_err(std::erfc(x), q) < 1e-15);
  }
}

TEST_CASE("erfc_iter closed-form anchors") {
  CHECK(erfc_iter(0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(erfc_iter(1, 0.0) ==
        doctest::Approx(0.56418958354775628695).epsilon(1e-13));
  CHECK(erfc_iter(2, 0.0) == doctest::Approx(0.25).epsilon(1e-13));
  // frozen from the quadrature oracle
  CHECK(rel_err(erfc_iter(3, 0.7), 0.011029472336895863216L) < 1e-12);
  CHECK(rel_err(erfc_iter(4, -1.0), 0.39496945362488276501L) < 1e-12);
  CHECK(rel_err(erfc_iter(5, 3.0), 1.250008435807694835e-9L) < 1e-12);
  CHECK(rel_err(erfc_iter(6, -2.5), 1.6924913130793804973L) < 1e-12);
  CHECK(rel_err(erfc_iter(2, 6.0), 1.4000911571543999513e-19L) < 1e-12);
  CHECK(rel_err(erfc_iter(4, 8.0), 1.543442228002305065e-34L) < 1e-12);
}

TEST_CASE("erfc_iter matches the quadrature oracle on |x| <= 10, n <= 8") {
  for (int n = -1; n <= 8; ++n)
    for (double x : {-10.0, -6.0, -3.0, -1.0, -0.2, 0.0, 0.3,  1.0,
                     1.7,   1.99, 2.0,  2.5,  4.0,  6.0, 8.0, 10.0}) {
      const long double q = oracle::erfc_n(n, x);
      INFO("n=", n, " x=", x);
      CHECK(rel_err(erfc_iter(n, x), q) < 1e-12);
    }
}

TEST_CASE("erfc_iter domain errors") {
  CHECK_THROWS_AS(erfc_iter(-2, 0.5), std::domain_error);
  CHECK_THROWS_AS(erfc_iter(1, std::nan("")), std::domain_error);
}

TEST_CASE("scaled_erfc_iter anchors and oracle agreement") {
  CHECK(scaled_erfc_iter(0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(scaled_erfc_iter(-1, 123.0) ==
        doctest::Approx(1.1283791670955126).epsilon(1e-15));
  CHECK(rel_err(scaled_erfc_iter(1, 2.0), 0.053398230926744799218L) < 1e-12);
  CHECK(rel_err(scaled_erfc_iter(3, 5.0), 0.000094112101678411099494L) < 1e-11);
  CHECK(rel_err(scaled_erfc_iter(5, 30.0), 2.3905715476098168261e-11L) < 1e-10);
  CHECK(rel_err(scaled_erfc_iter(2, 50.0), 1.1270271393946528232e-6L) < 1e-10);
  CHECK(rel_err(scaled_erfc_iter(6, 17.0), 2.0481692669220152967e-11L) < 1e-10);
  CHECK(rel_err(scaled_erfc_iter(4, 1000.0), 3.526158450971871311e-17L) < 1e-10);

  for (int n = 1; n <= 8; ++n)
    for (double r : {0.0, 0.3, 0.9, 1.0, 1.5, 2.0, 5.0, 10.0, 20.0, 50.0}) {
      const long double q = oracle::scaled_erfc_n(n, r);
      INFO("n=", n, " r=", r);
      CHECK(rel_err(scaled_erfc_iter(n, r), q) < 1e-10);
    }
}

TEST_CASE("scaled_erfc_iter stays finite for huge arguments") {
  for (int n = 0; n <= 6; ++n)
    for (double r : {1e3, 1e4, 1e6}) {
      const double v = scaled_erfc_iter(n, r);
      CHECK(std::isfinite(v));
      CHECK(v > 0.0);
      CHECK(v < 1.0);
    }
  CHECK_THROWS_AS(scaled_erfc_iter(2, -0.1), std::domain_error);
}

TEST_CASE("scaled family is consistent with the plain family") {
  // scaled * exp(-r^2) == erfc_iter wherever the downscaling is representable
  for (int n = 0; n <= 8; ++n)
    for (double r = 0.0; r <= 25.2; r += 0.1) {
      const double down = std::exp(-r * r);
      if (down < 1e-280) continue;
      const double a = scaled_erfc_iter(n, r) * down;
      const double b = erfc_iter(n, r);
      INFO("n=", n, " r=", r);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(std::abs(b), 1e-300));
    }
}

TEST_CASE("three-term identity n erfc_n + x erfc_{n-1} = erfc_{n-2}/2") {
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k < 200; ++k) {
      const double x = -5.0 + 10.0 * k / 199.0;
      const double lhs =
          n * erfc_iter(n, x) + x * erfc_iter(n - 1, x) - 0.5 * erfc_iter(n - 2, x);
      INFO("n=", n, " x=", x);
      CHECK(std::abs(lhs) <= 1e-12 * std::max(1.0, std::abs(erfc_iter(n - 2, x))));
    }
}

TEST_CASE("Hermite reflection identity") {
  for (int n = 0; n <= 5; ++n)
    for (double x = 0.0; x <= 4.001; x += 0.25) {
      const double lhs = (n % 2 ? -1.0 : 1.0) * erfc_iter(n, x) + erfc_iter(n, -x);
      double scale = std::ldexp(1.0, n - 1);
      for (int k = 2; k <= n; ++k) scale *= k;
      const double rhs = hermite_imag_arg(n, x) / scale;
      INFO("n=", n, " x=", x);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("erfc_n decreasing on [-5, 5] for n >= 0") {
  for (int n = 0; n <= 6; ++n) {
    double prev = erfc_iter(n, -5.0);
    for (int k = 1; k <= 100; ++k) {
      const double x = -5.0 + 10.0 * k / 100.0;
      const double cur = erfc_iter(n, x);
      INFO("n=", n, " x=", x);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("mills_ratio values and asymptotic switch") {
  CHECK(mills_ratio(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rel_err(mills_ratio(1.0), 0.42758357615580700441L) < 1e-12);
  // beyond the switch the 5-term series is in force
  CHECK(rel_err(mills_ratio(20.0), 0.028174348741051319319L) < 1e-10);
  CHECK_THROWS_AS(mills_ratio(-1e-9), std::domain_error);
}

TEST_CASE("mills_ratio bracket holds strictly on (0, 50]") {
  const double spi = std::sqrt(M_PI);
  auto lo = [&](double r) {
    return 1.0 / ((M_PI - 1.0) / spi * r + std::sqrt(1.0 + r * r / M_PI));
  };
  auto hi = [&](double r) {
    return 1.0 / (2.0 / spi * r +
                  std::sqrt(1.0 + (M_PI - 2.0) * (M_PI - 2.0) * r * r / M_PI));
  };
  CHECK(std::abs(mills_ratio(0.0) - lo(0.0)) < 1e-15);  // equality at r = 0
  CHECK(std::abs(mills_ratio(0.0) - hi(0.0)) < 1e-15);
  for (int k = 1; k <= 1000; ++k) {
    const double r = 50.0 * k / 1000.0;
    const double h = mills_ratio(r);
    INFO("r=", r);
    CHECK(h > lo(r));
    CHECK(h < hi(r));
  }
}

TEST_CASE("layer kernel") {
  CHECK(layer_kernel({0.3, 0.7, 0.3, 0.125, 1.0}) == 1.0);
  const double eps = 0.25, t = 0.5, d = 0.1;
  const double x = d + 2.0 * std::sqrt(eps * t);
  CHECK(layer_kernel({x, t, d, eps, 1.0}) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(layer_kernel({0.5, 0.25, 0.25, std::ldexp(1.0, -10), 1.0}) ==
        doctest::Approx(std::exp(-64.0)).epsilon(1e-12));
  CHECK(layer_kernel({0.5, 0.25, 0.25, 1.0, 0.5}) ==
        doctest::Approx(std::exp(-0.5 * 0.0625 / 1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(layer_kernel({0.5, 0.0, 0.0, 1.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(layer_kernel({0.5, 0.5, 0.0, 1.0, 1.5}), std::domain_error);
}

TEST_CASE("hermite_eval") {
  CHECK(hermite_eval(0, 3.7) == 1.0);
  CHECK(hermite_eval(1, 0.5) == 1.0);
  CHECK(hermite_eval(4, 1.0) == doctest::Approx(-20.0).epsilon(1e-14));
  CHECK(hermite_eval(10, 0.0) == doctest::Approx(-30240.0).epsilon(1e-13));
  CHECK_THROWS_AS(hermite_eval(11, 0.0), std::domain_error);
  CHECK_THROWS_AS(hermite_eval(-1, 0.0), std::domain_error);
}

TEST_CASE("hermite_imag_arg matches coefficient sum") {
  CHECK(hermite_imag_arg(3, 2.0) == doctest::Approx(88.0).epsilon(1e-14));
  for (int n = 0; n <= 6; ++n)
    for (double y = 0.0; y <= 6.0; y += 0.5) {
      const long double want = oracle::hermite_imag_coeff_sum(n, y);
      INFO("n=", n, " y=", y);
      CHECK(rel_err(hermite_imag_arg(n, y), want) < 1e-13);
    }
}
