#pragma once

namespace cdl::specfun {

inline constexpr double two_over_sqrt_pi = 1.1283791670955126;
inline constexpr double inv_sqrt_pi = 0.5641895835477563;

// Iterated integrals of the complementary error function:
//   erfc_{-1}(x) = (2/sqrt(pi)) exp(-x^2),   erfc_0 = erfc,
//   erfc_n(x)    = int_x^inf erfc_{n-1}(s) ds,  n >= 1.
// For n >= 1 and 0 <= x < 1 the rearranged three-term recurrence
//   erfc_n = (erfc_{n-2}/2 - x erfc_{n-1}) / n
// is used; for x >= 1 the scaled family below is unscaled, and negative
// arguments go through the Hermite reflection identity.
double erfc_iter(int n, double x);

// Scaled family H_n(r) = exp(r^2) erfc_n(r), r >= 0, free of overflow for
// arbitrarily large r. H_{-1} = 2/sqrt(pi) and H_0 is the Mill's ratio.
double scaled_erfc_iter(int n, double r);

// Mill's ratio H(r) = exp(r^2) erfc(r), r >= 0. Direct evaluation while the
// exponent stays below 300; beyond that the 5-term partial sum of the
// large-r asymptotic series is used.
double mills_ratio(double r);

struct LayerKernelArgs {
  double x;
  double t;            // > 0
  double d_of_t;       // characteristic position d(t)
  double eps;          // in (0, 1]
  double gamma = 1.0;  // damping, in (0, 1]
};

// Interior-layer kernel E_gamma(x,t) = exp(-gamma (x - d(t))^2 / (4 eps t)).
double layer_kernel(const LayerKernelArgs& args);

// Physicists' Hermite polynomial H_n(x) by the three-term recurrence; n <= 10.
double hermite_eval(int n, double x);

// G_n(y) = i^{-n} H_n(i y): the real polynomial appearing in the reflection
// identity (-1)^n erfc_n(x) + erfc_n(-x) = G_n(x) / (2^{n-1} n!).
double hermite_imag_arg(int n, double y);

}  // namespace cdl::specfun
