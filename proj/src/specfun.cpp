#include "cdl/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cdl::specfun {

namespace {

// switch to the asymptotic series once the scaling exponent reaches 300,
// i.e. r >= sqrt(300)
constexpr double kMillsAsymSwitch = 17.320508075688775;

// Forward/backward split for the scaled family. Below 1 the forward
// recurrence loses no digits; above it the backward (Miller) recurrence with
// normalisation at H_0 is stable for every r.
constexpr double kScaledBackwardSwitch = 1.0;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// For k >> r^2 the two solutions of the three-term recurrence separate only
// like exp(2 r sqrt(2k)), so the Miller start index has to grow as r shrinks
// toward 1 to keep the seed contamination below roundoff.
int miller_buffer(int n, double r) {
  if (r >= 6.0) return 32;
  const double n0 = std::max(static_cast<double>(n), 2.0 * r * r);
  const double ns = 0.5 * std::pow(20.0 / r + std::sqrt(2.0 * n0), 2.0);
  return std::max(32, static_cast<int>(std::ceil(ns)) - n + 8);
}

double scaled_forward(int n, double r) {
  double prev = two_over_sqrt_pi;    // H_{-1}
  double cur = mills_ratio(r);       // H_0
  for (int k = 1; k <= n; ++k) {
    const double next = (0.5 * prev - r * cur) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Miller's backward recurrence: run H_{k-1} = 2(k+1) H_{k+1} + 2r H_k from
// trial seeds high above n down to 0, then scale so that H_0 matches the
// Mill's ratio. All terms are positive, so no cancellation occurs.
double scaled_backward(int n, double r) {
  const int n_start = n + miller_buffer(n, r);
  double above = 0.0;  // trial y_{k+1}
  double here = 1.0;   // trial y_k
  double y_n = (n == n_start) ? here : 0.0;
  for (int k = n_start; k >= 1; --k) {
    const double below = 2.0 * (k + 1) * above + 2.0 * r * here;
    above = here;
    here = below;  // now holds y_{k-1}
    if (k - 1 == n) y_n = here;
    if (here > 1e250) {  // renormalise; only ratios matter
      above *= 1e-250;
      here *= 1e-250;
      y_n *= 1e-250;
    }
  }
  return y_n * (mills_ratio(r) / here);
}

}  // namespace

double mills_ratio(double r) {
  if (!(r >= 0.0)) throw std::domain_error("mills_ratio: r must be >= 0");
  if (r < kMillsAsymSwitch) return std::exp(r * r) * std::erfc(r);
  // n = 5 partial sum of H(r) ~ (1/(r sqrt(pi))) (1 + sum (-1)^m (2m-1)!!/(2r^2)^m)
  static constexpr double odd_factorial[5] = {1.0, 3.0, 15.0, 105.0, 945.0};
  const double u = 1.0 / (2.0 * r * r);
  double power = 1.0;
  double sum = 1.0;
  for (int m = 1; m <= 5; ++m) {
    power *= u;
    sum += (m % 2 ? -1.0 : 1.0) * odd_factorial[m - 1] * power;
  }
  return inv_sqrt_pi * sum / r;
}

double scaled_erfc_iter(int n, double r) {
  if (n < -1) throw std::domain_error("scaled_erfc_iter: n must be >= -1");
  if (!(r >= 0.0)) throw std::domain_error("scaled_erfc_iter: r must be >= 0");
  if (n == -1) return two_over_sqrt_pi;
  if (n == 0) return mills_ratio(r);
  if (r < kScaledBackwardSwitch) return scaled_forward(n, r);
  return scaled_backward(n, r);
}

double erfc_iter(int n, double x) {
  if (n < -1) throw std::domain_error("erfc_iter: n must be >= -1");
  if (!std::isfinite(x)) throw std::domain_error("erfc_iter: x must be finite");
  if (n == -1) return two_over_sqrt_pi * std::exp(-x * x);
  if (n == 0) return std::erfc(x);
  if (x < 0.0) {
    const double y = -x;
    const double reflected =
        hermite_imag_arg(n, y) / (std::ldexp(1.0, n - 1) * factorial(n));
    const double tail = erfc_iter(n, y);
    return (n % 2 == 0) ? reflected - tail : reflected + tail;
  }
  if (x < kScaledBackwardSwitch) {
    double prev = two_over_sqrt_pi * std::exp(-x * x);
    double cur = std::erfc(x);
    for (int k = 1; k <= n; ++k) {
      const double next = (0.5 * prev - x * cur) / k;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  return scaled_erfc_iter(n, x) * std::exp(-x * x);
}

double layer_kernel(const LayerKernelArgs& args) {
  if (!(args.t > 0.0)) throw std::domain_error("layer_kernel: t must be > 0");
  if (!(args.eps > 0.0)) throw std::domain_error("layer_kernel: eps must be > 0");
  if (!(args.gamma > 0.0 && args.gamma <= 1.0))
    throw std::domain_error("layer_kernel: gamma must be in (0, 1]");
  const double dx = args.x - args.d_of_t;
  return std::exp(-args.gamma * dx * dx / (4.0 * args.eps * args.t));
}

double hermite_eval(int n, double x) {
  if (n < 0 || n > 10)
    throw std::domain_error("hermite_eval: n must be in [0, 10]");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_imag_arg(int n, double y) {
  if (n < 0) throw std::domain_error("hermite_imag_arg: n must be >= 0");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * y;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * y * cur + 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace cdl::specfun
