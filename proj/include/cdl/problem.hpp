#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "cdl/poly.hpp"

namespace cdl {

// Scalar field of (x, t). Polynomial-backed instances carry exact partial
// derivatives; opaque callables fall back to central differences with step
// 1e-4 and are reported as estimated.
class Fn2 {
 public:
  Fn2() : poly_(Poly2{}) {}
  Fn2(Poly2 p) : poly_(std::move(p)) {}
  Fn2(std::function<double(double, double)> f) : fn_(std::move(f)) {}

  double operator()(double x, double t) const {
    return poly_ ? (*poly_)(x, t) : fn_(x, t);
  }
  // d^{dx+dt} / dx^{dx} dt^{dt}; the finite-difference path supports only
  // pure derivatives (dx == 0 or dt == 0) up to order four.
  double derivative(int dx, int dt, double x, double t) const;

  bool analytic() const { return poly_.has_value(); }
  const Poly2* poly() const { return poly_ ? &*poly_ : nullptr; }

 private:
  std::optional<Poly2> poly_;
  std::function<double(double, double)> fn_;
};

struct ProblemSpec {
  Fn2 a;    // convective coefficient, a >= alpha > 0 on the closed domain
  Fn2 f;    // source term
  Fn2 phi;  // initial data phi(x)
  Fn2 gL;   // left boundary data gL(t)
  Fn2 gR;   // right boundary data gR(t)
  double eps = 1.0;    // singular perturbation parameter, in (0, 1]
  double alpha = 1.0;  // lower bound on a used by the mesh
  double T = 1.0;      // final time
  bool a_is_time_only = false;
  std::optional<Fn2> closed_form_d;  // antiderivative of a(t) when known
  std::string name = "problem";
  // analytic corner-derivative overrides from config files
  // (keys: phi2_0, phi3_0, phi4_0, gL1_0)
  std::map<std::string, double> corner_overrides;
  double min_a_on_grid = 0.0;  // filled by validate()
};

// Sampling-grid positivity check for a plus basic parameter validation.
// Throws std::invalid_argument naming the offending quantity (and sample
// point for a <= 0). A dip of a below alpha is recorded, not rejected.
void validate(ProblemSpec& p);

// Returns a copy with a different perturbation parameter.
ProblemSpec with_eps(ProblemSpec p, double eps);

// The five built-in test problems; k in 1..5.
ProblemSpec builtin_example(int k);

struct CharacteristicData {
  std::function<double(double)> d;  // characteristic position, d(0) = 0
  std::function<double(double)> p;  // drift defect t a(d(t),t) - d(t)
  std::optional<double> Tstar;      // solves d(T*) = 1 when reached
  double A0 = 0.0;                  // gL(0) - phi(0)
  double A1 = 0.0;                  // first-level compatibility constant
  double A2 = 0.0;                  // second-level constant (diagnostic)
  bool derivatives_estimated = false;
  // right-endpoint compatibility residuals, informational
  double c1r_value_residual = 0.0;  // gR(0) - phi(1)
  double c1r_flux_residual = 0.0;
  double c2r_residual = 0.0;
};

// d(t) via the closed form when supplied, else classic fourth-order
// integration of d' = a(d, t) on a dense table (step <= T/1e5) with cubic
// Hermite evaluation between table nodes.
double characteristic_d(const ProblemSpec& p, double t);

// p(t) = t a(d(t), t) - d(t); identically zero for constant a.
double drift_defect_p(const ProblemSpec& p, double t);

// Absent when d(T) < 1, else the bisection solution of d(T*) = 1 to 1e-12.
std::optional<double> exit_time(const ProblemSpec& p);

// Compatibility constants A0, A1, A2, right-endpoint residuals, exit time,
// and the characteristic/drift functions bundled for downstream use.
CharacteristicData compatibility(const ProblemSpec& p);

}  // namespace cdl
