#pragma once

#include <span>
#include <string>
#include <vector>

#include "cdl/problem.hpp"

namespace cdl {

enum class Sign { plus, minus };
enum class Side { left, right };

// Evaluation context for the singular basis psi_n^{+-} and S_n. Requires a
// time-only convective coefficient (the basis is built on d(t) for a = a(t)).
struct SingularBasisContext {
  const ProblemSpec* problem;
  const CharacteristicData* chardata;
  double a00;
  double gamma_diag = 0.9;

  SingularBasisContext(const ProblemSpec& p, const CharacteristicData& cd);
};

// psi_n^{+-}(x, t) for n in [-1, 6], t > 0. The plus branch is evaluated
// through the scaled kernel E(x,t) H_n(chi+) so that the exponential factor
// exp(x d / (eps t)) never materialises.
double psi(const SingularBasisContext& ctx, Sign sign, int n, double x,
           double t);

// S_n(x,t) = (psi_n^+ + (-1)^n psi_n^-) / a(0,0)^n, with the limit values
// S_n(x, 0) = 0 for x > 0. S_0 is undefined at the corner (0,0).
double S_eval(const SingularBasisContext& ctx, int n, double x, double t);

// f(x,t) - A0 L S_0 = f - A0 p(t) psi_1^+ / (eps t^2); plain f when A0 = 0.
double modified_rhs(const SingularBasisContext& ctx, double x, double t);

// Boundary data of the subtracted problem: gL(t) - A0 on the left and
// gR(t) - A0 S_0(1, t) on the right.
double modified_boundary(const SingularBasisContext& ctx, Side side, double t);

namespace singular_detail {
// Scalar-argument kernels shared with the solver's per-row hot loop.
double psi_plus(int n, double x, double t, double eps, double d);
double psi_minus(int n, double x, double t, double eps, double d);
}  // namespace singular_detail

struct BoundDiagnosticRow {
  std::string bound_id;
  double eps;
  double c_emp;  // sup over the grid of |derivative| / bound expression
  int skipped;   // sample points dropped for a vanishing bound expression
};

// Empirical-constant sweep for the derivative bounds on S_0, S_1, S_2 and
// psi_0^+ (plus the amplitude bounds on psi_1^+, psi_2^+ and the scaled
// erfc_1 bound). Derivatives are central differences with Richardson
// extrapolation on a per-eps grid of nx-by-nt points that tracks the layer
// location; times below 1e-3 T are not sampled.
std::vector<BoundDiagnosticRow> bound_diagnostics(const ProblemSpec& base,
                                                  std::span<const double> eps_set,
                                                  int nx, int nt);

}  // namespace cdl
