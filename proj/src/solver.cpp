#include "cdl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cdl {

namespace {

void thomas_solve(std::vector<double>& lower, std::vector<double>& diag,
                  std::vector<double>& upper, std::vector<double>& rhs,
                  std::vector<double>& out) {
  const int n = static_cast<int>(diag.size());
  for (int i = 1; i < n; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  out[n - 1] = rhs[n - 1] / diag[n - 1];
  for (int i = n - 2; i >= 0; --i)
    out[i] = (rhs[i] - upper[i] * out[i + 1]) / diag[i];
}

}  // namespace

GridFunction solve(const ProblemSpec& p, std::shared_ptr<const TensorMesh> mesh,
                   bool subtract_singular) {
  return solve(p, std::move(mesh), subtract_singular, nullptr);
}

GridFunction solve(const ProblemSpec& p, std::shared_ptr<const TensorMesh> mesh,
                   bool subtract_singular, const CharacteristicData* cd_in) {
  if (!mesh) throw std::invalid_argument("solve: missing mesh");
  const int N = mesh->N(), M = mesh->M();

  CharacteristicData cd_local;
  const CharacteristicData* cd = cd_in;
  if (subtract_singular) {
    if (!p.a_is_time_only)
      throw std::invalid_argument(
          "solve: subtract_singular requires a time-only coefficient a = a(t)");
    if (!cd) {
      cd_local = compatibility(p);
      cd = &cd_local;
    }
  }
  const double A0 = subtract_singular ? cd->A0 : 0.0;

  GridFunction g;
  g.mesh = mesh;
  g.values.assign(static_cast<std::size_t>(N + 1) * (M + 1), 0.0);

  // boundary data of the problem actually discretised
  auto left_bc = [&](double t) {
    return subtract_singular ? p.gL(0.0, t) - A0 : p.gL(0.0, t);
  };
  auto right_bc = [&](double t) {
    if (!subtract_singular) return p.gR(0.0, t);
    double s0 = 0.0;
    if (t > 0.0) {
      const double d = cd->d(t);
      s0 = singular_detail::psi_plus(0, 1.0, t, p.eps, d) +
           singular_detail::psi_minus(0, 1.0, t, p.eps, d);
    }
    return p.gR(0.0, t) - A0 * s0;
  };

  // initial level: interior from phi, corners from the boundary data
  for (int i = 1; i < N; ++i) g.at(i, 0) = p.phi(mesh->xs[i], 0.0);
  g.at(0, 0) = left_bc(0.0);
  g.at(N, 0) = right_bc(0.0);

  std::vector<double> lower(N - 1), diag(N - 1), upper(N - 1), rhs(N - 1),
      sol(N - 1);

  for (int j = 1; j <= M; ++j) {
    const double t = mesh->ts[j];
    const double kj = mesh->k(j);
    const double yl = left_bc(t);
    const double yr = right_bc(t);

    double d_t = 0.0, rhs_factor = 0.0;
    if (subtract_singular && A0 != 0.0) {
      d_t = cd->d(t);
      const double pt = t * p.a(d_t, t) - d_t;
      rhs_factor = A0 * pt / (p.eps * t * t);
    }

    for (int i = 1; i < N; ++i) {
      const double x = mesh->xs[i];
      const double hi = mesh->h(i), hi1 = mesh->h(i + 1);
      const double a = p.a(x, t);
      const double lo = -p.eps * 2.0 / ((hi + hi1) * hi) - a / hi;
      const double up = -p.eps * 2.0 / ((hi + hi1) * hi1);
      lower[i - 1] = lo;
      upper[i - 1] = up;
      diag[i - 1] = -(lo + up) + 1.0 / kj;
      // strict diagonal dominance (margin 1/k) holds whenever a > 0; a
      // violation means the coefficient data broke the M-matrix structure
      if (!(diag[i - 1] > std::abs(lo) + std::abs(up)))
        throw std::runtime_error(
            "solve: lost diagonal dominance at (i=" + std::to_string(i) +
            ", j=" + std::to_string(j) + "); a(x,t) must stay positive");

      double fval = p.f(x, t);
      if (rhs_factor != 0.0)
        fval -= rhs_factor * singular_detail::psi_plus(1, x, t, p.eps, d_t);
      if (!std::isfinite(fval))
        throw std::invalid_argument("solve: non-finite right-hand side at (i=" +
                                    std::to_string(i) +
                                    ", j=" + std::to_string(j) + ")");
      rhs[i - 1] = fval + g.at(i, j - 1) / kj;
    }
    rhs[0] -= lower[0] * yl;
    rhs[N - 2] -= upper[N - 2] * yr;

    thomas_solve(lower, diag, upper, rhs, sol);

    g.at(0, j) = yl;
    for (int i = 1; i < N; ++i) g.at(i, j) = sol[i - 1];
    g.at(N, j) = yr;
  }

  for (double v : g.values)
    if (!std::isfinite(v))
      throw std::runtime_error("solve: non-finite value in solution grid");
  return g;
}

double bilinear_eval(const GridFunction& g, double x, double t) {
  const TensorMesh& m = *g.mesh;
  const double T = m.ts.back();
  const double tol_x = 1e-12, tol_t = 1e-12 * std::max(1.0, T);
  if (x < -tol_x || x > 1.0 + tol_x || t < -tol_t || t > T + tol_t)
    throw std::domain_error("bilinear_eval: point outside the closed domain");
  x = std::clamp(x, 0.0, 1.0);
  t = std::clamp(t, 0.0, T);

  auto cell = [](const std::vector<double>& v, double s) {
    int i = static_cast<int>(std::upper_bound(v.begin(), v.end(), s) -
                             v.begin()) -
            1;
    return std::clamp(i, 0, static_cast<int>(v.size()) - 2);
  };
  const int i = cell(m.xs, x);
  const int j = cell(m.ts, t);
  const double lx = (x - m.xs[i]) / (m.xs[i + 1] - m.xs[i]);
  const double lt = (t - m.ts[j]) / (m.ts[j + 1] - m.ts[j]);
  return (1 - lx) * (1 - lt) * g.at(i, j) + lx * (1 - lt) * g.at(i + 1, j) +
         (1 - lx) * lt * g.at(i, j + 1) + lx * lt * g.at(i + 1, j + 1);
}

GridFunction reconstruct_U(const SingularBasisContext& ctx,
                           const GridFunction& y) {
  const TensorMesh& m = *y.mesh;
  const int N = m.N(), M = m.M();
  GridFunction u;
  u.mesh = y.mesh;
  u.values = y.values;
  const double A0 = ctx.chardata->A0;
  if (A0 == 0.0) return u;
  for (int j = 1; j <= M; ++j)
    for (int i = 0; i <= N; ++i)
      u.at(i, j) = y.at(i, j) + A0 * S_eval(ctx, 0, m.xs[i], m.ts[j]);
  for (int i = 1; i <= N; ++i) u.at(i, 0) = ctx.problem->phi(m.xs[i], 0.0);
  u.at(0, 0) = ctx.problem->gL(0.0, 0.0);  // corner kept discontinuous
  return u;
}

}  // namespace cdl
