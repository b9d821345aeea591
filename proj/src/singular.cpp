#include "cdl/singular.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "cdl/specfun.hpp"

namespace cdl {

namespace {

constexpr int kMaxOrder = 6;

// (-1)^n 2^{n-1} n! for n = 0..6
constexpr double kPsiCoef[kMaxOrder + 1] = {0.5,    -1.0,  4.0,    -24.0,
                                            192.0,  -1920.0, 23040.0};

double pow_int(double v, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= v;
  return r;
}

void check_order(int n) {
  if (n < -1 || n > kMaxOrder)
    throw std::domain_error("psi: order must be in [-1, 6]");
}

}  // namespace

namespace singular_detail {

double psi_minus(int n, double x, double t, double eps, double d) {
  const double root = std::sqrt(eps * t);
  const double chi = (x - d) / (2.0 * root);
  if (n == -1)
    return -std::exp(-chi * chi) / (2.0 * std::sqrt(eps * M_PI * t));
  return kPsiCoef[n] * pow_int(root, n) * specfun::erfc_iter(n, chi);
}

double psi_plus(int n, double x, double t, double eps, double d) {
  const double root = std::sqrt(eps * t);
  const double chi_m = (x - d) / (2.0 * root);
  const double chi_p = (x + d) / (2.0 * root);
  if (n == -1)
    return -std::exp(-chi_m * chi_m) / (2.0 * std::sqrt(eps * M_PI * t));
  if (chi_p < 0.0) {
    // only reachable off-domain (x < -d); the exponential cannot overflow
    return kPsiCoef[n] * pow_int(root, n) * std::exp(x * d / (eps * t)) *
           specfun::erfc_iter(n, chi_p);
  }
  // exp(x d/(eps t)) erfc_n(chi+) = E(x,t) H_n(chi+), since chi+^2 - chi-^2
  // equals x d/(eps t)
  const double kernel = std::exp(-chi_m * chi_m);
  return kPsiCoef[n] * pow_int(root, n) * kernel *
         specfun::scaled_erfc_iter(n, chi_p);
}

}  // namespace singular_detail

SingularBasisContext::SingularBasisContext(const ProblemSpec& p,
                                           const CharacteristicData& cd)
    : problem(&p), chardata(&cd), a00(p.a(0.0, 0.0)) {
  if (!p.a_is_time_only)
    throw std::invalid_argument(
        "SingularBasisContext: requires a time-only coefficient a = a(t)");
  if (!(a00 > 0.0))
    throw std::invalid_argument("SingularBasisContext: a(0,0) must be positive");
}

double psi(const SingularBasisContext& ctx, Sign sign, int n, double x,
           double t) {
  check_order(n);
  if (!(t > 0.0)) throw std::domain_error("psi: t must be positive");
  const double d = ctx.chardata->d(t);
  return sign == Sign::plus
             ? singular_detail::psi_plus(n, x, t, ctx.problem->eps, d)
             : singular_detail::psi_minus(n, x, t, ctx.problem->eps, d);
}

double S_eval(const SingularBasisContext& ctx, int n, double x, double t) {
  if (n < 0 || n > kMaxOrder)
    throw std::domain_error("S_eval: order must be in [0, 6]");
  if (!(t >= 0.0)) throw std::domain_error("S_eval: t must be >= 0");
  if (t == 0.0) {
    if (x == 0.0 && n == 0)
      throw std::domain_error("S_eval: S_0 is undefined at the corner (0,0)");
    return 0.0;  // limit value for x > 0 (and for n >= 1 at x = 0)
  }
  const double d = ctx.chardata->d(t);
  const double eps = ctx.problem->eps;
  const double plus = singular_detail::psi_plus(n, x, t, eps, d);
  const double minus = singular_detail::psi_minus(n, x, t, eps, d);
  const double signed_minus = (n % 2 == 0) ? minus : -minus;
  return (plus + signed_minus) / pow_int(ctx.a00, n);
}

double modified_rhs(const SingularBasisContext& ctx, double x, double t) {
  if (!(t > 0.0)) throw std::domain_error("modified_rhs: t must be positive");
  const double fval = ctx.problem->f(x, t);
  const double A0 = ctx.chardata->A0;
  if (A0 == 0.0) return fval;
  const double eps = ctx.problem->eps;
  const double d = ctx.chardata->d(t);
  const double pt = t * ctx.problem->a(d, t) - d;
  const double factor = pt / (eps * t * t);
  return fval - A0 * factor * singular_detail::psi_plus(1, x, t, eps, d);
}

double modified_boundary(const SingularBasisContext& ctx, Side side, double t) {
  const double A0 = ctx.chardata->A0;
  if (side == Side::left) return ctx.problem->gL(0.0, t) - A0;
  return ctx.problem->gR(0.0, t) - A0 * S_eval(ctx, 0, 1.0, t);
}

// ---------------------------------------------------------------------------
// Empirical bound-constant diagnostics
// ---------------------------------------------------------------------------

namespace {

enum class Target { S0, S1, S2, Psi0Plus, Psi1Amp, Psi2Amp, BoundG };

struct PointCtx {
  double x, t, eps, d, Eg, E;
};

struct BoundDef {
  const char* id;
  Target target;
  int dx, dt;  // derivative orders; 0/0 means amplitude
  std::function<double(const PointCtx&)> expr;
};

std::vector<BoundDef> bound_set() {
  auto rt = [](double a) { return std::sqrt(a); };
  std::vector<BoundDef> defs;
  // derivative bounds on S_0
  defs.push_back({"s0.abs", Target::S0, 0, 0, [](const PointCtx&) { return 1.0; }});
  defs.push_back({"s0.dt1", Target::S0, 0, 1, [rt](const PointCtx& c) {
                    return (1.0 / c.t) * (1.0 + rt(c.t / c.eps)) * c.Eg;
                  }});
  defs.push_back({"s0.dt2", Target::S0, 0, 2, [rt](const PointCtx& c) {
                    const double b = (1.0 / c.t) * (1.0 + rt(c.t / c.eps));
                    return b * b * c.Eg;
                  }});
  defs.push_back({"s0.dx1", Target::S0, 1, 0, [rt](const PointCtx& c) {
                    return (c.eps / c.t + rt(c.eps / c.t)) / c.eps * c.Eg;
                  }});
  defs.push_back({"s0.dx2", Target::S0, 2, 0, [](const PointCtx& c) {
                    return 2.0 * (c.eps / c.t) / (c.eps * c.eps) * c.Eg;
                  }});
  defs.push_back({"s0.dx3", Target::S0, 3, 0, [rt](const PointCtx& c) {
                    const double r = c.eps / c.t;
                    return (r + r * rt(r)) / (c.eps * c.eps * c.eps) * c.Eg;
                  }});
  // derivative bounds on S_1
  defs.push_back({"s1.abs", Target::S1, 0, 0, [](const PointCtx&) { return 1.0; }});
  defs.push_back({"s1.dt1", Target::S1, 0, 1, [](const PointCtx&) { return 1.0; }});
  defs.push_back({"s1.dt2", Target::S1, 0, 2, [rt](const PointCtx& c) {
                    return (1.0 / c.t) * (1.0 + rt(c.t / c.eps)) * c.Eg + 1.0;
                  }});
  defs.push_back({"s1.dx1", Target::S1, 1, 0, [](const PointCtx&) { return 1.0; }});
  defs.push_back({"s1.dx2", Target::S1, 2, 0, [](const PointCtx& c) {
                    return c.Eg / c.eps + 1.0;
                  }});
  defs.push_back({"s1.dx3", Target::S1, 3, 0, [rt](const PointCtx& c) {
                    return c.Eg / (c.eps * rt(c.eps * c.t)) + 1.0;
                  }});
  // derivative bounds on S_2
  defs.push_back({"s2.abs", Target::S2, 0, 0, [](const PointCtx&) { return 1.0; }});
  defs.push_back({"s2.dt1", Target::S2, 0, 1, [](const PointCtx&) { return 1.0; }});
  defs.push_back({"s2.dx1", Target::S2, 1, 0, [](const PointCtx&) { return 1.0; }});
  defs.push_back({"s2.dt2", Target::S2, 0, 2, [rt](const PointCtx& c) {
                    return (1.0 + c.eps / c.t) * (1.0 + rt(c.t / c.eps)) * c.Eg +
                           1.0;
                  }});
  // the space bounds on S_2 inherit the "+ C" of the psi_j^- derivative
  // bounds they are assembled from (away from the layer d2/dx2 S_2 -> 2)
  defs.push_back({"s2.dx2", Target::S2, 2, 0, [rt](const PointCtx& c) {
                    return (1.0 + rt(c.t / c.eps)) * c.Eg + 1.0;
                  }});
  defs.push_back({"s2.dx3", Target::S2, 3, 0, [rt](const PointCtx& c) {
                    return (1.0 + rt(c.t / c.eps) + rt(c.eps / c.t)) / c.eps *
                               c.Eg +
                           1.0;
                  }});
  // derivative bounds on psi_0^+
  defs.push_back({"psi0p.abs", Target::Psi0Plus, 0, 0, [rt](const PointCtx& c) {
                    return std::min(1.0, rt(c.eps * c.t) / (c.x + c.d)) * c.E;
                  }});
  defs.push_back({"psi0p.dt1", Target::Psi0Plus, 0, 1, [](const PointCtx& c) {
                    return c.Eg / c.t;
                  }});
  defs.push_back({"psi0p.dt2", Target::Psi0Plus, 0, 2, [rt](const PointCtx& c) {
                    return (1.0 + rt(c.t / c.eps)) / (c.t * c.t) * c.Eg;
                  }});
  defs.push_back({"psi0p.dx1", Target::Psi0Plus, 1, 0, [](const PointCtx& c) {
                    return c.Eg / (c.x + c.d);
                  }});
  defs.push_back({"psi0p.dx2", Target::Psi0Plus, 2, 0, [](const PointCtx& c) {
                    return c.Eg / (c.eps * c.t);
                  }});
  defs.push_back({"psi0p.dx3", Target::Psi0Plus, 3, 0, [rt](const PointCtx& c) {
                    return (1.0 + rt(c.eps / c.t)) / (c.eps * c.eps * c.t) * c.Eg;
                  }});
  // amplitude bounds on psi_1^+, psi_2^+
  defs.push_back({"psi1p.abs", Target::Psi1Amp, 0, 0, [rt](const PointCtx& c) {
                    return rt(c.eps * c.t) * std::min(1.0, rt(c.eps / c.t)) * c.E;
                  }});
  defs.push_back({"psi2p.abs", Target::Psi2Amp, 0, 0, [rt](const PointCtx& c) {
                    return (c.eps * c.t) * std::min(1.0, rt(c.eps / c.t)) * c.E;
                  }});
  // scaled erfc_1 bound
  defs.push_back({"boundg", Target::BoundG, 0, 0, [rt](const PointCtx& c) {
                    return c.E / (c.x + c.d) *
                           std::min(1.0, rt(c.eps * c.t) / (c.x + c.d));
                  }});
  return defs;
}

// central differences with one Richardson step (h and h/2)
template <typename F>
double fd_derivative(F&& f, double v0, int order, double h) {
  auto stencil = [&](double hh) {
    switch (order) {
      case 1:
        return (f(v0 + hh) - f(v0 - hh)) / (2.0 * hh);
      case 2:
        return (f(v0 + hh) - 2.0 * f(v0) + f(v0 - hh)) / (hh * hh);
      default:
        return (f(v0 + 2 * hh) - 2.0 * f(v0 + hh) + 2.0 * f(v0 - hh) -
                f(v0 - 2 * hh)) /
               (2.0 * hh * hh * hh);
    }
  };
  const double coarse = stencil(h);
  const double fine = stencil(h / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

std::vector<BoundDiagnosticRow> bound_diagnostics(const ProblemSpec& base,
                                                  std::span<const double> eps_set,
                                                  int nx, int nt) {
  const auto defs = bound_set();
  std::vector<BoundDiagnosticRow> rows;
  // reach down to t ~ eps so the maximisers of the mixed eps/t envelopes are
  // sampled at every eps; 1e-6 is the floor the derivatives tolerate
  const double t_lo = 1e-6;
  const double t_hi = 0.9 * base.T;

  for (double eps : eps_set) {
    ProblemSpec p = with_eps(base, eps);
    const CharacteristicData cd = compatibility(p);
    const SingularBasisContext ctx(p, cd);
    const double gamma = ctx.gamma_diag;

    std::vector<double> cemp(defs.size(), 0.0);
    std::vector<int> skipped(defs.size(), 0);

    for (int j = 0; j < nt; ++j) {
      const double t =
          t_lo * std::pow(t_hi / t_lo, static_cast<double>(j) / (nt - 1));
      const double d = cd.d(t);
      const double root = std::sqrt(eps * t);

      std::vector<double> xs;
      for (int i = 1; i < nx; ++i) xs.push_back(static_cast<double>(i) / nx);
      for (double c : {-8.0, -6.0, -4.0, -3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0,
                       2.0, 3.0, 4.0, 6.0, 8.0})
        xs.push_back(d + c * root);

      for (double x : xs) {
        const double hx = std::min(0.1 * root, 0.01);
        if (x < 4.0 * hx || x > 1.0 - 4.0 * hx) continue;
        // the time step must also resolve the layer passing through x
        // (the layer advects a distance ~ a ht during the stencil)
        const double ht = std::min(0.05 * t, 0.2 * root);
        const double chi_m = (x - d) / (2.0 * root);
        const PointCtx pc{x,   t,   eps, d,
                          std::exp(-gamma * chi_m * chi_m),
                          std::exp(-chi_m * chi_m)};

        for (std::size_t b = 0; b < defs.size(); ++b) {
          const BoundDef& def = defs[b];
          double val = 0.0;
          double center = 0.0;  // local magnitude, scales the FD noise floor
          switch (def.target) {
            case Target::S0:
            case Target::S1:
            case Target::S2: {
              const int n = def.target == Target::S0   ? 0
                            : def.target == Target::S1 ? 1
                                                       : 2;
              center = S_eval(ctx, n, x, t);
              if (def.dx == 0 && def.dt == 0)
                val = center;
              else if (def.dx > 0)
                val = fd_derivative(
                    [&](double xx) { return S_eval(ctx, n, xx, t); }, x, def.dx,
                    hx);
              else
                val = fd_derivative(
                    [&](double tt) { return S_eval(ctx, n, x, tt); }, t, def.dt,
                    ht);
              break;
            }
            case Target::Psi0Plus:
              center = singular_detail::psi_plus(0, x, t, eps, d);
              if (def.dx == 0 && def.dt == 0)
                val = center;
              else if (def.dx > 0)
                val = fd_derivative(
                    [&](double xx) {
                      return singular_detail::psi_plus(0, xx, t, eps, d);
                    },
                    x, def.dx, hx);
              else
                val = fd_derivative(
                    [&](double tt) {
                      return singular_detail::psi_plus(0, x, tt, eps,
                                                       cd.d(tt));
                    },
                    t, def.dt, ht);
              break;
            case Target::Psi1Amp:
              val = singular_detail::psi_plus(1, x, t, eps, d);
              break;
            case Target::Psi2Amp:
              val = singular_detail::psi_plus(2, x, t, eps, d);
              break;
            case Target::BoundG: {
              const double chi_p = (x + d) / (2.0 * root);
              val = pc.E * specfun::scaled_erfc_iter(1, chi_p) / root;
              break;
            }
          }
          const double e = def.expr(pc);
          // points where the bound envelope sits below the finite-difference
          // noise floor cannot be certified and never carry the sup; the
          // roundoff noise scales with the local function magnitude
          double floor = 1e-290;
          const double scale = std::abs(center) + std::abs(val) * 1e-6 + 1e-280;
          if (def.dx > 0)
            floor = 3e-12 * scale / std::pow(hx, def.dx);
          else if (def.dt > 0)
            floor = 3e-12 * scale / std::pow(ht, def.dt);
          if (!(e > floor) || !std::isfinite(e)) {
            ++skipped[b];
            continue;
          }
          cemp[b] = std::max(cemp[b], std::abs(val) / e);
        }
      }
    }
    for (std::size_t b = 0; b < defs.size(); ++b)
      rows.push_back({defs[b].id, eps, cemp[b], skipped[b]});
  }
  return rows;
}

}  // namespace cdl
