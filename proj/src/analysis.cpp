#include "cdl/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cdl/mesh.hpp"
#include "cdl/solver.hpp"

namespace cdl {

namespace {

// max_{nodes of probe} |coarse interpolant - fine interpolant|
double node_max_diff(const GridFunction& probe, const GridFunction& other,
                     bool parallel) {
  const TensorMesh& m = *probe.mesh;
  const int N = m.N(), M = m.M();
  double best = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : best) schedule(static) if (parallel)
#endif
  for (int j = 0; j <= M; ++j) {
    for (int i = 0; i <= N; ++i) {
      const double diff =
          std::abs(probe.at(i, j) - bilinear_eval(other, m.xs[i], m.ts[j]));
      best = std::max(best, diff);
    }
  }
#ifndef _OPENMP
  (void)parallel;
#endif
  return best;
}

std::optional<double> interaction_tstar(const ProblemSpec& p,
                                        const CharacteristicData& cd) {
  return p.a_is_time_only ? cd.Tstar : std::nullopt;
}

}  // namespace

double order_from(double dN, double d2N) {
  if (!(dN > 0.0) || !(d2N > 0.0))
    throw std::domain_error("order_from: differences must be positive");
  return std::log2(dN / d2N);
}

double two_mesh_difference(const ProblemSpec& p, int N, int M,
                           bool subtract_singular, ExecMode mode) {
  try {
    const CharacteristicData cd = compatibility(p);
    const auto tstar = interaction_tstar(p, cd);
    const bool parallel = mode == ExecMode::openmp;

    auto coarse_mesh = std::make_shared<const TensorMesh>(
        make_tensor_mesh(N, M, p.eps, p.alpha, p.T, tstar));
    auto fine_mesh = std::make_shared<const TensorMesh>(
        make_tensor_mesh(2 * N, 2 * M, p.eps, p.alpha, p.T, tstar));

    const GridFunction coarse = solve(p, coarse_mesh, subtract_singular, &cd);
    const GridFunction fine = solve(p, fine_mesh, subtract_singular, &cd);

    return std::max(node_max_diff(coarse, fine, parallel),
                    node_max_diff(fine, coarse, parallel));
  } catch (const std::exception& e) {
    throw std::runtime_error("two_mesh_difference(N=" + std::to_string(N) +
                             ", M=" + std::to_string(M) +
                             ", eps=" + std::to_string(p.eps) + "): " +
                             e.what());
  }
}

ConvergenceReport sweep(const ProblemSpec& p, const SweepOptions& opt) {
  if (opt.N_list.empty()) throw std::invalid_argument("sweep: empty N list");
  for (std::size_t k = 1; k < opt.N_list.size(); ++k)
    if (opt.N_list[k] <= opt.N_list[k - 1])
      throw std::invalid_argument("sweep: N list must be ascending");
  if (opt.eps_set.empty()) throw std::invalid_argument("sweep: empty eps set");

  const int cols = static_cast<int>(opt.N_list.size());
  const int eps_count = static_cast<int>(opt.eps_set.size());

  ConvergenceReport rep;
  rep.example_id = p.name;
  rep.N_list = opt.N_list;
  rep.m_rule = opt.M_factor == 1 ? "M = N" : "M = " + std::to_string(opt.M_factor) + "N";
  {
    const CharacteristicData cd = compatibility(p);
    rep.time_mesh = interaction_tstar(p, cd) ? "interaction" : "uniform";
  }

  std::vector<double> D(static_cast<std::size_t>(eps_count) * cols, 0.0);
  std::vector<std::string> errors(static_cast<std::size_t>(eps_count) * cols);

  const int tasks = eps_count * cols;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opt.mode == ExecMode::openmp)
#endif
  for (int task = 0; task < tasks; ++task) {
    const int e = task / cols;
    const int c = task % cols;
    try {
      const ProblemSpec pe = with_eps(p, opt.eps_set[e]);
      const int N = opt.N_list[c];
      D[task] = two_mesh_difference(pe, N, opt.M_factor * N,
                                    opt.subtract_singular, opt.mode);
    } catch (const std::exception& ex) {
      errors[task] = ex.what();
    }
  }
  for (const std::string& err : errors)
    if (!err.empty()) throw std::runtime_error("sweep: " + err);

  for (int e = 0; e < eps_count; ++e) {
    ConvergenceRow row;
    row.eps = opt.eps_set[e];
    row.D.assign(D.begin() + static_cast<std::size_t>(e) * cols,
                 D.begin() + static_cast<std::size_t>(e + 1) * cols);
    for (int c = 0; c + 1 < cols; ++c)
      row.P.push_back(order_from(row.D[c], row.D[c + 1]));
    rep.rows.push_back(std::move(row));
  }

  rep.uniform.eps = std::numeric_limits<double>::quiet_NaN();
  for (int c = 0; c < cols; ++c) {
    double worst = 0.0;
    for (int e = 0; e < eps_count; ++e)
      worst = std::max(worst, D[static_cast<std::size_t>(e) * cols + c]);
    rep.uniform.D.push_back(worst);
  }
  for (int c = 0; c + 1 < cols; ++c)
    rep.uniform.P.push_back(order_from(rep.uniform.D[c], rep.uniform.D[c + 1]));
  return rep;
}

std::vector<double> table_eps_subset() {
  std::vector<double> out;
  for (int k = 0; k <= 30; k += 6) out.push_back(std::ldexp(1.0, -k));
  return out;
}

std::vector<double> full_eps_sweep() {
  std::vector<double> out;
  for (int k = 0; k <= 30; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

}  // namespace cdl
