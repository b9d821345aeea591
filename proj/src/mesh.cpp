#include "cdl/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdl {

double shishkin_sigma(int N, double eps, double alpha) {
  return std::min(0.5, eps / alpha * std::log(static_cast<double>(N)));
}

std::vector<double> shishkin_space(int N, double eps, double alpha) {
  if (N < 4 || N % 2 != 0)
    throw std::domain_error("shishkin_space: N must be even and >= 4");
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::domain_error("shishkin_space: eps must be in (0, 1]");
  if (!(alpha > 0.0))
    throw std::domain_error("shishkin_space: alpha must be positive");
  const double sigma = shishkin_sigma(N, eps, alpha);
  const int half = N / 2;
  std::vector<double> xs(N + 1);
  for (int i = 0; i <= half; ++i)
    xs[i] = (1.0 - sigma) * (static_cast<double>(i) / half);
  xs[half] = 1.0 - sigma;  // transition point is a node, exactly
  for (int i = 1; i <= half; ++i)
    xs[half + i] = (1.0 - sigma) + sigma * (static_cast<double>(i) / half);
  xs[N] = 1.0;
  return xs;
}

std::vector<double> time_mesh(int M, double T, std::optional<double> Tstar,
                              double eps) {
  if (M < 4 || M % 2 != 0)
    throw std::domain_error("time_mesh: M must be even and >= 4");
  if (!(T > 0.0)) throw std::domain_error("time_mesh: T must be positive");
  std::vector<double> ts;
  if (!Tstar) {
    ts.resize(M + 1);
    for (int j = 0; j <= M; ++j) ts[j] = T * (static_cast<double>(j) / M);
    ts[M] = T;
    return ts;
  }
  if (!(*Tstar > 0.0 && *Tstar < T))
    throw std::domain_error("time_mesh: Tstar must lie in (0, T)");
  if (M % 4 != 0)
    throw std::domain_error("time_mesh: interaction mesh needs M divisible by 4");
  const double tstar = *Tstar;
  const double tau = std::min({tstar / 2.0, (T - tstar) / 2.0,
                               std::sqrt(eps) * std::log(static_cast<double>(M))});
  const int q = M / 4;
  ts.reserve(M + 1);
  const double b0 = tstar - tau, b1 = tstar + tau;
  for (int j = 0; j < q; ++j) ts.push_back(b0 * (static_cast<double>(j) / q));
  for (int j = 0; j < 2 * q; ++j)
    ts.push_back(b0 + (b1 - b0) * (static_cast<double>(j) / (2 * q)));
  for (int j = 0; j < q; ++j)
    ts.push_back(b1 + (T - b1) * (static_cast<double>(j) / q));
  ts.push_back(T);
  return ts;
}

TensorMesh make_tensor_mesh(int N, int M, double eps, double alpha, double T,
                            std::optional<double> Tstar) {
  TensorMesh m;
  m.xs = shishkin_space(N, eps, alpha);
  m.sigma = shishkin_sigma(N, eps, alpha);
  m.ts = time_mesh(M, T, Tstar, eps);
  if (Tstar) {
    m.time_kind = TensorMesh::TimeKind::interaction;
    m.Tstar = *Tstar;
    m.tau = std::min({*Tstar / 2.0, (T - *Tstar) / 2.0,
                      std::sqrt(eps) * std::log(static_cast<double>(M))});
  }
  return m;
}

}  // namespace cdl
