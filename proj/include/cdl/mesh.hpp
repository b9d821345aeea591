#pragma once

#include <optional>
#include <vector>

namespace cdl {

struct TensorMesh {
  enum class TimeKind { uniform, interaction };

  std::vector<double> xs;  // 0 = x_0 < ... < x_N = 1
  std::vector<double> ts;  // 0 = t_0 < ... < t_M = T
  double sigma = 0.0;      // spatial transition parameter
  TimeKind time_kind = TimeKind::uniform;
  double Tstar = 0.0;  // interaction meshes only
  double tau = 0.0;

  int N() const { return static_cast<int>(xs.size()) - 1; }
  int M() const { return static_cast<int>(ts.size()) - 1; }
  double h(int i) const { return xs[i] - xs[i - 1]; }  // i in 1..N
  double k(int j) const { return ts[j] - ts[j - 1]; }  // j in 1..M
};

// sigma = min{0.5, (eps/alpha) ln N}
double shishkin_sigma(int N, double eps, double alpha);

// Piecewise-uniform mesh condensing N/2 intervals into [1-sigma, 1].
// N must be even and >= 4.
std::vector<double> shishkin_space(int N, double eps, double alpha);

// Uniform time mesh t_j = jT/M; with Tstar present, a piecewise-uniform mesh
// on [0, T*-tau] / [T*-tau, T*+tau] / [T*+tau, T] in the ratio M/4:M/2:M/4
// with tau = min{T*/2, (T-T*)/2, sqrt(eps) ln M} (M divisible by 4).
std::vector<double> time_mesh(int M, double T, std::optional<double> Tstar,
                              double eps);

TensorMesh make_tensor_mesh(int N, int M, double eps, double alpha, double T,
                            std::optional<double> Tstar);

}  // namespace cdl
