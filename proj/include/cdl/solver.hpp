#pragma once

#include <memory>

#include "cdl/mesh.hpp"
#include "cdl/problem.hpp"
#include "cdl/singular.hpp"

namespace cdl {

struct GridFunction {
  std::shared_ptr<const TensorMesh> mesh;
  std::vector<double> values;  // values[j*(N+1)+i] at (x_i, t_j)

  double at(int i, int j) const {
    return values[static_cast<std::size_t>(j) * (mesh->N() + 1) + i];
  }
  double& at(int i, int j) {
    return values[static_cast<std::size_t>(j) * (mesh->N() + 1) + i];
  }
};

// Implicit upwind scheme -eps d2x Y + a D-x Y + D-t Y = RHS advanced level by
// level with a Thomas solve (the system is strictly diagonally dominant for
// a > 0). With subtract_singular the right-hand side and boundary data are
// those of the subtracted problem (requires a = a(t)); otherwise f, gL, gR
// are used directly.
GridFunction solve(const ProblemSpec& p, std::shared_ptr<const TensorMesh> mesh,
                   bool subtract_singular);

// Variant reusing an already computed CharacteristicData (must outlive call).
GridFunction solve(const ProblemSpec& p, std::shared_ptr<const TensorMesh> mesh,
                   bool subtract_singular, const CharacteristicData* cd);

// Tensor-product piecewise-bilinear interpolant; exact at nodes, affine along
// mesh lines. Out-of-domain points raise a domain error.
double bilinear_eval(const GridFunction& g, double x, double t);

// U = Y + A0 S_0 with U(x_i, 0) = phi(x_i) for i > 0 and U(0,0) = gL(0); the
// corner stays discontinuous when A0 != 0.
GridFunction reconstruct_U(const SingularBasisContext& ctx,
                           const GridFunction& y);

}  // namespace cdl
