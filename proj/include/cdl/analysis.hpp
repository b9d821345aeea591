#pragma once

#include <string>
#include <vector>

#include "cdl/problem.hpp"

namespace cdl {

// Serial runs are the reference implementation; openmp distributes the
// (eps, N) solve grid and the union-norm node loops. Results are reduced in
// deterministic order, so both modes produce bit-identical reports.
enum class ExecMode { serial, openmp };

// P = log2(dN / d2N); inputs must be positive.
double order_from(double dN, double d2N);

// Maximum over the nodes of both meshes of |coarse interpolant - fine
// interpolant| between the (N, M) and (2N, 2M) solves (transition parameters
// recomputed per resolution, so the meshes do not nest).
double two_mesh_difference(const ProblemSpec& p, int N, int M,
                           bool subtract_singular,
                           ExecMode mode = ExecMode::serial);

struct SweepOptions {
  std::vector<int> N_list = {16, 32, 64, 128, 256};
  int M_factor = 1;  // M = M_factor * N
  std::vector<double> eps_set;
  bool subtract_singular = false;
  ExecMode mode = ExecMode::serial;
};

struct ConvergenceRow {
  double eps = 0.0;  // NaN for the uniform row
  std::vector<double> D;
  std::vector<double> P;  // one entry fewer than D
};

struct ConvergenceReport {
  std::string example_id;
  std::vector<int> N_list;
  std::string m_rule;
  std::string time_mesh;
  std::vector<ConvergenceRow> rows;
  ConvergenceRow uniform;
};

ConvergenceReport sweep(const ProblemSpec& p, const SweepOptions& opt);

// {2^0, 2^-6, ..., 2^-30}: the representative set displayed in the tables.
std::vector<double> table_eps_subset();
// {2^0, 2^-1, ..., 2^-30}: the full uniform-row sweep.
std::vector<double> full_eps_sweep();

}  // namespace cdl
