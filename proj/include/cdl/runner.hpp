#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cdl/analysis.hpp"

namespace cdl {

struct SurfaceAt {
  double eps;
  int N;
  int M;
};

struct RunConfig {
  std::optional<int> example;                // 1..5
  std::optional<std::string> problem_file;   // exactly one of the two is set
  std::vector<int> N_list = {16, 32, 64, 128, 256};
  int M_factor = 1;
  std::vector<double> eps_set;  // empty = table subset
  enum class Subtract { automatic, on, off };
  Subtract subtract = Subtract::automatic;
  bool out_csv = true;
  bool out_markdown = true;
  std::optional<SurfaceAt> surface_at;
  std::string out_dir = ".";
  ExecMode mode = ExecMode::openmp;
};

// Orchestrates a full reproduction run: sweep, table emission, optional Y/U
// surfaces. Diagnostics go to log; returns 0 on success, nonzero with a
// message on any validation or solver failure.
int run(const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace cdl
