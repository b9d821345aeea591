// Command-line front end: table reproduction runs, mesh dumps, and the
// empirical bound-constant diagnostics.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cdl/config.hpp"
#include "cdl/mesh.hpp"
#include "cdl/report.hpp"
#include "cdl/runner.hpp"
#include "cdl/singular.hpp"

namespace {

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  const auto range = text.find("..");
  if (range != std::string::npos) {
    const int lo = std::atoi(text.substr(0, range).c_str());
    const int hi = std::atoi(text.substr(range + 2).c_str());
    if (lo < 4 || hi < lo)
      throw CLI::ValidationError("--N", "bad range '" + text + "'");
    for (int n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::atoi(item.c_str()));
  if (out.empty()) throw CLI::ValidationError("--N", "empty list");
  for (int n : out)
    if (n < 4 || n % 2 != 0)
      throw CLI::ValidationError("--N", "sizes must be even and >= 4");
  return out;
}

std::vector<double> parse_eps_list(const std::string& text) {
  if (text == "table") return cdl::table_eps_subset();
  if (text == "full") return cdl::full_eps_sweep();
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(cdl::parse_eps_value(item));
  if (out.empty()) throw CLI::ValidationError("--eps", "empty list");
  return out;
}

void apply_thread_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("CDLAYERS_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();

  CLI::App app{"Fitted-mesh solver for singularly perturbed convection-"
               "diffusion problems with incompatible corner data"};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  auto* run_cmd = app.add_subcommand(
      "run", "Solve, estimate uniform orders, emit tables and surfaces");
  int example = 0;
  std::string problem_file, n_text = "16..256", eps_text, subtract_text = "auto";
  std::string surface_text, out_dir = ".";
  int m_factor = 1;
  bool serial = false, no_csv = false, no_markdown = false;
  run_cmd->add_option("--example", example, "built-in test problem (1..5)")
      ->check(CLI::Range(1, 5));
  run_cmd->add_option("--problem-file", problem_file,
                      "problem description file (key=value)");
  run_cmd->add_option("--N", n_text,
                      "spatial resolutions: doubling range 16..256 or list");
  run_cmd->add_option("--M-factor", m_factor, "time levels M = factor*N")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--eps", eps_text,
                      "'table' (default), 'full', or a list like 2^0,2^-6");
  run_cmd->add_option("--subtract", subtract_text,
                      "singular subtraction: auto|on|off");
  run_cmd->add_option("--surface-at", surface_text,
                      "also dump Y and U surfaces at eps,N,M (e.g. 2^-10,64,64)");
  run_cmd->add_option("--out-dir", out_dir, "output directory");
  run_cmd->add_flag("--serial", serial, "disable the OpenMP sweep");
  run_cmd->add_flag("--no-csv", no_csv, "skip the CSV table");
  run_cmd->add_flag("--no-markdown", no_markdown, "skip the markdown table");

  // --- mesh --------------------------------------------------------------
  auto* mesh_cmd =
      app.add_subcommand("mesh", "Dump mesh axes as two-column CSV");
  int mesh_N = 16, mesh_M = 16;
  std::string mesh_eps = "2^-10", mesh_out = "mesh";
  double mesh_alpha = 1.0, mesh_T = 0.5, mesh_tstar = 0.0;
  mesh_cmd->add_option("--N", mesh_N)->check(CLI::PositiveNumber);
  mesh_cmd->add_option("--M", mesh_M)->check(CLI::PositiveNumber);
  mesh_cmd->add_option("--eps", mesh_eps);
  mesh_cmd->add_option("--alpha", mesh_alpha);
  mesh_cmd->add_option("--T", mesh_T);
  mesh_cmd->add_option("--Tstar", mesh_tstar,
                       "interaction time mesh around this time (0 = uniform)");
  mesh_cmd->add_option("--out", mesh_out, "prefix for <out>_x.csv, <out>_t.csv");

  // --- bounds ------------------------------------------------------------
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "Empirical constants for the singular-function bounds");
  int bounds_example = 1;
  std::string bounds_eps = "2^0,2^-4,2^-8,2^-12,2^-16,2^-20";
  std::string bounds_out = "bounds.csv";
  bounds_cmd->add_option("--example", bounds_example)->check(CLI::Range(1, 3));
  bounds_cmd->add_option("--eps", bounds_eps);
  bounds_cmd->add_option("--out", bounds_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      cdl::RunConfig cfg;
      if (run_cmd->count("--example")) cfg.example = example;
      if (run_cmd->count("--problem-file")) cfg.problem_file = problem_file;
      cfg.N_list = parse_n_list(n_text);
      cfg.M_factor = m_factor;
      if (!eps_text.empty()) cfg.eps_set = parse_eps_list(eps_text);
      if (subtract_text == "on")
        cfg.subtract = cdl::RunConfig::Subtract::on;
      else if (subtract_text == "off")
        cfg.subtract = cdl::RunConfig::Subtract::off;
      else if (subtract_text == "auto")
        cfg.subtract = cdl::RunConfig::Subtract::automatic;
      else
        throw std::invalid_argument("--subtract must be auto, on, or off");
      if (!surface_text.empty()) {
        std::stringstream ss(surface_text);
        std::string e, n, m;
        if (!std::getline(ss, e, ',') || !std::getline(ss, n, ',') ||
            !std::getline(ss, m))
          throw std::invalid_argument("--surface-at expects eps,N,M");
        cfg.surface_at = cdl::SurfaceAt{cdl::parse_eps_value(e),
                                        std::atoi(n.c_str()),
                                        std::atoi(m.c_str())};
      }
      cfg.out_dir = out_dir;
      cfg.out_csv = !no_csv;
      cfg.out_markdown = !no_markdown;
      cfg.mode = serial ? cdl::ExecMode::serial : cdl::ExecMode::openmp;
      return cdl::run(cfg, std::cout, std::cerr);
    }

    if (*mesh_cmd) {
      const double eps = cdl::parse_eps_value(mesh_eps);
      std::optional<double> tstar;
      if (mesh_tstar > 0.0) tstar = mesh_tstar;
      const cdl::TensorMesh mesh = cdl::make_tensor_mesh(
          mesh_N, mesh_M, eps, mesh_alpha, mesh_T, tstar);
      std::ofstream xs(mesh_out + "_x.csv"), ts(mesh_out + "_t.csv");
      cdl::write_mesh_axis_csv(mesh.xs, xs);
      cdl::write_mesh_axis_csv(mesh.ts, ts);
      std::cout << "sigma = " << mesh.sigma << '\n';
      if (tstar) std::cout << "tau = " << mesh.tau << '\n';
      std::cout << "wrote " << mesh_out << "_x.csv, " << mesh_out << "_t.csv\n";
      return 0;
    }

    if (*bounds_cmd) {
      const cdl::ProblemSpec p = cdl::builtin_example(bounds_example);
      const auto eps_set = parse_eps_list(bounds_eps);
      const auto rows = cdl::bound_diagnostics(p, eps_set, 24, 12);
      std::ofstream os(bounds_out);
      cdl::write_diagnostics_csv(rows, os);
      std::cout << "wrote " << bounds_out << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
