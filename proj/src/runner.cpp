#include "cdl/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "cdl/config.hpp"
#include "cdl/report.hpp"
#include "cdl/singular.hpp"
#include "cdl/solver.hpp"

namespace cdl {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file " + path.string());
  return os;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    if (cfg.example.has_value() == cfg.problem_file.has_value())
      throw std::invalid_argument(
          "exactly one of --example and --problem-file must be given");

    ProblemSpec problem = cfg.example ? builtin_example(*cfg.example)
                                      : parse_problem_file(*cfg.problem_file);
    const CharacteristicData cd = compatibility(problem);

    bool subtract = false;
    switch (cfg.subtract) {
      case RunConfig::Subtract::on:
        subtract = true;
        break;
      case RunConfig::Subtract::off:
        subtract = false;
        break;
      case RunConfig::Subtract::automatic:
        subtract = cd.A0 != 0.0;
        break;
    }
    if (subtract && !problem.a_is_time_only)
      throw std::invalid_argument(
          "problem has A0 = " + std::to_string(cd.A0) +
          " but a(x,t) depends on x: the singular subtraction is only defined "
          "for a = a(t)");
    if (cd.A0 != 0.0 && !subtract)
      log << "note: running the scheme directly on discontinuous data (A0 = "
          << cd.A0 << ", subtraction off)\n";

    log << problem.name << ": A0 = " << cd.A0 << ", A1 = " << cd.A1
        << ", A2 = " << cd.A2 << (cd.derivatives_estimated ? " (estimated)" : "")
        << ", subtraction " << (subtract ? "on" : "off") << '\n';
    if (cd.Tstar)
      log << "interior layer reaches the outflow boundary at T* = " << *cd.Tstar
          << "; using the interaction time mesh\n";
    if (std::abs(cd.c1r_value_residual) > 1e-12 ||
        std::abs(cd.c1r_flux_residual) > 1e-12)
      log << "warning: right-endpoint first-level compatibility residuals "
          << cd.c1r_value_residual << ", " << cd.c1r_flux_residual << '\n';
    if (problem.min_a_on_grid < problem.alpha)
      log << "note: min a on the sampling grid (" << problem.min_a_on_grid
          << ") is below alpha (" << problem.alpha << ")\n";

    SweepOptions opt;
    opt.N_list = cfg.N_list;
    opt.M_factor = cfg.M_factor;
    opt.eps_set = cfg.eps_set.empty() ? table_eps_subset() : cfg.eps_set;
    opt.subtract_singular = subtract;
    opt.mode = cfg.mode;

    const ConvergenceReport rep = sweep(problem, opt);

    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    if (cfg.out_csv) {
      const auto path = dir / (problem.name + "_table.csv");
      auto os = open_out(path);
      write_report_csv(rep, cfg.M_factor, os);
      log << "wrote " << path.string() << '\n';
    }
    if (cfg.out_markdown) {
      const auto path = dir / (problem.name + "_table.md");
      auto os = open_out(path);
      write_report_markdown(rep, os);
      log << "wrote " << path.string() << '\n';
    }

    if (cfg.surface_at) {
      const SurfaceAt& at = *cfg.surface_at;
      const ProblemSpec pe = with_eps(problem, at.eps);
      const CharacteristicData cde = compatibility(pe);
      auto mesh = std::make_shared<const TensorMesh>(make_tensor_mesh(
          at.N, at.M, pe.eps, pe.alpha, pe.T,
          pe.a_is_time_only ? cde.Tstar : std::nullopt));
      const GridFunction y = solve(pe, mesh, subtract, &cde);
      {
        const auto path = dir / (problem.name + "_Y.dat");
        auto os = open_out(path);
        write_surface(y, os);
        log << "wrote " << path.string() << '\n';
      }
      GridFunction u = y;
      if (subtract) {
        const SingularBasisContext ctx(pe, cde);
        u = reconstruct_U(ctx, y);
      }
      {
        const auto path = dir / (problem.name + "_U.dat");
        auto os = open_out(path);
        write_surface(u, os);
        log << "wrote " << path.string() << '\n';
      }
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cdl
