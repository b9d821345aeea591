#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "cdl/analysis.hpp"
#include "cdl/singular.hpp"
#include "cdl/solver.hpp"

namespace cdl {

// "2^-12" when eps is an exact power of two, decimal otherwise.
std::string format_eps(double eps);

// columns: example, eps, N, M, D, P (P empty in the last column,
// eps = "uniform" for the uniform rows)
void write_report_csv(const ConvergenceReport& rep, int m_factor,
                      std::ostream& os);

// table shaped like the published ones: one column per N, a D line and a P
// line per eps, uniform rows last
void write_report_markdown(const ConvergenceReport& rep, std::ostream& os);

// whitespace-separated "x t value" triples, time-outer, blank line between
// time blocks (plottable as a surface)
void write_surface(const GridFunction& g, std::ostream& os);

// two-column CSV (index, coordinate)
void write_mesh_axis_csv(std::span<const double> nodes, std::ostream& os);

// columns: bound-id, eps, C_emp
void write_diagnostics_csv(std::span<const BoundDiagnosticRow> rows,
                           std::ostream& os);

}  // namespace cdl
