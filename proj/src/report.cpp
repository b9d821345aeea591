#include "cdl/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace cdl {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string format_eps(double eps) {
  int exp2 = 0;
  const double mant = std::frexp(eps, &exp2);
  if (mant == 0.5)  // eps = 2^(exp2-1)
    return "2^" + std::to_string(exp2 - 1);
  return fmt("%.17g", eps);
}

void write_report_csv(const ConvergenceReport& rep, int m_factor,
                      std::ostream& os) {
  os << "example,eps,N,M,D,P\n";
  auto line = [&](const std::string& eps_label, const ConvergenceRow& row) {
    for (std::size_t c = 0; c < rep.N_list.size(); ++c) {
      const int N = rep.N_list[c];
      os << rep.example_id << ',' << eps_label << ',' << N << ','
         << m_factor * N << ',' << fmt("%.6e", row.D[c]) << ',';
      if (c < row.P.size()) os << fmt("%.3f", row.P[c]);
      os << '\n';
    }
  };
  for (const ConvergenceRow& row : rep.rows) line(format_eps(row.eps), row);
  line("uniform", rep.uniform);
}

void write_report_markdown(const ConvergenceReport& rep, std::ostream& os) {
  os << "Two-mesh global differences and orders for " << rep.example_id
     << " (" << rep.m_rule << ", " << rep.time_mesh << " time mesh)\n\n";
  os << "| |";
  for (int N : rep.N_list) os << " N=" << N << " |";
  os << "\n|---|";
  for (std::size_t c = 0; c < rep.N_list.size(); ++c) os << "---|";
  os << '\n';
  auto pair = [&](const std::string& label, const ConvergenceRow& row,
                  const char* d_sym, const char* p_sym) {
    os << "| " << d_sym << " (" << label << ") |";
    for (std::size_t c = 0; c < rep.N_list.size(); ++c)
      os << ' ' << fmt("%.3e", row.D[c]) << " |";
    os << "\n| " << p_sym << " |";
    for (std::size_t c = 0; c < rep.N_list.size(); ++c) {
      if (c < row.P.size())
        os << ' ' << fmt("%.3f", row.P[c]) << " |";
      else
        os << "  |";
    }
    os << '\n';
  };
  for (const ConvergenceRow& row : rep.rows)
    pair("eps=" + format_eps(row.eps), row, "D", "P");
  pair("uniform", rep.uniform, "D^{N,M}", "P^{N,M}");
}

void write_surface(const GridFunction& g, std::ostream& os) {
  const TensorMesh& m = *g.mesh;
  for (int j = 0; j <= m.M(); ++j) {
    for (int i = 0; i <= m.N(); ++i)
      os << fmt("%.12g", m.xs[i]) << ' ' << fmt("%.12g", m.ts[j]) << ' '
         << fmt("%.12g", g.at(i, j)) << '\n';
    os << '\n';
  }
}

void write_mesh_axis_csv(std::span<const double> nodes, std::ostream& os) {
  os << "index,coordinate\n";
  for (std::size_t i = 0; i < nodes.size(); ++i)
    os << i << ',' << fmt("%.17g", nodes[i]) << '\n';
}

void write_diagnostics_csv(std::span<const BoundDiagnosticRow> rows,
                           std::ostream& os) {
  os << "bound-id,eps,C_emp\n";
  for (const BoundDiagnosticRow& r : rows)
    os << r.bound_id << ',' << format_eps(r.eps) << ',' << fmt("%.6e", r.c_emp)
       << '\n';
}

}  // namespace cdl
