#pragma once

#include <iosfwd>
#include <string>

#include "cdl/problem.hpp"

namespace cdl {

// Polynomial expression "c*x^i*t^j + ..." (sums of products of a numeric
// literal and optional x^i / t^j powers). allow_x / allow_t restrict the
// admissible variables; violations and syntax errors throw
// std::invalid_argument with a description.
Poly2 parse_poly(const std::string& text, bool allow_x, bool allow_t);

// "2^-12" or a decimal literal.
double parse_eps_value(const std::string& text);

// Line-oriented key=value problem description. Required keys: a, f, phi, gL,
// gR (polynomials), eps, alpha, T. Optional: d (closed-form antiderivative
// of a(t)), phi2_0, phi3_0, phi4_0, gL1_0 (analytic corner derivatives),
// name. '#' starts a comment. Errors carry "<origin>:<line>:".
ProblemSpec parse_problem_text(std::istream& in, const std::string& origin);
ProblemSpec parse_problem_file(const std::string& path);

// Canonical config text for a polynomial-backed problem; parsing it back
// reproduces the coefficients (and hence all results) bit for bit.
std::string to_config_text(const ProblemSpec& p);

}  // namespace cdl
