#pragma once

#include <string>
#include <vector>

namespace cdl {

// Sparse bivariate polynomial sum_k c_k x^{px_k} t^{pt_k}. Terms are kept
// sorted lexicographically by (px, pt) so that the evaluation order, and
// hence every floating-point result, survives a serialize/parse round trip
// bit for bit.
class Poly2 {
 public:
  struct Term {
    int px = 0;
    int pt = 0;
    double c = 0.0;
  };

  Poly2() = default;
  explicit Poly2(double constant);

  void add_term(int px, int pt, double c);

  double operator()(double x, double t) const;

  Poly2 derivative_x() const;
  Poly2 derivative_t() const;
  // Term-wise antiderivative in t with zero constant; used for the closed
  // form of the characteristic curve when the coefficient is time-only.
  Poly2 antiderivative_t() const;

  bool depends_on_x() const;
  bool depends_on_t() const;
  bool is_zero() const { return terms_.empty(); }

  const std::vector<Term>& terms() const { return terms_; }

  // Canonical "c*x^i*t^j +/- ..." form accepted by the config parser.
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

}  // namespace cdl
