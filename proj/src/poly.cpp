#include "cdl/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cdl {

namespace {

double pow_int(double v, int p) {
  double r = 1.0;
  for (int k = 0; k < p; ++k) r *= v;
  return r;
}

}  // namespace

Poly2::Poly2(double constant) {
  if (constant != 0.0) terms_.push_back({0, 0, constant});
}

void Poly2::add_term(int px, int pt, double c) {
  if (c == 0.0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{px, pt},
                             [](const Term& a, const std::pair<int, int>& b) {
                               return std::pair{a.px, a.pt} < b;
                             });
  if (it != terms_.end() && it->px == px && it->pt == pt) {
    it->c += c;
    if (it->c == 0.0) terms_.erase(it);
  } else {
    terms_.insert(it, {px, pt, c});
  }
}

double Poly2::operator()(double x, double t) const {
  double sum = 0.0;
  for (const Term& m : terms_) sum += m.c * pow_int(x, m.px) * pow_int(t, m.pt);
  return sum;
}

Poly2 Poly2::derivative_x() const {
  Poly2 out;
  for (const Term& m : terms_)
    if (m.px > 0) out.add_term(m.px - 1, m.pt, m.c * m.px);
  return out;
}

Poly2 Poly2::derivative_t() const {
  Poly2 out;
  for (const Term& m : terms_)
    if (m.pt > 0) out.add_term(m.px, m.pt - 1, m.c * m.pt);
  return out;
}

Poly2 Poly2::antiderivative_t() const {
  Poly2 out;
  for (const Term& m : terms_) out.add_term(m.px, m.pt + 1, m.c / (m.pt + 1));
  return out;
}

bool Poly2::depends_on_x() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const Term& m) { return m.px > 0; });
}

bool Poly2::depends_on_t() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const Term& m) { return m.pt > 0; });
}

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[64];
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Term& m = terms_[k];
    const double mag = std::fabs(m.c);
    if (k == 0) {
      if (m.c < 0.0) out += "-";
    } else {
      out += (m.c < 0.0) ? " - " : " + ";
    }
    std::snprintf(buf, sizeof buf, "%.17g", mag);
    out += buf;
    if (m.px == 1)
      out += "*x";
    else if (m.px > 1) {
      std::snprintf(buf, sizeof buf, "*x^%d", m.px);
      out += buf;
    }
    if (m.pt == 1)
      out += "*t";
    else if (m.pt > 1) {
      std::snprintf(buf, sizeof buf, "*t^%d", m.pt);
      out += buf;
    }
  }
  return out;
}

}  // namespace cdl
