#include "cdl/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cdl {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct PolyParser {
  const std::string& text;
  std::size_t pos = 0;
  bool allow_x, allow_t;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("polynomial '" + text + "': " + msg);
  }
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  int parse_power() {
    if (!eat('^')) return 1;
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) fail("expected an integer exponent after '^'");
    return std::atoi(text.substr(start, pos - start).c_str());
  }
  // factor := NUMBER | x[^k] | t[^k]
  void parse_factor(double& coef, int& px, int& pt) {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression");
    const char c = text[pos];
    if (c == 'x') {
      if (!allow_x) fail("variable x is not allowed here");
      ++pos;
      px += parse_power();
      return;
    }
    if (c == 't') {
      if (!allow_t) fail("variable t is not allowed here");
      ++pos;
      pt += parse_power();
      return;
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str() + pos, &end);
    if (end == text.c_str() + pos) fail(std::string("unexpected character '") + c + "'");
    pos = end - text.c_str();
    coef *= v;
  }
  Poly2 parse() {
    Poly2 out;
    skip_ws();
    if (pos >= text.size()) fail("empty expression");
    bool first = true;
    while (true) {
      skip_ws();
      if (pos >= text.size()) break;
      double sign = 1.0;
      if (eat('+')) {
        sign = 1.0;
      } else if (eat('-')) {
        sign = -1.0;
      } else if (!first) {
        fail(std::string("expected '+' or '-' before '") + text[pos] + "'");
      }
      first = false;
      double coef = sign;
      int px = 0, pt = 0;
      parse_factor(coef, px, pt);
      while (eat('*')) parse_factor(coef, px, pt);
      out.add_term(px, pt, coef);
      skip_ws();
      if (pos >= text.size()) break;
    }
    return out;
  }
};

const char* kRequiredKeys[] = {"a", "f", "phi", "gL", "gR", "eps", "alpha", "T"};
const char* kCornerKeys[] = {"phi2_0", "phi3_0", "phi4_0", "gL1_0"};

}  // namespace

Poly2 parse_poly(const std::string& text, bool allow_x, bool allow_t) {
  PolyParser parser{text, 0, allow_x, allow_t};
  return parser.parse();
}

double parse_eps_value(const std::string& text) {
  const std::string s = trim(text);
  if (s.rfind("2^", 0) == 0) {
    char* end = nullptr;
    const long k = std::strtol(s.c_str() + 2, &end, 10);
    if (end == s.c_str() + 2 || *end != '\0')
      throw std::invalid_argument("bad power-of-two value '" + s + "'");
    return std::ldexp(1.0, static_cast<int>(k));
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument("bad numeric value '" + s + "'");
  return v;
}

ProblemSpec parse_problem_text(std::istream& in, const std::string& origin) {
  std::map<std::string, std::pair<int, std::string>> kv;  // key -> (line, value)
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    if (kv.count(key))
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
    kv[key] = {lineno, value};
  }

  for (const char* key : kRequiredKeys)
    if (!kv.count(key))
      throw std::invalid_argument(origin + ": missing required key '" +
                                  std::string(key) + "'");

  auto take = [&](const char* key) { return kv.at(key); };
  auto poly_of = [&](const char* key, bool ax, bool at) {
    const auto& [ln, value] = take(key);
    try {
      return parse_poly(value, ax, at);
    } catch (const std::exception& e) {
      throw std::invalid_argument(origin + ":" + std::to_string(ln) + ": " +
                                  e.what());
    }
  };
  auto number_of = [&](const char* key) {
    const auto& [ln, value] = take(key);
    try {
      return parse_eps_value(value);
    } catch (const std::exception& e) {
      throw std::invalid_argument(origin + ":" + std::to_string(ln) + ": " +
                                  e.what());
    }
  };

  ProblemSpec p;
  Poly2 a = poly_of("a", true, true);
  p.a_is_time_only = !a.depends_on_x();
  p.f = Fn2(poly_of("f", true, true));
  p.phi = Fn2(poly_of("phi", true, false));
  p.gL = Fn2(poly_of("gL", false, true));
  p.gR = Fn2(poly_of("gR", false, true));
  p.eps = number_of("eps");
  p.alpha = number_of("alpha");
  p.T = number_of("T");
  if (kv.count("d")) {
    if (!p.a_is_time_only)
      throw std::invalid_argument(
          origin + ": key 'd' is only meaningful for a time-only coefficient");
    const auto& [ln, value] = kv.at("d");
    try {
      p.closed_form_d = Fn2(parse_poly(value, false, true));
    } catch (const std::exception& e) {
      throw std::invalid_argument(origin + ":" + std::to_string(ln) + ": " +
                                  e.what());
    }
  }
  for (const char* key : kCornerKeys)
    if (kv.count(key)) p.corner_overrides[key] = number_of(key);
  p.name = kv.count("name") ? kv.at("name").second : "problem";
  p.a = Fn2(std::move(a));

  try {
    validate(p);
  } catch (const std::exception& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }
  return p;
}

ProblemSpec parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("problem file not found: " + path);
  return parse_problem_text(in, path);
}

std::string to_config_text(const ProblemSpec& p) {
  auto poly_str = [](const Fn2& fn, const char* what) {
    if (!fn.analytic())
      throw std::invalid_argument(std::string("to_config_text: '") + what +
                                  "' is not polynomial-backed");
    return fn.poly()->to_string();
  };
  std::ostringstream os;
  os << "name = " << p.name << '\n';
  os << "a = " << poly_str(p.a, "a") << '\n';
  os << "f = " << poly_str(p.f, "f") << '\n';
  os << "phi = " << poly_str(p.phi, "phi") << '\n';
  os << "gL = " << poly_str(p.gL, "gL") << '\n';
  os << "gR = " << poly_str(p.gR, "gR") << '\n';
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", p.eps);
  os << "eps = " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", p.alpha);
  os << "alpha = " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", p.T);
  os << "T = " << buf << '\n';
  if (p.closed_form_d) os << "d = " << poly_str(*p.closed_form_d, "d") << '\n';
  for (const auto& [key, value] : p.corner_overrides) {
    std::snprintf(buf, sizeof buf, "%.17g", value);
    os << key << " = " << buf << '\n';
  }
  return os.str();
}

}  // namespace cdl
