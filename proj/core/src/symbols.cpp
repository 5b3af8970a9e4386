// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinpath/symbols.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace spinpath {
namespace {

std::string canonical_name(std::string s) {
  // Accept the Unicode minus sign as a synonym for '-'.
  const std::string minus = "\xE2\x88\x92";
  for (std::size_t p; (p = s.find(minus)) != std::string::npos;) s.replace(p, minus.size(), "-");
  if (s == "J3^2" || s == "J3J3" || s == "J3\xC2\xB2") return "J3^2";
  return s;
}

void check_bound(const SymbolFn& s) {
  // Polar grid out to |z| = 1e3 plus the origin.
  double worst = std::abs(s.h(0.0));
  for (int a = 0; a < 96; ++a) {
    const double r = std::pow(10.0, -3.0 + 6.0 * a / 95.0);
    for (int b = 0; b < 24; ++b) worst = std::max(worst, std::abs(s.h(std::polar(r, 2.0 * kPi * (b + 0.5) / 24.0))));
  }
  if (!std::isfinite(worst) || worst > s.sup_norm_bound * (1.0 + 1e-9) + 1e-12) {
    std::ostringstream os;
    os << "symbol '" << s.name << "' exceeds its declared sup-norm bound " << s.sup_norm_bound
       << " (sampled " << worst << ")";
    throw ValidationError(os.str());
  }
}

}  // namespace

SymbolFn make_symbol(std::string name, std::function<cplx(cplx)> h, double sup_norm_bound,
                     bool is_real_valued) {
  if (!std::isfinite(sup_norm_bound) || sup_norm_bound < 0.0) {
    throw ValidationError("symbol must declare a finite nonnegative sup-norm bound");
  }
  SymbolFn s{std::move(name), std::move(h), sup_norm_bound, is_real_valued, false};
  check_bound(s);
  return s;
}

std::vector<std::string> table_symbol_names() { return {"J+", "J-", "J3", "J+J-", "J-J+", "J3^2"}; }

SymbolFn table_symbol(const std::string& raw, double j) {
  if (!std::isfinite(j) || j < 0.0) throw ValidationError("symbol needs j >= 0");
  const std::string name = canonical_name(raw);
  const double k = j + 1.0;
  const double a = 2.0 * k;
  const double quad_bound = a * std::max(1.0, a * a / (4.0 * (a + 1.0)));
  if (name == "J+") {
    return make_symbol(name, [a](cplx z) { return a * std::conj(z) / (1.0 + std::norm(z)); }, k, false);
  }
  if (name == "J-") {
    return make_symbol(name, [a](cplx z) { return a * z / (1.0 + std::norm(z)); }, k, false);
  }
  if (name == "J3") {
    return make_symbol(
        name, [k](cplx z) { const double x = std::norm(z); return cplx(-k * (1.0 - x) / (1.0 + x)); }, k, true);
  }
  if (name == "J+J-") {
    return make_symbol(
        name,
        [a](cplx z) {
          const double x = std::norm(z);
          return cplx(-a * (1.0 - a * x) / ((1.0 + x) * (1.0 + x)));
        },
        quad_bound, true);
  }
  if (name == "J-J+") {
    return make_symbol(
        name,
        [a](cplx z) {
          const double x = std::norm(z);
          return cplx(a * (a * x - x * x) / ((1.0 + x) * (1.0 + x)));
        },
        quad_bound, true);
  }
  if (name == "J3^2") {
    return make_symbol(
        name,
        [k, j](cplx z) {
          const double x = std::norm(z);
          const double c = (1.0 - x) / (1.0 + x);
          return cplx(k * (j + 1.5) * c * c - 0.5 * k);
        },
        k * k, true);
  }
  throw ValidationError("unknown symbol '" + raw + "'");
}

SymbolFn constant_symbol(cplx c) {
  std::ostringstream os;
  os << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
  SymbolFn s{os.str(), [c](cplx) { return c; }, std::abs(c), c.imag() == 0.0, c == cplx(0.0)};
  return s;
}

SymbolFn symbol_combination(const std::vector<SymbolTerm>& terms, double j) {
  if (terms.empty()) return constant_symbol(0.0);
  std::vector<std::pair<cplx, SymbolFn>> parts;
  double bound = 0.0;
  bool real = true;
  std::ostringstream name;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    SymbolFn f = (t.name == "1" || t.name == "I") ? constant_symbol(1.0) : table_symbol(t.name, j);
    bound += std::abs(t.coeff) * f.sup_norm_bound;
    real = real && f.is_real_valued && t.coeff.imag() == 0.0;
    if (i) name << " + ";
    name << "(" << t.coeff.real() << (t.coeff.imag() < 0 ? "" : "+") << t.coeff.imag() << "i)*" << f.name;
    parts.emplace_back(t.coeff, std::move(f));
  }
  auto h = [parts](cplx z) {
    cplx acc = 0.0;
    for (const auto& [c, f] : parts) acc += c * f.h(z);
    return acc;
  };
  return make_symbol(name.str(), h, bound, real);
}

SymbolFn parse_symbol(const std::string& text, double j) {
  if (text.empty()) throw ValidationError("empty symbol specification");
  if (text == "0" || text == "zero") return constant_symbol(0.0);
  if (text == "1" || text == "one" || text == "I") return constant_symbol(1.0);
  std::string doc;
  if (text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw ValidationError("cannot open symbol file " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    doc = ss.str();
  } else if (text[0] == '{') {
    doc = text;
  } else {
    return table_symbol(text, j);
  }
  nlohmann::json js;
  try {
    js = nlohmann::json::parse(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("symbol document is not valid JSON: ") + e.what());
  }
  if (!js.contains("terms") || !js["terms"].is_array()) throw ValidationError("symbol document needs a 'terms' array");
  std::vector<SymbolTerm> terms;
  for (const auto& t : js["terms"]) {
    if (!t.contains("name") || !t["name"].is_string()) throw ValidationError("symbol term needs a string 'name'");
    const double re = t.value("coeff_re", 0.0);
    const double im = t.value("coeff_im", 0.0);
    terms.push_back({t["name"].get<std::string>(), cplx(re, im)});
  }
  return symbol_combination(terms, j);
}

}  // namespace spinpath
