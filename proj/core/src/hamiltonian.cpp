// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinpath/hamiltonian.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "spinpath/quantization.hpp"

namespace spinpath {
namespace {

double parse_real(const std::string& s, const std::string& context) {
  if (s.empty()) throw ValidationError("empty number in '" + context + "'");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ValidationError("cannot parse number '" + s + "' in '" + context + "'");
  }
  return v;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

cplx parse_complex(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw ValidationError("empty complex literal");
  if (s.find(' ') != std::string::npos) throw ValidationError("complex literal must not contain spaces: '" + s + "'");
  if (s.back() != 'i') return {parse_real(s, s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, s);
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  return {parse_real(body.substr(0, split), s), imag_part(body.substr(split))};
}

std::vector<MonomialTerm> parse_hamiltonian(const std::string& text) {
  std::vector<MonomialTerm> out;
  std::size_t pos = 0;
  const std::size_t n = text.size();
  auto skip = [&] {
    while (pos < n && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos == n) return out;
  while (true) {
    skip();
    const std::size_t star = text.find('*', pos);
    if (star == std::string::npos) throw ValidationError("term without '*' in Hamiltonian '" + text + "'");
    MonomialTerm term;
    term.coeff = parse_complex(text.substr(pos, star - pos));
    pos = star + 1;
    while (true) {
      skip();
      if (text.compare(pos, 2, "J+") == 0) {
        term.word.push_back(Generator::JPlus);
        pos += 2;
      } else if (text.compare(pos, 2, "J-") == 0) {
        term.word.push_back(Generator::JMinus);
        pos += 2;
      } else if (text.compare(pos, 2, "J3") == 0) {
        term.word.push_back(Generator::J3);
        pos += 2;
      } else if (pos < n && text[pos] == 'I') {
        term.word.push_back(Generator::Identity);
        pos += 1;
      } else {
        break;
      }
      if (pos < n && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '+') {
        throw ValidationError("unexpected character in Hamiltonian '" + text + "'");
      }
    }
    if (term.word.empty()) throw ValidationError("term without generators in Hamiltonian '" + text + "'");
    out.push_back(std::move(term));
    skip();
    if (pos == n) break;
    if (text[pos] != '+') throw ValidationError("expected '+' between terms in Hamiltonian '" + text + "'");
    ++pos;
  }
  return out;
}

std::string format_hamiltonian(const std::vector<MonomialTerm>& terms) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    const auto& c = terms[i].coeff;
    os << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    os << " *";
    if (terms[i].word.empty()) os << " I";
    for (auto g : terms[i].word) {
      switch (g) {
        case Generator::JPlus: os << " J+"; break;
        case Generator::JMinus: os << " J-"; break;
        case Generator::J3: os << " J3"; break;
        case Generator::Identity: os << " I"; break;
      }
    }
  }
  return os.str();
}

CMatrix realize_monomials(const std::vector<MonomialTerm>& terms, const SpinSystem& spin) {
  const int d = spin.dim();
  CMatrix H = CMatrix::Zero(d, d);
  for (const auto& t : terms) {
    CMatrix w = CMatrix::Identity(d, d);
    for (auto g : t.word) {
      switch (g) {
        case Generator::JPlus: w = w * spin.j_plus; break;
        case Generator::JMinus: w = w * spin.j_minus; break;
        case Generator::J3: w = w * spin.j3; break;
        case Generator::Identity: break;
      }
    }
    H += t.coeff * w;
  }
  return H;
}

HamiltonianSpec HamiltonianSpec::from_symbol(const SymbolFn& h, double j) {
  HamiltonianSpec s;
  s.j = j;
  s.symbol = h;
  return s;
}

HamiltonianSpec HamiltonianSpec::from_monomials(std::vector<MonomialTerm> terms, double j) {
  HamiltonianSpec s;
  s.j = j;
  s.terms = std::move(terms);
  return s;
}

CMatrix HamiltonianSpec::realize() const {
  if (symbol) return reconstruct_operator(*symbol, j);
  return realize_monomials(terms, build_spin_system(j));
}

}  // namespace spinpath
