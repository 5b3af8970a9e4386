// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinpath/spin.hpp"
#include "spinpath/symbols.hpp"

namespace spinpath {

enum class Generator { JPlus, JMinus, J3, Identity };

struct MonomialTerm {
  cplx coeff;
  std::vector<Generator> word;  // empty word is the identity
};

// Grammar: term ('+' term)*, term = coeff '*' word, word = generator
// (' ' generator)*, generator in {J+, J-, J3, I}, coeff = a | a+bi | a-bi.
// A leading '-' on a term's coefficient is allowed, e.g. "-0.5*J3".
std::vector<MonomialTerm> parse_hamiltonian(const std::string& text);
std::string format_hamiltonian(const std::vector<MonomialTerm>& terms);

CMatrix realize_monomials(const std::vector<MonomialTerm>& terms, const SpinSystem& spin);

// Either symbol-defined (reconstructed by quadrature) or monomial-defined.
struct HamiltonianSpec {
  double j = 0.0;
  std::optional<SymbolFn> symbol;
  std::vector<MonomialTerm> terms;

  static HamiltonianSpec from_symbol(const SymbolFn& h, double j);
  static HamiltonianSpec from_monomials(std::vector<MonomialTerm> terms, double j);

  CMatrix realize() const;
};

// Parses a complex literal: a, a+bi, a-bi, bi (no spaces).
cplx parse_complex(const std::string& text);

}  // namespace spinpath
