// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spinpath/errors.hpp"

namespace spinpath {

// A bounded continuous function on the plane used as a contravariant symbol.
struct SymbolFn {
  std::string name;
  std::function<cplx(cplx)> h;
  double sup_norm_bound = 0.0;
  bool is_real_valued = true;
  bool vanishes = false;  // h is identically zero

  cplx operator()(cplx z) const { return h(z); }
};

// Wraps a user function after checking the declared bound on a sample grid.
SymbolFn make_symbol(std::string name, std::function<cplx(cplx)> h, double sup_norm_bound,
                     bool is_real_valued);

// Registry names: J+, J-, J3, J+J-, J-J+, J3^2 (a Unicode minus is accepted).
SymbolFn table_symbol(const std::string& name, double j);
std::vector<std::string> table_symbol_names();

SymbolFn constant_symbol(cplx c);

struct SymbolTerm {
  std::string name;
  cplx coeff;
};

// Registry entries may also be "1" (constant one) in a combination.
SymbolFn symbol_combination(const std::vector<SymbolTerm>& terms, double j);

// Accepts a registry name, "0", "1", a JSON document
// {"terms":[{"name":..,"coeff_re":..,"coeff_im":..}]}, or "@path" to such a
// document on disk.
SymbolFn parse_symbol(const std::string& text, double j);

}  // namespace spinpath
