// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "spinpath/quadrature.hpp"
#include "spinpath/symbols.hpp"

namespace spinpath {

// Integral of h(z)|z><z| over the plane on the given rule.
CMatrix reconstruct_operator(const SymbolFn& h, double j, const PlanarQuadrature& q);

// Same, on PlanarQuadrature::for_spin(j), cross-checked against the refined
// rule; throws NumericalError if any entry moves by more than 1e-8 relative.
CMatrix reconstruct_operator(const SymbolFn& h, double j);

double unity_resolution_residual(double j);

struct QuantizationResult {
  double j_input = 0.0;
  double j_rounded = 0.0;
  CMatrix H_psi;
};

// basis columns are the states |psi_n>; an empty matrix means the identity.
QuantizationResult quantize_general_j(double j, const SymbolFn& h, const CMatrix& basis = CMatrix());

// Largest integer strictly below 2j + 2.
int ac_dimension_formula(double j);

}  // namespace spinpath
