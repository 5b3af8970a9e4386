// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinpath/quantization.hpp"

#include <cmath>

#include "spinpath/spin.hpp"

namespace spinpath {

CMatrix reconstruct_operator(const SymbolFn& h, double j, const PlanarQuadrature& q) {
  const CoherentFamily fam(j);
  const int d = fam.dim();
  CMatrix acc = CMatrix::Zero(d, d);
  if (h.vanishes) return acc;
  for (const auto& nd : q.nodes()) {
    const cplx v = h.h(nd.z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError("symbol is not finite at a quadrature node");
    }
    const CVector a = fam.amplitudes(nd.z);
    acc.noalias() += (nd.w * v) * (a * a.adjoint());
  }
  return acc;
}

CMatrix reconstruct_operator(const SymbolFn& h, double j) {
  two_j_of(j);
  const auto q = PlanarQuadrature::for_spin(j);
  CMatrix coarse = reconstruct_operator(h, j, q);
  CMatrix fine = reconstruct_operator(h, j, q.refined());
  const double scale = std::max(1.0, fine.cwiseAbs().maxCoeff());
  if ((fine - coarse).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw NumericalError("operator reconstruction is under-resolved for symbol '" + h.name + "'");
  }
  return coarse;
}

double unity_resolution_residual(double j) {
  const CMatrix one = reconstruct_operator(constant_symbol(1.0), j);
  return (one - CMatrix::Identity(one.rows(), one.cols())).cwiseAbs().maxCoeff();
}

QuantizationResult quantize_general_j(double j, const SymbolFn& h, const CMatrix& basis) {
  const CoherentFamily fam(j);
  const int d = fam.dim();
  QuantizationResult res;
  res.j_input = j;
  res.j_rounded = 0.5 * (d - 1);
  if (basis.size() != 0) {
    if (basis.rows() != d || basis.cols() != d) throw ValidationError("basis dimension must be 2(j)+1");
    if ((basis.adjoint() * basis - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
      throw ValidationError("basis is not unitary");
    }
  }
  // H_psi = sum_{mn} (integral h a_m conj(a_n)) |psi_m><psi_n|
  const CMatrix coeffs = reconstruct_operator(h, j, PlanarQuadrature::for_spin(j));
  res.H_psi = basis.size() == 0 ? coeffs : CMatrix(basis * coeffs * basis.adjoint());
  return res;
}

int ac_dimension_formula(double j) {
  if (!std::isfinite(j) || j < 0.0) throw ValidationError("ac_dimension_formula needs j >= 0");
  const double x = 2.0 * j + 2.0;
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-12) return static_cast<int>(r) - 1;
  return static_cast<int>(std::floor(x));
}

}  // namespace spinpath
