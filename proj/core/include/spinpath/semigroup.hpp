// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "spinpath/hamiltonian.hpp"
#include "spinpath/symbols.hpp"

namespace spinpath {

// <z| exp(-t H) |z'> for t >= 0.
cplx exact_kernel(const HamiltonianSpec& H, double t, cplx z, cplx zp);
cplx exact_kernel(const CMatrix& H, double t, cplx z, cplx zp);

// <z| exp(-i t H) |z'>; H must be Hermitian to 1e-10.
cplx exact_kernel_unitary(const HamiltonianSpec& H, double t, cplx z, cplx zp);
cplx exact_kernel_unitary(const CMatrix& H, double t, cplx z, cplx zp);

bool is_hermitian(const CMatrix& H, double tol = 1e-10);

// Replaces J+- by J+-/sqrt(2j) and J3 by J3 + j, expanding each word.
std::vector<MonomialTerm> contract_hamiltonian(const std::vector<MonomialTerm>& terms, double j);

// (pi / 2j) <z/sqrt(2j)| exp(-t H_j) |z'/sqrt(2j)> with H_j the contracted spec.
cplx contraction_kernel_lhs(const std::vector<MonomialTerm>& terms, double j, double t, cplx z, cplx zp);

// Truncated Fock space {|0>, ..., |n_max>} with normalized canonical
// coherent vectors exp(-|z|^2/2) z^n / sqrt(n!).
class FockSystem {
 public:
  explicit FockSystem(int n_max);

  int n_max() const { return n_max_; }
  const CMatrix& lowering() const { return lower_; }
  const CMatrix& raising() const { return raise_; }
  CVector amplitudes(cplx z) const;
  // 1 - sum_n |amp(z)[n]|^2, the norm lost to truncation.
  double tail(cplx z) const;

 private:
  int n_max_;
  CMatrix lower_;
  CMatrix raise_;
};

// Anti-normal quantization of h_hat on the truncated Fock space,
// integral (d^2z / pi) h_hat(z) |z>><<z|, by polar quadrature on |z| <= 2 sqrt(n_max).
CMatrix fock_quantize(const SymbolFn& h_hat, const FockSystem& fock);

// <<z| exp(-t H) |z'>> with H = fock_quantize(h_hat). Throws NumericalError
// when the truncation tail at z or z' exceeds 1e-8.
cplx fock_oracle_kernel(const SymbolFn& h_hat, int n_max, double t, cplx z, cplx zp);

// sum_k coeffs[k] |z|^(2k). Unbounded unless constant, so the declared bound
// is infinite; only the Fock oracle accepts such symbols.
SymbolFn radial_polynomial_symbol(const std::vector<double>& coeffs);

}  // namespace spinpath
