// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "spinpath/errors.hpp"

namespace spinpath {

// Spin-j representation in the J3 eigenbasis. Index n carries m = n - j, so
// index 0 is the spin-down reference state. j is held as the integer 2j.
struct SpinSystem {
  int two_j = 0;
  CMatrix j_plus;
  CMatrix j_minus;
  CMatrix j3;

  double j() const { return 0.5 * two_j; }
  int dim() const { return two_j + 1; }
};

// Returns 2j when j is a nonnegative half-integer, otherwise throws.
int two_j_of(double j);

bool is_half_integer(double j);

// Smallest integer >= 2j (the generalized-j dimension is this plus one).
int rounded_two_j(double j);

SpinSystem build_spin_system(double j, double max_j = 50.0);

double weight_g(double j, cplx z);

// C(2j, n) for n = 0..rounded_two_j(j) via the ratio recursion; valid for
// real j >= 0.
std::vector<double> binomial_coefficients(double j);

// Coherent vectors |z> for real j >= 0. For half-integer j the amplitudes
// are the usual spin coherent coordinates; otherwise they span the
// generalized family of dimension rounded_two_j(j) + 1.
class CoherentFamily {
 public:
  explicit CoherentFamily(double j);

  double j() const { return j_; }
  int dim() const { return dim_; }
  double g(cplx z) const { return weight_g(j_, z); }
  CVector amplitudes(cplx z) const;
  cplx overlap(cplx z, cplx zp) const;

 private:
  double j_;
  int dim_;
  double prefactor_;
  std::vector<double> sqrt_binom_;
};

cplx coherent_overlap(double j, cplx z, cplx zp);

// amplitudes(z)^dagger * B * amplitudes(zp); j is read off the dimension.
cplx coherent_rep(const CMatrix& B, cplx z, cplx zp);

struct PolynomialFit {
  // coefficients[k] multiplies conj(z)^k
  CVector coefficients;
  double max_residual = 0.0;
};

PolynomialFit polynomial_structure_check(double j, const CVector& psi);

}  // namespace spinpath
