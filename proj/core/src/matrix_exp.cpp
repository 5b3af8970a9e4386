// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinpath/matrix_exp.hpp"

#include <cmath>

namespace spinpath {

CMatrix mat_exp(const CMatrix& A, cplx tau, int max_dim) {
  if (A.rows() != A.cols()) throw ValidationError("mat_exp needs a square matrix");
  if (A.rows() > max_dim) throw ValidationError("matrix exceeds the configured mat_exp dimension limit");
  if (!A.allFinite() || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
    throw NumericalError("mat_exp input is not finite");
  }
  const Eigen::Index n = A.rows();
  CMatrix B = tau * A;
  const double norm1 = B.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  B /= std::ldexp(1.0, squarings);

  CMatrix result = CMatrix::Identity(n, n);
  CMatrix term = CMatrix::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = (term * B) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-17 * result.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  if (!result.allFinite()) throw NumericalError("mat_exp produced non-finite entries");
  return result;
}

}  // namespace spinpath
