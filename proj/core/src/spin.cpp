// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinpath/spin.hpp"

#include <cmath>
#include <sstream>

namespace spinpath {

int two_j_of(double j) {
  if (!std::isfinite(j) || j < 0.0) {
    throw ValidationError("spin quantum number must be finite and nonnegative");
  }
  const double twice = 2.0 * j;
  const double r = std::round(twice);
  if (std::abs(twice - r) > 1e-12) {
    std::ostringstream os;
    os << "j = " << j << " is not a half-integer";
    throw ValidationError(os.str());
  }
  return static_cast<int>(r);
}

bool is_half_integer(double j) {
  return std::isfinite(j) && j >= 0.0 && std::abs(2.0 * j - std::round(2.0 * j)) <= 1e-12;
}

int rounded_two_j(double j) {
  if (!std::isfinite(j) || j < 0.0) {
    throw ValidationError("spin quantum number must be finite and nonnegative");
  }
  return static_cast<int>(std::ceil(2.0 * j - 1e-12));
}

SpinSystem build_spin_system(double j, double max_j) {
  const int tj = two_j_of(j);
  if (j > max_j) {
    std::ostringstream os;
    os << "j = " << j << " exceeds the configured maximum " << max_j;
    throw ValidationError(os.str());
  }
  SpinSystem s;
  s.two_j = tj;
  const int d = tj + 1;
  s.j_plus = CMatrix::Zero(d, d);
  s.j3 = CMatrix::Zero(d, d);
  const double jj = 0.5 * tj;
  for (int n = 0; n < d; ++n) {
    const double m = n - jj;
    s.j3(n, n) = m;
    if (n + 1 < d) s.j_plus(n + 1, n) = std::sqrt(jj * (jj + 1.0) - m * (m + 1.0));
  }
  s.j_minus = s.j_plus.adjoint();
  return s;
}

double weight_g(double j, cplx z) {
  return std::sqrt((2.0 * j + 1.0) / kPi) * std::pow(1.0 + std::norm(z), -j - 1.0);
}

std::vector<double> binomial_coefficients(double j) {
  const int top = rounded_two_j(j);
  std::vector<double> c(top + 1);
  c[0] = 1.0;
  for (int n = 0; n < top; ++n) {
    c[n + 1] = (2.0 * j - n) / (n + 1.0) * c[n];
    if (!(c[n + 1] > 0.0)) throw NumericalError("nonpositive binomial coefficient in coherent family");
  }
  return c;
}

CoherentFamily::CoherentFamily(double j)
    : j_(j), dim_(rounded_two_j(j) + 1), prefactor_(std::sqrt((2.0 * j + 1.0) / kPi)) {
  const auto c = binomial_coefficients(j);
  sqrt_binom_.resize(c.size());
  for (std::size_t n = 0; n < c.size(); ++n) sqrt_binom_[n] = std::sqrt(c[n]);
}

CVector CoherentFamily::amplitudes(cplx z) const {
  // a_n = pref * sqrt(C_n) * zeta^n * s^(2j+2-n), zeta = z s, s = (1+|z|^2)^(-1/2);
  // every factor stays bounded for large |z|.
  const double s = 1.0 / std::sqrt(1.0 + std::norm(z));
  const cplx zeta = z * s;
  CVector a(dim_);
  cplx zp = 1.0;
  for (int n = 0; n < dim_; ++n) {
    a[n] = prefactor_ * sqrt_binom_[n] * zp * std::pow(s, 2.0 * j_ + 2.0 - n);
    zp *= zeta;
  }
  return a;
}

cplx CoherentFamily::overlap(cplx z, cplx zp) const {
  return amplitudes(z).dot(amplitudes(zp));
}

cplx coherent_overlap(double j, cplx z, cplx zp) {
  const int tj = two_j_of(j);
  return weight_g(j, z) * weight_g(j, zp) * std::pow(1.0 + std::conj(z) * zp, tj);
}

cplx coherent_rep(const CMatrix& B, cplx z, cplx zp) {
  if (B.rows() != B.cols() || B.rows() < 1) throw ValidationError("coherent_rep needs a nonempty square matrix");
  const CoherentFamily fam(0.5 * static_cast<double>(B.rows() - 1));
  return fam.amplitudes(z).dot(B * fam.amplitudes(zp));
}

PolynomialFit polynomial_structure_check(double j, const CVector& psi) {
  const int tj = two_j_of(j);
  if (psi.size() != tj + 1) throw ValidationError("state dimension does not match 2j+1");
  const CoherentFamily fam(j);
  const int deg = tj;
  const int n_fit = 2 * tj + 4;  // = 4j + 4
  const int n_test = n_fit + 3;

  // <z|psi>/g(z) sampled on two interleaved circles; Vandermonde systems on
  // circles stay well conditioned for the degrees allowed here.
  auto sample = [&](cplx z) { return fam.amplitudes(z).dot(psi) / fam.g(z); };
  CMatrix V(n_fit, deg + 1);
  CVector rhs(n_fit);
  for (int k = 0; k < n_fit; ++k) {
    const cplx z = std::polar(0.9, 2.0 * kPi * k / n_fit);
    cplx p = 1.0;
    for (int d = 0; d <= deg; ++d) {
      V(k, d) = p;
      p *= std::conj(z);
    }
    rhs[k] = sample(z);
  }
  PolynomialFit fit;
  fit.coefficients = V.colPivHouseholderQr().solve(rhs);
  for (int k = 0; k < n_test; ++k) {
    const cplx z = std::polar(0.65, 2.0 * kPi * (k + 0.37) / n_test);
    cplx p = 1.0, acc = 0.0;
    for (int d = 0; d <= deg; ++d) {
      acc += fit.coefficients[d] * p;
      p *= std::conj(z);
    }
    fit.max_residual = std::max(fit.max_residual, std::abs(acc - sample(z)));
  }
  return fit;
}

}  // namespace spinpath
