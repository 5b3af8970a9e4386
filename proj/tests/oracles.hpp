// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations used by the tests. Nothing here calls
// into the library, so agreement is a genuine cross-check.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Ladder matrices from <m+1|J+|m> = sqrt(j(j+1) - m(m+1)), basis m = -j..j.
struct Ladder {
  CMatrix plus, minus, j3;
};

inline Ladder ladder(int two_j) {
  const int d = two_j + 1;
  const double j = 0.5 * two_j;
  Ladder L{CMatrix::Zero(d, d), CMatrix::Zero(d, d), CMatrix::Zero(d, d)};
  for (int k = 0; k < d; ++k) {
    const double m = k - j;
    L.j3(k, k) = m;
    if (k + 1 < d) L.plus(k + 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  L.minus = L.plus.adjoint();
  return L;
}

inline double g(double j, cplx z) {
  return std::sqrt((2 * j + 1) / kPi) * std::pow(1 + std::norm(z), -(j + 1));
}

// |z> = g(z) exp(z J+) |j,-j> through Eigen's matrix exponential.
inline CVector coherent_by_exponential(int two_j, cplx z) {
  const Ladder L = ladder(two_j);
  const CMatrix E = (z * L.plus).exp();
  return g(0.5 * two_j, z) * E.col(0);
}

// <z|z'> closed form.
inline cplx overlap(double j, cplx z, cplx zp) {
  return g(j, z) * g(j, zp) * std::pow(1.0 + std::conj(z) * zp, 2 * j);
}

// Radial Beta integral: int d^2z (1+|z|^2)^(-a) = pi / (a - 1).
inline double plane_power_integral(double a) { return kPi / (a - 1.0); }

// Naive Taylor series exp(tau A) summed to machine precision; only used on
// small, well-scaled matrices.
inline CMatrix taylor_exp(const CMatrix& A, cplx tau) {
  const int n = static_cast<int>(A.rows());
  CMatrix term = CMatrix::Identity(n, n), sum = term;
  for (int k = 1; k < 200; ++k) {
    term = term * (tau * A) / double(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return sum;
}

// Philox4x32-10 reference values for the counter/key pairs in the
// generator's original publication.
struct PhiloxKat {
  std::uint32_t ctr[4];
  std::uint32_t key[2];
  std::uint32_t out[4];
};

inline const std::vector<PhiloxKat>& philox_kats() {
  static const std::vector<PhiloxKat> v = {
      {{0, 0, 0, 0}, {0, 0}, {0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}},
      {{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
       {0xffffffffu, 0xffffffffu},
       {0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}},
      {{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
       {0xa4093822u, 0x299f31d0u},
       {0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}},
  };
  return v;
}

// Gauss-Legendre on [0,1] by a fixed high count via Golub-Welsch.
inline void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    T(k, k - 1) = T(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  x.resize(n);
  w.resize(n);
  for (int k = 0; k < n; ++k) {
    x[k] = 0.5 * (es.eigenvalues()(k) + 1.0);
    w[k] = es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
  }
}

// Line integral of a 1-form f(b) db + g(b) db* along the segment a -> b by
// a 64-point Gauss rule.
template <class F>
cplx segment_integral(cplx a, cplx b, F&& integrand) {
  std::vector<double> x, w;
  gauss_legendre01(64, x, w);
  cplx s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += w[k] * integrand(a + (b - a) * x[k], b - a);
  return s;
}

// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
inline double ks_pvalue(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = a.size(), nb = b.size();
  std::size_t i = 0, k = 0;
  double d = 0.0;
  while (i < a.size() && k < b.size()) {
    const double v = std::min(a[i], b[k]);
    while (i < a.size() && a[i] <= v) ++i;
    while (k < b.size() && b[k] <= v) ++k;
    d = std::max(d, std::abs(i / na - k / nb));
  }
  const double ne = na * nb / (na + nb);
  const double lam = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double p = 0.0;
  for (int m = 1; m <= 100; ++m) p += 2.0 * ((m % 2) ? 1.0 : -1.0) * std::exp(-2.0 * m * m * lam * lam);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace oracle
