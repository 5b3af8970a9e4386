// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinpath/quadrature.hpp"

#include <cmath>

#include "spinpath/spin.hpp"

namespace spinpath {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw ValidationError("Gauss-Legendre rule needs at least one node");
  GaussLegendreRule r;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

PlanarQuadrature::PlanarQuadrature(int n_theta, int n_radial, int grading)
    : n_theta_(n_theta), n_radial_(n_radial), grading_(grading) {
  if (n_theta < 1 || n_radial < 1 || grading < 1) throw ValidationError("invalid planar quadrature sizes");
  const auto gl = gauss_legendre(n_radial);
  nodes_.reserve(static_cast<std::size_t>(n_theta) * n_radial);
  const double dtheta = 2.0 * kPi / n_theta;
  for (int a = 0; a < n_radial; ++a) {
    const double x = 0.5 * (gl.nodes[a] + 1.0);
    double u, du, one_minus;
    if (grading == 1) {
      u = x;
      one_minus = 1.0 - x;
      du = 0.5 * gl.weights[a];
    } else {
      const double p = grading;
      one_minus = std::pow(x, p);
      u = 1.0 - one_minus;
      du = 0.5 * gl.weights[a] * p * std::pow(x, p - 1.0);
    }
    const double r = std::sqrt(u / one_minus);
    // dx dy = r dr dtheta = (1/2) d(r^2) dtheta, d(r^2) = du / (1-u)^2
    const double w = dtheta * du * 0.5 / (one_minus * one_minus);
    for (int b = 0; b < n_theta; ++b) nodes_.push_back({std::polar(r, b * dtheta), w});
  }
}

PlanarQuadrature PlanarQuadrature::for_spin(double j) {
  const int top = rounded_two_j(j);
  const bool half_integer = std::abs(2.0 * j - top) < 1e-12;
  if (half_integer) return PlanarQuadrature(4 * top + 8, top + 4);
  return PlanarQuadrature(4 * top + 8, 200, 8);
}

PlanarQuadrature PlanarQuadrature::refined() const {
  return PlanarQuadrature(2 * n_theta_, 2 * n_radial_, grading_);
}

cplx integrate(const PlanarQuadrature& q, const std::function<cplx(cplx)>& f) {
  cplx acc = 0.0;
  for (const auto& nd : q.nodes()) {
    const cplx v = f(nd.z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError("integrand is not finite at a quadrature node");
    }
    acc += nd.w * v;
  }
  return acc;
}

}  // namespace spinpath
