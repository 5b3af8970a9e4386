// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "spinpath/errors.hpp"

namespace spinpath {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

struct QuadNode {
  cplx z;
  double w;
};

// Product rule for integrals over the plane with measure dx dy. Radial nodes
// are Gauss-Legendre in u = |z|^2/(1+|z|^2); with grading p > 1 the radial
// variable is s with u = 1 - s^p, which clusters nodes toward |z| -> infinity
// where generalized-j integrands carry fractional powers of (1 - u).
class PlanarQuadrature {
 public:
  PlanarQuadrature(int n_theta, int n_radial, int grading = 1);

  // Exact for half-integer j; graded 200-node radial rule otherwise.
  static PlanarQuadrature for_spin(double j);

  PlanarQuadrature refined() const;

  int n_theta() const { return n_theta_; }
  int n_radial() const { return n_radial_; }
  int grading() const { return grading_; }
  const std::vector<QuadNode>& nodes() const { return nodes_; }

 private:
  int n_theta_;
  int n_radial_;
  int grading_;
  std::vector<QuadNode> nodes_;
};

cplx integrate(const PlanarQuadrature& q, const std::function<cplx(cplx)>& f);

}  // namespace spinpath
