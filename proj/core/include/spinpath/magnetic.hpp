// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "spinpath/errors.hpp"

namespace spinpath {

using SpMatrix = Eigen::SparseMatrix<cplx>;

// n x n nodes on [-L, L]^2; node (ix, iy) has index ix * n + iy.
struct Grid {
  double L = 12.0;
  int n = 193;

  double delta() const { return 2.0 * L / (n - 1); }
  double coord(int i) const { return -L + delta() * i; }
  int index(int ix, int iy) const { return ix * n + iy; }
  cplx z(int ix, int iy) const { return {coord(ix), coord(iy)}; }
  int size() const { return n * n; }
};

double vector_potential_1(double j, cplx z);
double vector_potential_2(double j, cplx z);
double scalar_potential(double j, cplx z);

enum class Discretization {
  // 1/2 (D+^dagger D+ + D-^dagger D-) with one-sided biased stencils of the
  // given odd order; positive semidefinite by construction.
  Factorized,
  // -Laplacian + i(A.grad + div A) + |A|^2 + V with centered second-order
  // stencils. Kept for comparison; it is not sign-definite on the grid.
  Expanded,
};

struct MagneticOperator {
  double j = 0.0;
  Grid grid;
  Discretization scheme = Discretization::Factorized;
  int order = 3;
  std::vector<double> a1, a2, v;  // potentials at the nodes
  SpMatrix R;
};

// Default n cap keeps the sparse factor within a few GB.
inline constexpr int kMaxGridNodes = 513;

MagneticOperator assemble_R(double j, double L, int n, int order = 3,
                            Discretization scheme = Discretization::Factorized);

// D = i d1 + d2 + A1 - i A2 with the given one-sided stencil (order 1, 3, 5;
// sign +1 forward-biased, -1 backward-biased), zero outside the grid.
SpMatrix magnetic_D_biased(double j, const Grid& grid, int order, int sign);
// Same operator with centered second-order differences.
SpMatrix magnetic_D_centered(double j, const Grid& grid);

// max over n = 0..2j of |D psi_n| / |psi_n| on interior nodes, psi_n = g (z*)^n.
double factorization_residual(double j, double L, int n);

// Centered-difference checks of the potentials at interior nodes.
double divergence_residual(const MagneticOperator& op);
double curl_residual(const MagneticOperator& op);

struct GroundSpaceReport {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> residuals;    // |R x - lambda x| per eigenpair
  int zero_cluster_size = 0;
  double cluster_floor = 0.0;
  double analytic_overlap = 0.0;
  int iterations = 0;
  CMatrix eigenvectors;  // columns, unit l2 norm
};

struct SpectrumOptions {
  double shift = 0.01;
  double tol = 1e-9;
  int max_iterations = 400;
  unsigned long long seed = 12345;
  // Gap-statistic floor eps in (lambda_{i+1} + eps)/(lambda_i + eps);
  // <= 0 selects 0.2 / L^2.
  double cluster_floor = 0.0;
};

// Lowest k eigenpairs by shift-invert subspace expansion with Rayleigh-Ritz.
GroundSpaceReport low_spectrum(const MagneticOperator& op, int k, const SpectrumOptions& opt = {});

// Default eigenpair count for a given j.
int default_spectrum_count(double j);

int zero_cluster_size(const std::vector<double>& eigenvalues, double floor);

// Smallest squared singular value of Q^dagger V with Q an orthonormal basis of
// the sampled analytic ground functions g (z*)^n, n < cluster.
double analytic_overlap(const MagneticOperator& op, const CMatrix& cluster_vectors);

}  // namespace spinpath
