// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include <spinpath/magnetic.hpp>
#include <spinpath/quantization.hpp>
#include <spinpath/schrodinger.hpp>
#include <spinpath/symbols.hpp>

#include "oracles.hpp"

using namespace spinpath;

TEST_CASE("potentials") {
  CHECK(scalar_potential(0.5, 0.0) == doctest::Approx(-6.0));
  CHECK(vector_potential_1(0.5, cplx(0, 1)) == doctest::Approx(1.5));
  CHECK(vector_potential_2(0.5, cplx(0, 1)) == doctest::Approx(0.0).epsilon(1e-15));
  for (double j : {0.0, 0.5, 2.6}) {
    CHECK(std::abs(scalar_potential(j, 1e4)) < 1e-14);
    CHECK(std::abs(vector_potential_1(j, cplx(0, 1e4))) < 1e-3);
  }
}

TEST_CASE("grid operator structure") {
  const MagneticOperator op = assemble_R(1.0, 6.0, 41);
  CHECK(op.R.rows() == 41 * 41);
  const SpMatrix diff = SpMatrix(op.R.adjoint()) - op.R;
  CHECK(diff.norm() < 1e-12 * op.R.norm());
  const MagneticOperator fine = assemble_R(1.0, 6.0, 81);
  const double curl_ratio = curl_residual(op) / curl_residual(fine);
  const double div_ratio = divergence_residual(op) / divergence_residual(fine);
  CHECK(curl_ratio > 3.0);
  CHECK(curl_ratio < 5.0);
  CHECK(div_ratio > 3.0);
  CHECK(div_ratio < 5.0);
  CHECK_THROWS_AS(assemble_R(1.0, 6.0, 41, 2), ValidationError);
  CHECK_THROWS_AS(assemble_R(1.0, 6.0, kMaxGridNodes + 1), ValidationError);
  CHECK_THROWS_AS(assemble_R(-1.0, 6.0, 41), ValidationError);
}

TEST_CASE("factorized operator annihilates analytic ground functions at second order") {
  const double r1 = factorization_residual(1.0, 8.0, 65);
  const double r2 = factorization_residual(1.0, 8.0, 129);
  const double ratio = r1 / r2;
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
  const double s1 = factorization_residual(0.0, 8.0, 65);
  const double s2 = factorization_residual(0.0, 8.0, 129);
  CHECK(s1 / s2 >= 3.0);
  CHECK(s1 / s2 <= 5.0);
}

TEST_CASE("cluster rule") {
  CHECK(zero_cluster_size({1e-5, 2e-5, 0.3, 0.35}, 1e-3) == 2);
  CHECK(zero_cluster_size({1e-6, 0.3, 0.35, 0.4}, 1e-3) == 1);
  CHECK(zero_cluster_size({1e-6, 2e-6, 3e-6, 0.5}, 1e-3) == 3);
  CHECK(default_spectrum_count(0.5) == 7);
  CHECK(default_spectrum_count(2.6) == 11);
}

TEST_CASE("low spectrum on a coarse grid") {
  const MagneticOperator op = assemble_R(0.5, 12.0, 129);
  const GroundSpaceReport rep = low_spectrum(op, 6);
  REQUIRE(rep.eigenvalues.size() == 6);
  for (double ev : rep.eigenvalues) CHECK(ev >= -1e-8);
  for (std::size_t k = 1; k < rep.eigenvalues.size(); ++k) CHECK(rep.eigenvalues[k] >= rep.eigenvalues[k - 1]);
  for (double r : rep.residuals) CHECK(r < 1e-6);
  CHECK(rep.zero_cluster_size == ac_dimension_formula(0.5));
  CHECK(rep.analytic_overlap > 0.99);
  CHECK_THROWS_AS(low_spectrum(op, 100), ValidationError);
}

TEST_CASE("strong convergence probe limits") {
  const MagneticOperator op = assemble_R(0.5, 10.0, 65);
  const GroundSpaceReport rep = low_spectrum(op, 6);
  const CMatrix cluster = rep.eigenvectors.leftCols(rep.zero_cluster_size);
  const CVector inside = cluster.col(0);
  for (double r : strong_convergence_probe(op, cluster, {1.0, 4.0}, 0.5, inside, 32)) CHECK(r < 1e-2);

  std::mt19937_64 rng(4);
  std::normal_distribution<double> d;
  CVector phi(op.R.rows());
  for (auto& x : phi) x = cplx(d(rng), d(rng));
  phi -= cluster * (cluster.adjoint() * phi);
  phi /= phi.norm();
  const auto res = strong_convergence_probe(op, cluster, {1.0, 2.0, 4.0}, 0.5, phi, 32);
  CHECK(res[0] > res[1]);
  CHECK(res[1] > res[2]);
}

TEST_CASE("grid kernel properties") {
  const MagneticOperator op = assemble_R(0.5, 8.0, 97);
  const SymbolFn h = table_symbol("J3", 0.5);
  const cplx z(0.2, 0.0), zp(-0.1, 0.3);
  const PropagationReport ab = propagate_kernel(op, h, 1.0, 0.5, z, zp, 16);
  const PropagationReport ba = propagate_kernel(op, h, 1.0, 0.5, zp, z, 16);
  // The semigroup is self-adjoint, so swapping the points conjugates the kernel.
  CHECK(std::abs(ab.value - std::conj(ba.value)) < 1e-3 * std::abs(ab.value));
  CHECK(ab.richardson_ok);

  // Short times approach the free heat kernel at coincident points.
  const PropagationReport tiny = propagate_kernel(op, constant_symbol(0.0), 1.0, 0.5, 0.0, 0.0, 16);
  const double free05 = 1.0 / (4.0 * oracle::kPi * 0.5);
  CHECK(tiny.value.real() > 0.5 * free05);

  CHECK_THROWS_AS(propagate_kernel(op, h, 1.0, 0.5, cplx(7.95, 0.0), zp, 8), ValidationError);
  CHECK_THROWS_AS(propagate_kernel(op, h, 200.0, 0.5, z, zp, 8), NumericalError);
}
