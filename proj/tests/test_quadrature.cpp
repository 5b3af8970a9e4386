// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include <spinpath/quadrature.hpp>
#include <spinpath/quantization.hpp>
#include <spinpath/spin.hpp>
#include <spinpath/symbols.hpp>

#include "oracles.hpp"

using namespace spinpath;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix direct_matrix(const std::string& name, int two_j) {
  const oracle::Ladder L = oracle::ladder(two_j);
  if (name == "J+") return L.plus;
  if (name == "J-") return L.minus;
  if (name == "J3") return L.j3;
  if (name == "J+J-") return L.plus * L.minus;
  if (name == "J-J+") return L.minus * L.plus;
  return L.j3 * L.j3;
}

}  // namespace

TEST_CASE("gauss legendre integrates polynomials exactly") {
  const auto r = gauss_legendre(12);
  REQUIRE(r.nodes.size() == 12);
  for (std::size_t k = 1; k < r.nodes.size(); ++k) CHECK(r.nodes[k] > r.nodes[k - 1]);
  for (int p = 0; p <= 23; ++p) {
    double s = 0.0;
    for (std::size_t k = 0; k < r.nodes.size(); ++k) s += r.weights[k] * std::pow(r.nodes[k], p);
    const double exact = (p % 2) ? 0.0 : 2.0 / (p + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-13));
  }
  CHECK_THROWS_AS(gauss_legendre(0), ValidationError);
}

TEST_CASE("planar integrals") {
  // int g^2 = (2j+1)/pi * pi/(2j+1) = 1 for every j.
  for (int two_j = 0; two_j <= 6; ++two_j) {
    const double j = 0.5 * two_j;
    const cplx v = integrate(PlanarQuadrature::for_spin(j), [&](cplx z) {
      const double gz = weight_g(j, z);
      return cplx(gz * gz);
    });
    const double expect = (2 * j + 1) / oracle::kPi * oracle::plane_power_integral(2 * j + 2);
    CHECK(v.real() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect == doctest::Approx(1.0));
  }
  const auto q = PlanarQuadrature::for_spin(1.0);
  CHECK(std::abs(integrate(q, [](cplx) { return cplx(0.0); })) == 0.0);
  const cplx tr = integrate(q, [](cplx z) { return coherent_overlap(1.0, z, z); });
  CHECK(tr.real() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(integrate(q, [](cplx) { return cplx(std::nan("")); }), NumericalError);
}

TEST_CASE("table symbol values") {
  CHECK(table_symbol("J3", 1.0)(0.0).real() == doctest::Approx(-2.0));
  CHECK(std::abs(table_symbol("J3", 2.5)(std::polar(1.0, 0.7))) < 1e-15);
  CHECK(table_symbol("J+J-", 0.5)(0.0).real() == doctest::Approx(-3.0));
  CHECK(table_symbol("J−", 0.5).name == table_symbol("J-", 0.5).name);
  CHECK(table_symbol_names().size() == 6);
  CHECK_THROWS_AS(table_symbol("J4", 0.5), ValidationError);
}

TEST_CASE("declared sup norm bounds hold") {
  std::mt19937_64 rng(1);
  std::lognormal_distribution<double> r(0.0, 2.0);
  std::uniform_real_distribution<double> th(0.0, 2 * oracle::kPi);
  for (int two_j = 1; two_j <= 8; ++two_j) {
    for (const auto& name : table_symbol_names()) {
      const SymbolFn h = table_symbol(name, 0.5 * two_j);
      for (int k = 0; k < 2000; ++k) {
        const cplx z = std::polar(r(rng), th(rng));
        CHECK_MESSAGE(std::abs(h(z)) <= h.sup_norm_bound * (1 + 1e-12), name);
      }
    }
  }
  CHECK_THROWS_AS(make_symbol("bad", [](cplx z) { return z; }, 1.0, false), ValidationError);
}

TEST_CASE("reconstruction reproduces the table") {
  for (int two_j = 1; two_j <= 4; ++two_j) {
    for (const auto& name : table_symbol_names()) {
      const CMatrix M = reconstruct_operator(table_symbol(name, 0.5 * two_j), 0.5 * two_j);
      CHECK_MESSAGE(max_abs(M - direct_matrix(name, two_j)) <= 1e-10, name << " 2j=" << two_j);
    }
    const CMatrix I = reconstruct_operator(constant_symbol(1.0), 0.5 * two_j);
    CHECK(max_abs(I - CMatrix::Identity(two_j + 1, two_j + 1)) <= 1e-12);
  }
}

TEST_CASE("reconstruction is stable under node doubling") {
  for (int two_j = 1; two_j <= 10; ++two_j) {
    const double j = 0.5 * two_j;
    const auto q = PlanarQuadrature::for_spin(j);
    for (const auto& name : table_symbol_names()) {
      const SymbolFn h = table_symbol(name, j);
      CHECK(max_abs(reconstruct_operator(h, j, q) - reconstruct_operator(h, j, q.refined())) < 1e-10);
    }
  }
}

TEST_CASE("reconstruction is linear") {
  const double j = 1.5;
  const SymbolFn a = table_symbol("J+", j), b = table_symbol("J3^2", j);
  const cplx ca(0.3, -1.1), cb(-2.0, 0.4);
  const SymbolFn ab = symbol_combination({{"J+", ca}, {"J3^2", cb}}, j);
  const CMatrix lhs = reconstruct_operator(ab, j);
  const CMatrix rhs = ca * reconstruct_operator(a, j) + cb * reconstruct_operator(b, j);
  CHECK(max_abs(lhs - rhs) < 1e-12);
}

TEST_CASE("unity resolution residual") {
  CHECK(unity_resolution_residual(0.0) <= 1e-12);
  CHECK(unity_resolution_residual(1.5) <= 1e-10);
  CHECK(unity_resolution_residual(5.0) <= 1e-10);
}

TEST_CASE("generalized j quantization") {
  for (double j : {0.3, 0.7, 1.2, 2.6}) {
    const QuantizationResult q = quantize_general_j(j, constant_symbol(1.0));
    const int d = rounded_two_j(j) + 1;
    REQUIRE(q.H_psi.rows() == d);
    CHECK(max_abs(q.H_psi - CMatrix::Identity(d, d)) <= 1e-8);
  }
  const QuantizationResult h = quantize_general_j(0.7, table_symbol("J3", 0.7));
  CHECK(max_abs(h.H_psi - h.H_psi.adjoint()) < 1e-12);
  CHECK(h.j_rounded == doctest::Approx(1.0));

  const SymbolFn s = table_symbol("J-J+", 1.5);
  CHECK(max_abs(quantize_general_j(1.5, s).H_psi - reconstruct_operator(s, 1.5)) < 1e-12);
  CMatrix not_unitary = CMatrix::Identity(3, 3);
  not_unitary(0, 0) = 2.0;
  CHECK_THROWS_AS(quantize_general_j(0.7, s, not_unitary), ValidationError);
}

TEST_CASE("generalized radial integrals match Beta functions") {
  // int d^2z g^2 (1+|z|^2)^{2j} |z|^{2n}/C = 1/C * (2j+1) * B(n+1, 2j+1-n) = 1.
  const double j = 0.7;
  const auto c = binomial_coefficients(j);
  CoherentFamily fam(j);
  const auto q = PlanarQuadrature::for_spin(j);
  for (int n = 0; n < fam.dim(); ++n) {
    const cplx v = integrate(q, [&](cplx z) { return cplx(std::norm(fam.amplitudes(z)(n))); });
    const double beta = std::tgamma(n + 1.0) * std::tgamma(2 * j + 1 - n) / std::tgamma(2 * j + 2);
    CHECK(v.real() == doctest::Approx(c[n] * (2 * j + 1) * beta).epsilon(1e-8));
  }
}

TEST_CASE("Aharonov-Casher count") {
  CHECK(ac_dimension_formula(0.5) == 2);
  CHECK(ac_dimension_formula(0.7) == 3);
  CHECK(ac_dimension_formula(0.0) == 1);
  CHECK(ac_dimension_formula(2.6) == 7);
  CHECK(ac_dimension_formula(1.0) == 3);
}

TEST_CASE("symbol parsing") {
  CHECK(parse_symbol("0", 1.0).vanishes);
  CHECK(parse_symbol("1", 1.0)(0.3).real() == doctest::Approx(1.0));
  const SymbolFn c =
      parse_symbol(R"({"terms":[{"name":"J3","coeff_re":2.0,"coeff_im":0.0},{"name":"1","coeff_re":1.0}]})", 1.0);
  CHECK(c(0.0).real() == doctest::Approx(-3.0));
  CHECK_THROWS_AS(parse_symbol("{not json", 1.0), ValidationError);
  CHECK_THROWS_AS(parse_symbol("@/nonexistent/file.json", 1.0), ValidationError);
}
