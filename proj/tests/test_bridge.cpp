// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <spinpath/bridge.hpp>
#include <spinpath/philox.hpp>
#include <spinpath/symbols.hpp>

#include "oracles.hpp"

using namespace spinpath;

namespace {

BridgePath constant_path(cplx b, double t, double nu, int m) {
  BridgePath p;
  p.t = t;
  p.nu = nu;
  for (int k = 0; k <= m; ++k) {
    p.times.push_back(t * k / m);
    p.samples.push_back(b);
  }
  return p;
}

BridgePath line_path(cplx a, cplx b, double t, int m) {
  BridgePath p;
  p.t = t;
  p.nu = 1.0;
  for (int k = 0; k <= m; ++k) {
    p.times.push_back(t * k / m);
    p.samples.push_back(a + (b - a) * (double(k) / m));
  }
  p.samples.back() = b;
  return p;
}

// Smooth-path value of int (b' conj(b) - conj(b') b) / (1 + |b|^2).
cplx kinetic_line_oracle(cplx a, cplx b) {
  return oracle::segment_integral(a, b, [](cplx x, cplx d) {
    return (d * std::conj(x) - std::conj(d) * x) / (1.0 + std::norm(x));
  });
}

}  // namespace

TEST_CASE("philox known answers") {
  for (const auto& kat : oracle::philox_kats()) {
    const auto r = philox4x32_10({kat.ctr[0], kat.ctr[1], kat.ctr[2], kat.ctr[3]}, {kat.key[0], kat.key[1]});
    for (int i = 0; i < 4; ++i) CHECK(r[i] == kat.out[i]);
  }
  CHECK(PhiloxNormalStream::to_unit(0, 0) > 0.0);
  CHECK(PhiloxNormalStream::to_unit(0xffffffffu, 0xffffffffu) < 1.0);
}

TEST_CASE("bridge endpoints are exact and config is validated") {
  BridgeConfig cfg{cplx(0.3, -0.2), cplx(-1.7, 2.1), 0.8, 3.0, 37, 42, 5};
  const BridgePath p = sample_bridge(cfg);
  REQUIRE(p.m_steps() == 37);
  CHECK(p.samples.front() == cfg.z_start);
  CHECK(p.samples.back() == cfg.z_end);
  CHECK(p.times.back() == doctest::Approx(0.8));
  const BridgePath q = sample_bridge(cfg);
  CHECK(p.samples == q.samples);
  cfg.stream_id = 6;
  CHECK(sample_bridge(cfg).samples != p.samples);

  BridgeConfig bad = cfg;
  bad.m_steps = 1;
  CHECK_THROWS_AS(sample_bridge(bad), ValidationError);
  bad = cfg;
  bad.nu = 0.0;
  CHECK_THROWS_AS(sample_bridge(bad), ValidationError);
  bad = cfg;
  bad.t = std::nan("");
  CHECK_THROWS_AS(sample_bridge(bad), ValidationError);
}

TEST_CASE("bridge midpoint moments") {
  const int N = 100000;
  const cplx z(0.4, -0.2), zp(-1.0, 1.0);
  const double t = 1.0, nu = 1.0;
  for (int k_obs : {4, 8, 12}) {
    cplx s1 = 0.0, s2 = 0.0;
    double sa = 0.0, sa2 = 0.0;
    std::vector<cplx> vals(N);
    for (int i = 0; i < N; ++i) {
      const BridgePath p = sample_bridge({z, zp, t, nu, 16, 2024, static_cast<std::uint64_t>(i)});
      vals[i] = p.samples[k_obs];
      s1 += vals[i];
    }
    const cplx mean = s1 / double(N);
    for (const cplx& v : vals) {
      const double a = std::norm(v - mean);
      sa += a;
      sa2 += a * a;
      s2 += (v - mean) * (v - mean);
    }
    const double s = t * k_obs / 16.0;
    const cplx expect_mean = z + (zp - z) * (s / t);
    const double var = 4.0 * nu * (s - s * s / t);
    const double se_mean = std::sqrt(var / N);
    CHECK(std::abs(mean.real() - expect_mean.real()) < 4.0 * se_mean);
    CHECK(std::abs(mean.imag() - expect_mean.imag()) < 4.0 * se_mean);
    const double m_abs = sa / N;
    const double se_abs = std::sqrt((sa2 / N - m_abs * m_abs) / N);
    CHECK(std::abs(m_abs - var) < 4.0 * se_abs);
    const cplx pc = s2 / double(N);
    CHECK(std::abs(pc) < 4.0 * var / std::sqrt(double(N)));
  }
}

TEST_CASE("refinement keeps coarse marginals") {
  const int N = 2000;
  int passed = 0;
  std::vector<double> pvals;
  for (int run = 0; run < 20; ++run) {
    std::vector<double> coarse(N), fine(N);
    for (int i = 0; i < N; ++i) {
      const BridgeConfig c{0.0, cplx(1.0, 1.0), 1.0, 1.0, 16, 1000u + run, static_cast<std::uint64_t>(i)};
      BridgeConfig f = c;
      f.m_steps = 32;
      coarse[i] = sample_bridge(c).samples[4].real();
      fine[i] = sample_bridge(f).samples[8].real();
    }
    const double p = oracle::ks_pvalue(coarse, fine);
    pvals.push_back(p);
    passed += p > 0.01;
  }
  CHECK(passed == 20);
}

TEST_CASE("kinetic term") {
  CHECK(kinetic_stratonovich(constant_path(cplx(0.3, 0.4), 1.0, 1.0, 10)) == cplx(0.0));
  BridgeConfig cfg{cplx(0.1, 0.2), cplx(-0.5, 0.9), 1.0, 2.0, 64, 7, 0};
  BridgePath p = sample_bridge(cfg);
  const cplx k = kinetic_stratonovich(p);
  CHECK(k.real() == 0.0);
  CHECK(std::abs(k) > 0.0);
  BridgePath c = p;
  for (auto& s : c.samples) s = std::conj(s);
  CHECK(std::abs(kinetic_stratonovich(c) + k) < 1e-13);
  BridgePath r = p;
  const cplx phase = std::polar(1.0, 0.83);
  for (auto& s : r.samples) s *= phase;
  CHECK(std::abs(kinetic_stratonovich(r) - k) < 1e-12);

  const cplx a(1.0, -0.2), b(-0.3, 1.1);
  const cplx smooth = kinetic_line_oracle(a, b);
  CHECK(std::abs(smooth) > 0.1);
  const cplx mid = kinetic_stratonovich(line_path(a, b, 1.0, 4096));
  CHECK(std::abs(mid - smooth) < 1e-6);
}

TEST_CASE("nu term") {
  CHECK(nu_term(constant_path(0.0, 1.0, 1.0, 8), 0.5, 1.0) == doctest::Approx(6.0));
  CHECK(nu_term(constant_path(1.0, 1.0, 2.0, 8), 0.0, 2.0) == doctest::Approx(2.0));
  CHECK(nu_term(constant_path(1e6, 1.0, 1.0, 8), 0.5, 1.0) < 1e-20);
  const BridgePath p = sample_bridge({0.1, 0.2, 0.7, 3.0, 40, 3, 1});
  const double v = nu_term(p, 1.5, 3.0);
  CHECK(v > 0.0);
  CHECK(v <= 4.0 * 2.5 * 3.0 * 0.7);
}

TEST_CASE("symbol term") {
  const BridgePath p = sample_bridge({0.1, 0.2, 0.7, 3.0, 40, 3, 1});
  CHECK(std::abs(symbol_term(p, constant_symbol(cplx(2.0, -1.0))) - cplx(1.4, -0.7)) < 1e-14);
  CHECK(symbol_term(constant_path(0.0, 0.5, 1.0, 4), table_symbol("J3", 1.0)).real() ==
        doctest::Approx(-1.0));
  CHECK(std::abs(symbol_term(constant_path(std::polar(1.0, 2.0), 0.5, 1.0, 4), table_symbol("J3", 1.0))) < 1e-15);
  const SymbolFn h = table_symbol("J+", 1.0);
  CHECK(std::abs(symbol_term(p, h)) <= 0.7 * h.sup_norm_bound);
}

TEST_CASE("ito form") {
  const BridgePath loop = sample_bridge({cplx(0.5, 0.5), cplx(0.5, 0.5), 1.0, 1.0, 50, 8, 0});
  BridgePath rev = loop;
  std::reverse(rev.samples.begin(), rev.samples.end());
  CHECK(std::abs(ito_weight(loop, 0.5) - ito_weight(rev, 0.5)) > 1e-6);

  const cplx a(1.0, -0.2), b(-0.3, 1.1);
  const cplx smooth = 1.5 * kinetic_line_oracle(a, b);
  const cplx ito = ito_weight(line_path(a, b, 1.0, 8192), 0.5);
  CHECK(std::abs(ito - smooth) < 1e-3);
}

TEST_CASE("free kernel prefactor") {
  CHECK(free_kernel_prefactor(0.0, 0.0, 0.5, 2.0) == doctest::Approx(1.0 / (4.0 * oracle::kPi)));
  CHECK(free_kernel_prefactor(1.0, 0.0, 0.25, 1.0) == doctest::Approx(std::exp(-1.0) / oracle::kPi));
}
