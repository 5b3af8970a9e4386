// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "spinpath/errors.hpp"
#include "spinpath/philox.hpp"
#include "spinpath/symbols.hpp"

namespace spinpath {

struct BridgeConfig {
  cplx z_start;
  cplx z_end;
  double t = 1.0;
  double nu = 1.0;
  int m_steps = 2;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  void validate() const;
};

struct BridgePath {
  std::vector<double> times;    // s_k = k t / m
  std::vector<cplx> samples;    // b(s_k), endpoints pinned exactly
  double t = 0.0;
  double nu = 0.0;

  int m_steps() const { return static_cast<int>(samples.size()) - 1; }
};

// Draws b_{k+1} from the exact conditional law given b_k. Each real
// component has diffusion constant 2 nu, so E|b(s) - mean|^2 = 4 nu s (t-s)/t.
class BridgeSampler {
 public:
  explicit BridgeSampler(const BridgeConfig& cfg)
      : rng_(cfg.seed, cfg.stream_id), z_end_(cfg.z_end), b_(cfg.z_start), m_(cfg.m_steps),
        two_nu_dt_(2.0 * cfg.nu * cfg.t / cfg.m_steps) {}

  int step() const { return k_; }
  bool done() const { return k_ == m_; }
  cplx current() const { return b_; }

  cplx advance() {
    const int remaining = m_ - k_;
    if (remaining == 1) {
      b_ = z_end_;
    } else {
      double n1, n2;
      rng_.normal_pair(static_cast<std::uint32_t>(k_), n1, n2);
      const double sd = std::sqrt(two_nu_dt_ * (remaining - 1) / remaining);
      const double inv = 1.0 / remaining;
      b_ = cplx(b_.real() + (z_end_.real() - b_.real()) * inv + sd * n1,
                b_.imag() + (z_end_.imag() - b_.imag()) * inv + sd * n2);
    }
    ++k_;
    return b_;
  }

 private:
  PhiloxNormalStream rng_;
  cplx z_end_;
  cplx b_;
  int m_;
  int k_ = 0;
  double two_nu_dt_;
};

BridgePath sample_bridge(const BridgeConfig& cfg);

struct PathFunctionals {
  cplx kinetic_strat;   // purely imaginary
  double nu_term = 0.0;
  cplx symbol_term;
  cplx ito_log_form;
};

// Streams samples b_0, b_1, ... and accumulates every discretized functional
// without storing the path. Stratonovich uses midpoints, Ito left endpoints,
// Lebesgue integrals the trapezoid rule. Arithmetic is spelled out on real
// parts to keep the per-step cost low.
class PathAccumulator {
 public:
  PathAccumulator(double j, double nu, double dt, const SymbolFn* h, cplx b0)
      : j1_(j + 1.0), nu_(nu), dt_(dt), h_(h && !h->vanishes ? h : nullptr), x0_(b0.real()), y0_(b0.imag()),
        x_(x0_), y_(y0_) {
    last_f_ = density(x_, y_);
    nu_sum_ = 0.5 * last_f_;
    if (h_) {
      last_h_ = h_->h(b0);
      sym_sum_ = 0.5 * last_h_;
    }
  }

  void push(cplx b) {
    const double xn = b.real(), yn = b.imag();
    const double dx = xn - x_, dy = yn - y_;
    const double mx = 0.5 * (xn + x_), my = 0.5 * (yn + y_);
    // Im(db * conj(mid)) = dy mx - dx my
    kin_im_ += 2.0 * (dy * mx - dx * my) / (1.0 + mx * mx + my * my);
    // conj(db) * b_k = (dx - i dy)(x + i y)
    const double q = 1.0 / (1.0 + x_ * x_ + y_ * y_);
    ito_re_ += (dx * x_ + dy * y_) * q;
    ito_im_ += (dx * y_ - dy * x_) * q;
    last_f_ = density(xn, yn);
    nu_sum_ += last_f_;
    if (h_) {
      last_h_ = h_->h(b);
      sym_sum_ += last_h_;
    }
    x_ = xn;
    y_ = yn;
  }

  PathFunctionals finish() const {
    PathFunctionals f;
    f.kinetic_strat = cplx(0.0, kin_im_);
    f.nu_term = 4.0 * j1_ * nu_ * dt_ * (nu_sum_ - 0.5 * last_f_);
    f.symbol_term = h_ ? dt_ * (sym_sum_ - 0.5 * last_h_) : cplx(0.0);
    const double log_ratio = std::log((1.0 + x_ * x_ + y_ * y_) / (1.0 + x0_ * x0_ + y0_ * y0_));
    f.ito_log_form = cplx(j1_ * (log_ratio - 2.0 * ito_re_), -2.0 * j1_ * ito_im_);
    return f;
  }

 private:
  static double density(double x, double y) {
    const double q = 1.0 + x * x + y * y;
    return 1.0 / (q * q);
  }

  double j1_;
  double nu_;
  double dt_;
  const SymbolFn* h_;
  double x0_, y0_;
  double x_, y_;
  double kin_im_ = 0.0;
  double ito_re_ = 0.0, ito_im_ = 0.0;
  double nu_sum_ = 0.0;
  cplx sym_sum_ = 0.0;
  double last_f_ = 0.0;
  cplx last_h_ = 0.0;
};

PathFunctionals path_functionals(const BridgePath& path, double j, const SymbolFn* h);

cplx kinetic_stratonovich(const BridgePath& path);
double nu_term(const BridgePath& path, double j, double nu);
cplx symbol_term(const BridgePath& path, const SymbolFn& h);
// (j+1)[ln((1+|b_t|^2)/(1+|b_0|^2)) - 2 sum conj(db_k) b_k/(1+|b_k|^2)]
cplx ito_weight(const BridgePath& path, double j);

// (4 pi T nu)^{-1} exp(-|z - z'|^2 / (4 T nu)), the free planar heat kernel.
double free_kernel_prefactor(cplx z, cplx zp, double T, double nu);

}  // namespace spinpath
