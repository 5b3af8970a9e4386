// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinpath/symbols.hpp"

namespace spinpath {

enum class WeightForm { Stratonovich, Ito };
enum class KernelVariant { Semigroup, LongTime, Unitary };

std::string to_string(WeightForm f);
std::string to_string(KernelVariant v);
WeightForm parse_weight_form(const std::string& s);

struct KernelEstimate {
  cplx value;
  double std_error = 0.0;  // modulus of the componentwise errors
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  long long n_paths = 0;
  int m_steps = 0;
  int n_batches = 0;
  double nu = 0.0;
  double t = 0.0;
  double horizon = 0.0;  // bridge duration; equals t except for the long-time variant
  cplx z;
  cplx zp;
  double j = 0.0;
  std::string symbol_name;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
  WeightForm form = WeightForm::Stratonovich;
  KernelVariant variant = KernelVariant::Semigroup;
  bool inconclusive = false;  // unitary only: std_error > |value|
};

struct McOptions {
  int threads = 1;
};

// m = max(256, ceil(64 nu T)).
int scaled_m_steps(double nu, double horizon);

KernelEstimate estimate_kernel(const SymbolFn& h, double j, double t, cplx z, cplx zp, double nu,
                               long long n_paths, int m_steps, std::uint64_t seed,
                               WeightForm form = WeightForm::Stratonovich, const McOptions& opt = {});

// Bridge over [0, u] with the symbol term scaled by t/u; t may have any sign.
KernelEstimate long_time_estimate(const SymbolFn& h, double j, double t, cplx z, cplx zp, double nu, double u,
                                  long long n_paths, int m_steps, std::uint64_t seed,
                                  WeightForm form = WeightForm::Stratonovich, const McOptions& opt = {});

// exp(-i t H) regularized: symbol term multiplied by i sign(t) on a bridge of
// duration |t|. Flags inconclusive when std_error > |value|.
KernelEstimate unitary_estimate(const SymbolFn& h, double j, double t, cplx z, cplx zp, double nu,
                                long long n_paths, int m_steps, std::uint64_t seed,
                                WeightForm form = WeightForm::Stratonovich, const McOptions& opt = {});

struct SweepOptions {
  WeightForm form = WeightForm::Stratonovich;
  bool unitary = false;
  // Stop after the first nu whose std_error exceeds 10% of |exact|.
  bool stop_on_variance = true;
  McOptions mc;
};

struct SweepResult {
  std::vector<KernelEstimate> estimates;
  std::vector<double> distances;  // |estimate - exact|
  cplx exact;
  bool variance_stop = false;
  double variance_stop_nu = 0.0;
};

// m_steps <= 0 selects scaled_m_steps(nu, t) for each nu. Every nu uses the
// same seed.
SweepResult nu_sweep(const SymbolFn& h, double j, double t, cplx z, cplx zp, const std::vector<double>& nus,
                     long long n_paths, int m_steps, std::uint64_t seed, const SweepOptions& opt = {});

// Exact reference used by sweeps: the semigroup or unitary kernel of the
// operator reconstructed from h.
cplx exact_reference(const SymbolFn& h, double j, double t, cplx z, cplx zp, bool unitary);

}  // namespace spinpath
