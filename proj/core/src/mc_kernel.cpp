// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinpath/mc_kernel.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "spinpath/bridge.hpp"
#include "spinpath/quantization.hpp"
#include "spinpath/semigroup.hpp"
#include "spinpath/spin.hpp"

namespace spinpath {
namespace {

constexpr int kMaxBatches = 32;

struct EstimatorSetup {
  const SymbolFn* h;
  double j;
  cplx z, zp;
  double nu;
  double horizon;
  cplx lambda;  // multiplies the symbol term
  long long n_paths;
  int m_steps;
  std::uint64_t seed;
  WeightForm form;
};

cplx path_weight(const EstimatorSetup& s, std::uint64_t stream) {
  BridgeConfig cfg{s.z, s.zp, s.horizon, s.nu, s.m_steps, s.seed, stream};
  BridgeSampler sampler(cfg);
  PathAccumulator acc(s.j, s.nu, s.horizon / s.m_steps, s.h, s.z);
  while (!sampler.done()) acc.push(sampler.advance());
  const PathFunctionals f = acc.finish();
  const cplx sym = s.lambda * f.symbol_term;
  if (s.form == WeightForm::Stratonovich) {
    return std::exp(cplx(f.nu_term, 0.0) + (s.j + 1.0) * f.kinetic_strat - sym);
  }
  return std::exp(f.ito_log_form - sym);
}

KernelEstimate run(const EstimatorSetup& s, const McOptions& opt) {
  if (s.n_paths < 1) throw ValidationError("n_paths must be positive");
  if (s.m_steps < 2) throw ValidationError("m_steps must be at least 2");
  if (!std::isfinite(s.nu) || s.nu <= 0.0) throw ValidationError("nu must be finite and positive");
  if (!std::isfinite(s.horizon) || s.horizon <= 0.0) throw ValidationError("bridge duration must be positive");
  if (!std::isfinite(s.j) || s.j < 0.0) throw ValidationError("j must be nonnegative");
  if (!std::isfinite(s.h->sup_norm_bound)) throw ValidationError("Monte Carlo needs a bounded symbol");

  const auto t0 = std::chrono::steady_clock::now();
  const int nb = static_cast<int>(std::min<long long>(kMaxBatches, s.n_paths));
  std::vector<cplx> sums(nb);
  std::vector<long long> counts(nb);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (int b; (b = next.fetch_add(1)) < nb;) {
      const long long lo = s.n_paths * b / nb;
      const long long hi = s.n_paths * (b + 1) / nb;
      cplx acc = 0.0;
      try {
        for (long long p = lo; p < hi; ++p) {
          const cplx w = path_weight(s, static_cast<std::uint64_t>(p));
          if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
            throw NumericalError("non-finite path weight; increase m_steps for this nu");
          }
          acc += w;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(nb);
        return;
      }
      sums[b] = acc;
      counts[b] = hi - lo;
    }
  };

  const int threads = std::max(1, std::min(opt.threads, nb));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  const double pref = free_kernel_prefactor(s.z, s.zp, s.horizon, s.nu);
  cplx total = 0.0;
  for (int b = 0; b < nb; ++b) total += sums[b];
  KernelEstimate e;
  e.value = pref * total / static_cast<double>(s.n_paths);
  if (nb >= 2) {
    double vr = 0.0, vi = 0.0;
    for (int b = 0; b < nb; ++b) {
      const cplx mb = pref * sums[b] / static_cast<double>(counts[b]);
      vr += (mb.real() - e.value.real()) * (mb.real() - e.value.real());
      vi += (mb.imag() - e.value.imag()) * (mb.imag() - e.value.imag());
    }
    e.std_error_re = std::sqrt(vr / (nb - 1) / nb);
    e.std_error_im = std::sqrt(vi / (nb - 1) / nb);
  }
  e.std_error = std::hypot(e.std_error_re, e.std_error_im);
  e.n_paths = s.n_paths;
  e.m_steps = s.m_steps;
  e.n_batches = nb;
  e.nu = s.nu;
  e.horizon = s.horizon;
  e.z = s.z;
  e.zp = s.zp;
  e.j = s.j;
  e.symbol_name = s.h->name;
  e.seed = s.seed;
  e.form = s.form;
  e.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return e;
}

}  // namespace

std::string to_string(WeightForm f) { return f == WeightForm::Stratonovich ? "strat" : "ito"; }

std::string to_string(KernelVariant v) {
  switch (v) {
    case KernelVariant::Semigroup: return "semigroup";
    case KernelVariant::LongTime: return "long-time";
    case KernelVariant::Unitary: return "unitary";
  }
  return "semigroup";
}

WeightForm parse_weight_form(const std::string& s) {
  if (s == "strat" || s == "stratonovich") return WeightForm::Stratonovich;
  if (s == "ito") return WeightForm::Ito;
  throw ValidationError("form must be 'strat' or 'ito'");
}

int scaled_m_steps(double nu, double horizon) {
  return std::max(256, static_cast<int>(std::ceil(64.0 * nu * horizon)));
}

KernelEstimate estimate_kernel(const SymbolFn& h, double j, double t, cplx z, cplx zp, double nu,
                               long long n_paths, int m_steps, std::uint64_t seed, WeightForm form,
                               const McOptions& opt) {
  if (!std::isfinite(t) || t <= 0.0) throw ValidationError("t must be positive");
  KernelEstimate e = run({&h, j, z, zp, nu, t, cplx(1.0, 0.0), n_paths, m_steps, seed, form}, opt);
  e.t = t;
  return e;
}

KernelEstimate long_time_estimate(const SymbolFn& h, double j, double t, cplx z, cplx zp, double nu, double u,
                                  long long n_paths, int m_steps, std::uint64_t seed, WeightForm form,
                                  const McOptions& opt) {
  if (!std::isfinite(t)) throw ValidationError("t must be finite");
  if (!std::isfinite(u) || u <= 0.0) throw ValidationError("horizon u must be positive");
  KernelEstimate e = run({&h, j, z, zp, nu, u, cplx(t / u, 0.0), n_paths, m_steps, seed, form}, opt);
  e.t = t;
  e.variant = KernelVariant::LongTime;
  return e;
}

KernelEstimate unitary_estimate(const SymbolFn& h, double j, double t, cplx z, cplx zp, double nu,
                                long long n_paths, int m_steps, std::uint64_t seed, WeightForm form,
                                const McOptions& opt) {
  if (!std::isfinite(t) || t == 0.0) throw ValidationError("t must be finite and nonzero");
  // exp(-i t H) for t < 0 is the bridge over |t| with the phase reversed.
  const cplx lambda(0.0, t > 0.0 ? 1.0 : -1.0);
  KernelEstimate e = run({&h, j, z, zp, nu, std::abs(t), lambda, n_paths, m_steps, seed, form}, opt);
  e.t = t;
  e.variant = KernelVariant::Unitary;
  e.inconclusive = e.std_error > std::abs(e.value);
  return e;
}

cplx exact_reference(const SymbolFn& h, double j, double t, cplx z, cplx zp, bool unitary) {
  const CMatrix H = reconstruct_operator(h, j);
  return unitary ? exact_kernel_unitary(H, t, z, zp) : exact_kernel(H, t, z, zp);
}

SweepResult nu_sweep(const SymbolFn& h, double j, double t, cplx z, cplx zp, const std::vector<double>& nus,
                     long long n_paths, int m_steps, std::uint64_t seed, const SweepOptions& opt) {
  if (nus.empty()) throw ValidationError("nu list is empty");
  for (std::size_t i = 1; i < nus.size(); ++i) {
    if (!(nus[i] > nus[i - 1])) throw ValidationError("nu list must be strictly increasing");
  }
  SweepResult r;
  r.exact = exact_reference(h, j, t, z, zp, opt.unitary);
  for (double nu : nus) {
    const int m = m_steps > 0 ? m_steps : scaled_m_steps(nu, std::abs(t));
    KernelEstimate e = opt.unitary ? unitary_estimate(h, j, t, z, zp, nu, n_paths, m, seed, opt.form, opt.mc)
                                   : estimate_kernel(h, j, t, z, zp, nu, n_paths, m, seed, opt.form, opt.mc);
    r.distances.push_back(std::abs(e.value - r.exact));
    const bool noisy = e.std_error > 0.1 * std::abs(r.exact);
    r.estimates.push_back(std::move(e));
    if (noisy && !r.variance_stop) {
      r.variance_stop = true;
      r.variance_stop_nu = nu;
      if (opt.stop_on_variance) break;
    }
  }
  return r;
}

}  // namespace spinpath
