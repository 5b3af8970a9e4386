// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinpath/bridge.hpp"

#include <cmath>

namespace spinpath {

void BridgeConfig::validate() const {
  if (m_steps < 2) throw ValidationError("bridge needs m_steps >= 2");
  if (!std::isfinite(t) || t <= 0.0) throw ValidationError("bridge needs finite t > 0");
  if (!std::isfinite(nu) || nu <= 0.0) throw ValidationError("bridge needs finite nu > 0");
  if (!std::isfinite(z_start.real()) || !std::isfinite(z_start.imag()) || !std::isfinite(z_end.real()) ||
      !std::isfinite(z_end.imag())) {
    throw ValidationError("bridge endpoints must be finite");
  }
}

BridgePath sample_bridge(const BridgeConfig& cfg) {
  cfg.validate();
  BridgePath p;
  p.t = cfg.t;
  p.nu = cfg.nu;
  p.times.resize(cfg.m_steps + 1);
  p.samples.resize(cfg.m_steps + 1);
  for (int k = 0; k <= cfg.m_steps; ++k) p.times[k] = cfg.t * k / cfg.m_steps;
  BridgeSampler s(cfg);
  p.samples[0] = cfg.z_start;
  for (int k = 1; k <= cfg.m_steps; ++k) p.samples[k] = s.advance();
  return p;
}

PathFunctionals path_functionals(const BridgePath& path, double j, const SymbolFn* h) {
  if (path.samples.size() < 2) throw ValidationError("path needs at least two samples");
  PathAccumulator acc(j, path.nu, path.t / path.m_steps(), h, path.samples.front());
  for (std::size_t k = 1; k < path.samples.size(); ++k) acc.push(path.samples[k]);
  return acc.finish();
}

cplx kinetic_stratonovich(const BridgePath& path) { return path_functionals(path, 0.0, nullptr).kinetic_strat; }

double nu_term(const BridgePath& path, double j, double nu) {
  BridgePath p = path;
  p.nu = nu;
  return path_functionals(p, j, nullptr).nu_term;
}

cplx symbol_term(const BridgePath& path, const SymbolFn& h) {
  if (h.vanishes) return 0.0;
  return path_functionals(path, 0.0, &h).symbol_term;
}

cplx ito_weight(const BridgePath& path, double j) { return path_functionals(path, j, nullptr).ito_log_form; }

double free_kernel_prefactor(cplx z, cplx zp, double T, double nu) {
  return std::exp(-std::norm(z - zp) / (4.0 * T * nu)) / (4.0 * kPi * T * nu);
}

}  // namespace spinpath
