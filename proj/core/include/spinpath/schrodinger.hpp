// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "spinpath/magnetic.hpp"
#include "spinpath/symbols.hpp"

namespace spinpath {

struct PropagationOptions {
  int order = 3;              // stencil order of the factorized operator
  bool richardson = true;     // repeat with 2 n_time and report the change
  double richardson_tol = 0.01;
  double leak_tol = 1e-6;
};

struct PropagationReport {
  cplx value;                  // kernel at (z, z') from the n_time run
  cplx value_refined;          // from the 2 n_time run, if requested
  double richardson_change = 0.0;  // |refined - value| / |refined|
  bool richardson_ok = true;
  double boundary_fraction = 0.0;  // l1 mass within 2 delta of the edge
  int n_time = 0;
};

// exp(-t (nu R + h)) (z, z') on the grid: a bilinear point source at z',
// Strang splitting with Crank-Nicolson half steps for nu R (two backward
// Euler quarter steps start the march), exp(-tau h) at the nodes, and a
// bilinear read-off at z. Throws NumericalError on a boundary leak.
PropagationReport propagate_kernel(const SymbolFn& h, double j, double nu, double t, cplx z, cplx zp, double L,
                                   int n, int n_time, const PropagationOptions& opt = {});

// Same on an already assembled operator.
PropagationReport propagate_kernel(const MagneticOperator& op, const SymbolFn& h, double nu, double t, cplx z,
                                   cplx zp, int n_time, const PropagationOptions& opt = {});

// exp(-s R) phi by Crank-Nicolson with a backward Euler start.
CVector heat_semigroup(const MagneticOperator& op, double s, const CVector& phi, int n_time);

// |exp(-t nu R) phi - E0 phi| for each nu, E0 the projector on the columns of
// cluster (orthonormal).
std::vector<double> strong_convergence_probe(const MagneticOperator& op, const CMatrix& cluster,
                                             const std::vector<double>& nus, double t, const CVector& phi,
                                             int n_time = 64);

// Convenience form: assembles R, extracts the zero cluster and probes.
std::vector<double> strong_convergence_probe(double j, const std::vector<double>& nus, double t, const CVector& phi,
                                             double L, int n);

}  // namespace spinpath
