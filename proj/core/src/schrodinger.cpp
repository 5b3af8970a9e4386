// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinpath/schrodinger.hpp"

#include <cmath>
#include <sstream>

#include "sparse_factor.hpp"

namespace spinpath {
namespace {

struct Bilinear {
  int idx[4];
  double w[4];
};

Bilinear bilinear(const Grid& g, cplx z) {
  const double fx = (z.real() + g.L) / g.delta();
  const double fy = (z.imag() + g.L) / g.delta();
  const int ix = static_cast<int>(std::floor(fx));
  const int iy = static_cast<int>(std::floor(fy));
  if (ix < 2 || iy < 2 || ix + 3 >= g.n || iy + 3 >= g.n) {
    throw ValidationError("kernel points must lie well inside the box");
  }
  const double a = fx - ix, b = fy - iy;
  return {{g.index(ix, iy), g.index(ix + 1, iy), g.index(ix, iy + 1), g.index(ix + 1, iy + 1)},
          {(1 - a) * (1 - b), a * (1 - b), (1 - a) * b, a * b}};
}

using Factor = detail::HermitianFactor;

SpMatrix shifted_identity(const SpMatrix& R, double scale) {
  SpMatrix M = scale * R;
  for (int i = 0; i < M.rows(); ++i) M.coeffRef(i, i) += 1.0;
  return M;
}

// One march: n_time Strang steps of size tau; the first CN half step is
// replaced by two backward-Euler steps of tau/4, which share the matrix.
CVector march(const SpMatrix& A, const Factor& M, const CVector& u0, const CVector* phase, int n_time, double tau) {
  const SpMatrix& R = A;
  auto cn_half = [&](const CVector& u) {
    CVector rhs = u - (0.25 * tau) * (R * u);
    return CVector(M.solve(rhs));
  };
  CVector u = u0;
  for (int s = 0; s < n_time; ++s) {
    if (s == 0) {
      u = M.solve(u);
      u = M.solve(u);
    } else {
      u = cn_half(u);
    }
    if (phase) u = u.cwiseProduct(*phase);
    u = cn_half(u);
  }
  return u;
}

double boundary_fraction(const Grid& g, const CVector& u) {
  double edge = 0.0, total = 0.0;
  for (int ix = 0; ix < g.n; ++ix) {
    for (int iy = 0; iy < g.n; ++iy) {
      const double a = std::abs(u[g.index(ix, iy)]);
      total += a;
      if (ix <= 2 || iy <= 2 || ix >= g.n - 3 || iy >= g.n - 3) edge += a;
    }
  }
  return total > 0.0 ? edge / total : 0.0;
}

}  // namespace

CVector heat_semigroup(const MagneticOperator& op, double s, const CVector& phi, int n_time) {
  if (n_time < 1) throw ValidationError("n_time must be positive");
  if (s == 0.0) return phi;
  const double tau = s / n_time;
  Factor M(shifted_identity(op.R, 0.25 * tau));
  if (M.info() != Eigen::Success) throw NumericalError("Crank-Nicolson factorization failed");
  return march(op.R, M, phi, nullptr, n_time, tau);
}

PropagationReport propagate_kernel(const MagneticOperator& op, const SymbolFn& h, double nu, double t, cplx z,
                                   cplx zp, int n_time, const PropagationOptions& opt) {
  if (!std::isfinite(nu) || nu <= 0.0) throw ValidationError("nu must be positive");
  if (!std::isfinite(t) || t <= 0.0) throw ValidationError("t must be positive");
  if (n_time < 1) throw ValidationError("n_time must be positive");
  const Grid& g = op.grid;
  const Bilinear src = bilinear(g, zp);
  const Bilinear dst = bilinear(g, z);
  CVector u0 = CVector::Zero(g.size());
  const double inv_area = 1.0 / (g.delta() * g.delta());
  for (int c = 0; c < 4; ++c) u0[src.idx[c]] += src.w[c] * inv_area;

  const SpMatrix A = nu * op.R;
  auto run = [&](int steps, double& leak) {
    const double tau = t / steps;
    CVector phase;
    if (!h.vanishes) {
      phase.resize(g.size());
      for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy) phase[g.index(ix, iy)] = std::exp(-tau * h.h(g.z(ix, iy)));
    }
    Factor M(shifted_identity(A, 0.25 * tau));
    if (M.info() != Eigen::Success) throw NumericalError("Crank-Nicolson factorization failed");
    const CVector u = march(A, M, u0, h.vanishes ? nullptr : &phase, steps, tau);
    leak = boundary_fraction(g, u);
    cplx v = 0.0;
    for (int c = 0; c < 4; ++c) v += dst.w[c] * u[dst.idx[c]];
    return v;
  };

  PropagationReport rep;
  rep.n_time = n_time;
  rep.value = run(n_time, rep.boundary_fraction);
  if (rep.boundary_fraction > opt.leak_tol) {
    std::ostringstream os;
    os << "boundary leak: fraction " << rep.boundary_fraction << " of the mass lies within 2 cells of the edge";
    throw NumericalError(os.str());
  }
  if (opt.richardson) {
    double leak2 = 0.0;
    rep.value_refined = run(2 * n_time, leak2);
    rep.richardson_change = std::abs(rep.value_refined - rep.value) / std::max(std::abs(rep.value_refined), 1e-300);
    rep.richardson_ok = rep.richardson_change < opt.richardson_tol;
  } else {
    rep.value_refined = rep.value;
  }
  return rep;
}

PropagationReport propagate_kernel(const SymbolFn& h, double j, double nu, double t, cplx z, cplx zp, double L,
                                   int n, int n_time, const PropagationOptions& opt) {
  const MagneticOperator op = assemble_R(j, L, n, opt.order);
  return propagate_kernel(op, h, nu, t, z, zp, n_time, opt);
}

std::vector<double> strong_convergence_probe(const MagneticOperator& op, const CMatrix& cluster,
                                             const std::vector<double>& nus, double t, const CVector& phi,
                                             int n_time) {
  if (phi.size() != op.R.rows()) throw ValidationError("probe vector does not match the grid");
  const CVector p0 = cluster.cols() > 0 ? CVector(cluster * (cluster.adjoint() * phi)) : CVector::Zero(phi.size());
  std::vector<double> out;
  for (double nu : nus) {
    if (!std::isfinite(nu) || nu <= 0.0) throw ValidationError("nu must be positive");
    out.push_back((heat_semigroup(op, t * nu, phi, n_time) - p0).norm());
  }
  return out;
}

std::vector<double> strong_convergence_probe(double j, const std::vector<double>& nus, double t, const CVector& phi,
                                             double L, int n) {
  const MagneticOperator op = assemble_R(j, L, n);
  const GroundSpaceReport rep = low_spectrum(op, default_spectrum_count(j));
  return strong_convergence_probe(op, rep.eigenvectors.leftCols(rep.zero_cluster_size), nus, t, phi);
}

}  // namespace spinpath
