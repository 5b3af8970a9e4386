// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinpath/magnetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "sparse_factor.hpp"

#include "spinpath/spin.hpp"

namespace spinpath {
namespace {

using Triplet = Eigen::Triplet<cplx>;

const std::map<int, double>& stencil(int order) {
  static const std::map<int, std::map<int, double>> table = {
      {1, {{0, -1.0}, {1, 1.0}}},
      {3, {{-1, -2.0 / 6}, {0, -3.0 / 6}, {1, 1.0}, {2, -1.0 / 6}}},
      {5, {{-2, 3.0 / 60}, {-1, -30.0 / 60}, {0, -20.0 / 60}, {1, 1.0}, {2, -15.0 / 60}, {3, 2.0 / 60}}},
  };
  auto it = table.find(order);
  if (it == table.end()) throw ValidationError("stencil order must be 1, 3 or 5");
  return it->second;
}

Grid checked_grid(double L, int n) {
  if (!std::isfinite(L) || L <= 0.0) throw ValidationError("box half-width L must be positive");
  if (n < 8) throw ValidationError("grid needs at least 8 nodes per axis");
  if (n > kMaxGridNodes) {
    std::ostringstream os;
    os << "grid with n = " << n << " exceeds the memory guard (n <= " << kMaxGridNodes << ")";
    throw ValidationError(os.str());
  }
  return Grid{L, n};
}

SpMatrix from_triplets(int N, const std::vector<Triplet>& t) {
  SpMatrix m(N, N);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

double vector_potential_1(double j, cplx z) { return 2.0 * (j + 1.0) * z.imag() / (1.0 + std::norm(z)); }
double vector_potential_2(double j, cplx z) { return -2.0 * (j + 1.0) * z.real() / (1.0 + std::norm(z)); }
double scalar_potential(double j, cplx z) {
  const double q = 1.0 + std::norm(z);
  return -4.0 * (j + 1.0) / (q * q);
}

SpMatrix magnetic_D_biased(double j, const Grid& grid, int order, int sign) {
  const auto& st = stencil(order);
  const int n = grid.n;
  const double inv = 1.0 / grid.delta();
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(grid.size()) * (2 * st.size() + 1));
  const cplx I(0.0, 1.0);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const int row = grid.index(ix, iy);
      const cplx z = grid.z(ix, iy);
      cplx diag = vector_potential_1(j, z) - I * vector_potential_2(j, z);
      for (const auto& [off, c] : st) {
        const int k = off * sign;
        const double w = c * sign * inv;
        if (k == 0) {
          diag += I * w + w;
          continue;
        }
        if (ix + k >= 0 && ix + k < n) t.emplace_back(row, grid.index(ix + k, iy), I * w);
        if (iy + k >= 0 && iy + k < n) t.emplace_back(row, grid.index(ix, iy + k), cplx(w));
      }
      t.emplace_back(row, row, diag);
    }
  }
  return from_triplets(grid.size(), t);
}

SpMatrix magnetic_D_centered(double j, const Grid& grid) {
  const int n = grid.n;
  const double h = 0.5 / grid.delta();
  const cplx I(0.0, 1.0);
  std::vector<Triplet> t;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const int row = grid.index(ix, iy);
      const cplx z = grid.z(ix, iy);
      t.emplace_back(row, row, vector_potential_1(j, z) - I * vector_potential_2(j, z));
      for (int s : {-1, 1}) {
        if (ix + s >= 0 && ix + s < n) t.emplace_back(row, grid.index(ix + s, iy), I * (s * h));
        if (iy + s >= 0 && iy + s < n) t.emplace_back(row, grid.index(ix, iy + s), cplx(s * h));
      }
    }
  }
  return from_triplets(grid.size(), t);
}

MagneticOperator assemble_R(double j, double L, int n, int order, Discretization scheme) {
  if (!std::isfinite(j) || j < 0.0) throw ValidationError("j must be nonnegative");
  MagneticOperator op;
  op.j = j;
  op.grid = checked_grid(L, n);
  op.scheme = scheme;
  op.order = order;
  const Grid& g = op.grid;
  const int N = g.size();
  op.a1.resize(N);
  op.a2.resize(N);
  op.v.resize(N);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const cplx z = g.z(ix, iy);
      const int k = g.index(ix, iy);
      op.a1[k] = vector_potential_1(j, z);
      op.a2[k] = vector_potential_2(j, z);
      op.v[k] = scalar_potential(j, z);
    }
  }

  SpMatrix R(N, N);
  if (scheme == Discretization::Factorized) {
    const SpMatrix Dp = magnetic_D_biased(j, g, order, +1);
    const SpMatrix Dm = magnetic_D_biased(j, g, order, -1);
    R = 0.5 * (SpMatrix(Dp.adjoint()) * Dp + SpMatrix(Dm.adjoint()) * Dm);
  } else {
    const double inv2 = 1.0 / (g.delta() * g.delta());
    const double h = 0.5 / g.delta();
    const cplx I(0.0, 1.0);
    std::vector<Triplet> t;
    // i(A.grad + grad.A) with centered differences: entry (p, q) for q = p + e
    // is i (A_p + A_q) h, which is Hermitian since h changes sign with e.
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) {
        const int p = g.index(ix, iy);
        const double a2sq = op.a1[p] * op.a1[p] + op.a2[p] * op.a2[p];
        t.emplace_back(p, p, cplx(4.0 * inv2 + a2sq + op.v[p]));
        for (int s : {-1, 1}) {
          if (ix + s >= 0 && ix + s < n) {
            const int q = g.index(ix + s, iy);
            t.emplace_back(p, q, cplx(-inv2) + I * (s * h) * (op.a1[p] + op.a1[q]));
          }
          if (iy + s >= 0 && iy + s < n) {
            const int q = g.index(ix, iy + s);
            t.emplace_back(p, q, cplx(-inv2) + I * (s * h) * (op.a2[p] + op.a2[q]));
          }
        }
      }
    }
    R = from_triplets(N, t);
  }
  op.R = 0.5 * (R + SpMatrix(R.adjoint()));
  op.R.makeCompressed();
  return op;
}

double factorization_residual(double j, double L, int n) {
  const int tj = two_j_of(j);
  const Grid g = checked_grid(L, n);
  const SpMatrix D = magnetic_D_centered(j, g);
  double worst = 0.0;
  for (int m = 0; m <= tj; ++m) {
    CVector psi(g.size());
    for (int ix = 0; ix < g.n; ++ix) {
      for (int iy = 0; iy < g.n; ++iy) {
        const cplx z = g.z(ix, iy);
        psi[g.index(ix, iy)] = weight_g(j, z) * std::pow(std::conj(z), m);
      }
    }
    const CVector r = D * psi;
    double num = 0.0, den = 0.0;
    for (int ix = 1; ix + 1 < g.n; ++ix) {
      for (int iy = 1; iy + 1 < g.n; ++iy) {
        const int k = g.index(ix, iy);
        num += std::norm(r[k]);
        den += std::norm(psi[k]);
      }
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  return worst;
}

double divergence_residual(const MagneticOperator& op) {
  const Grid& g = op.grid;
  const double h = 0.5 / g.delta();
  double worst = 0.0;
  for (int ix = 1; ix + 1 < g.n; ++ix) {
    for (int iy = 1; iy + 1 < g.n; ++iy) {
      const double d = h * (op.a1[g.index(ix + 1, iy)] - op.a1[g.index(ix - 1, iy)]) +
                       h * (op.a2[g.index(ix, iy + 1)] - op.a2[g.index(ix, iy - 1)]);
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

double curl_residual(const MagneticOperator& op) {
  const Grid& g = op.grid;
  const double h = 0.5 / g.delta();
  double worst = 0.0;
  for (int ix = 1; ix + 1 < g.n; ++ix) {
    for (int iy = 1; iy + 1 < g.n; ++iy) {
      const double c = h * (op.a2[g.index(ix + 1, iy)] - op.a2[g.index(ix - 1, iy)]) -
                       h * (op.a1[g.index(ix, iy + 1)] - op.a1[g.index(ix, iy - 1)]);
      worst = std::max(worst, std::abs(c - op.v[g.index(ix, iy)]));
    }
  }
  return worst;
}

int default_spectrum_count(double j) { return static_cast<int>(std::floor(2.0 * j + 1e-12)) + 6; }

int zero_cluster_size(const std::vector<double>& ev, double floor) {
  if (ev.size() < 2) return static_cast<int>(ev.size());
  int best = 0;
  double best_ratio = -1.0;
  for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
    const double ratio = (ev[i + 1] + floor) / (std::max(ev[i], 0.0) + floor);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = static_cast<int>(i);
    }
  }
  return best + 1;
}

double analytic_overlap(const MagneticOperator& op, const CMatrix& V) {
  const int c = static_cast<int>(V.cols());
  if (c == 0) return 0.0;
  const Grid& g = op.grid;
  CMatrix B(g.size(), c);
  for (int ix = 0; ix < g.n; ++ix) {
    for (int iy = 0; iy < g.n; ++iy) {
      const cplx z = g.z(ix, iy);
      const double w = std::pow(1.0 + std::norm(z), -op.j - 1.0);
      cplx p = 1.0;
      for (int m = 0; m < c; ++m) {
        B(g.index(ix, iy), m) = w * p;
        p *= std::conj(z);
      }
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(B);
  const CMatrix Q = qr.householderQ() * CMatrix::Identity(g.size(), c);
  const Eigen::JacobiSVD<CMatrix> svd(Q.adjoint() * V);
  const double s = svd.singularValues().minCoeff();
  return std::min(1.0, s * s);
}

GroundSpaceReport low_spectrum(const MagneticOperator& op, int k, const SpectrumOptions& opt) {
  const int N = static_cast<int>(op.R.rows());
  if (k < 1 || k > N) throw ValidationError("invalid eigenpair count");
  if (k > default_spectrum_count(op.j)) throw ValidationError("low_spectrum allows at most floor(2j) + 6 eigenpairs");
  const int b = std::min(N, k + 4);

  SpMatrix A = op.R;
  for (int i = 0; i < N; ++i) A.coeffRef(i, i) += opt.shift;
  detail::HermitianFactor solver(A);
  if (solver.info() != Eigen::Success) throw NumericalError("shift-invert factorization failed");

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> nd;
  CMatrix X(N, b);
  for (int c = 0; c < b; ++c)
    for (int r = 0; r < N; ++r) X(r, c) = cplx(nd(rng), nd(rng));
  X = solver.solve(X);

  auto orthonormalize_against = [](const CMatrix& V, CMatrix W) {
    for (int pass = 0; pass < 2; ++pass) {
      if (V.cols() > 0) W -= V * (V.adjoint() * W);
      // Modified Gram-Schmidt within the block.
      for (int c = 0; c < W.cols(); ++c) {
        for (int d = 0; d < c; ++d) W.col(c) -= W.col(d) * W.col(d).dot(W.col(c));
        const double nrm = W.col(c).norm();
        if (nrm > 0.0) W.col(c) /= nrm;
      }
    }
    std::vector<int> keep;
    for (int c = 0; c < W.cols(); ++c)
      if (std::abs(W.col(c).norm() - 1.0) < 1e-6) keep.push_back(c);
    CMatrix out(W.rows(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) out.col(i) = W.col(keep[i]);
    return out;
  };

  CMatrix V = orthonormalize_against(CMatrix(N, 0), X);
  CMatrix RV = op.R * V;
  CMatrix H = V.adjoint() * RV;  // projected operator, updated blockwise
  const int max_cols = std::max(4 * b, 40);

  GroundSpaceReport rep;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    H = (0.5 * (H + H.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    const int nb = std::min<int>(b, static_cast<int>(V.cols()));
    const CMatrix Y = es.eigenvectors().leftCols(nb);
    const CMatrix Xr = V * Y;
    const CMatrix RXr = RV * Y;
    std::vector<double> res(nb);
    std::vector<int> todo;
    for (int i = 0; i < nb; ++i) {
      res[i] = (RXr.col(i) - es.eigenvalues()[i] * Xr.col(i)).norm();
      if (res[i] > opt.tol) todo.push_back(i);
    }
    bool done = nb >= k;
    for (int i = 0; i < std::min(k, nb); ++i) done = done && res[i] <= opt.tol;
    if (done) {
      rep.iterations = it;
      rep.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
      rep.residuals.assign(res.begin(), res.begin() + k);
      rep.eigenvectors = Xr.leftCols(k);
      break;
    }
    if (it == opt.max_iterations) {
      std::ostringstream os;
      os << "eigensolver did not converge in " << it << " iterations (worst residual "
         << *std::max_element(res.begin(), res.begin() + std::min(k, nb)) << ")";
      throw NumericalError(os.str());
    }
    CMatrix W(N, todo.size());
    for (std::size_t i = 0; i < todo.size(); ++i) W.col(i) = Xr.col(todo[i]);
    W = solver.solve(W).eval();
    if (V.cols() + W.cols() > max_cols) {
      V = Xr;
      RV = RXr;
      H = es.eigenvalues().head(nb).cast<cplx>().asDiagonal();
    }
    W = orthonormalize_against(V, W);
    if (W.cols() == 0) continue;
    const CMatrix RW = op.R * W;
    const Eigen::Index p = V.cols(), q = W.cols();
    CMatrix H2(p + q, p + q);
    H2.topLeftCorner(p, p) = H;
    H2.topRightCorner(p, q) = V.adjoint() * RW;
    H2.bottomLeftCorner(q, p) = H2.topRightCorner(p, q).adjoint();
    H2.bottomRightCorner(q, q) = W.adjoint() * RW;
    H = std::move(H2);
    CMatrix V2(N, p + q), RV2(N, p + q);
    V2 << V, W;
    RV2 << RV, RW;
    V = std::move(V2);
    RV = std::move(RV2);
  }

  rep.cluster_floor = opt.cluster_floor > 0.0 ? opt.cluster_floor : 0.2 / (op.grid.L * op.grid.L);
  rep.zero_cluster_size = zero_cluster_size(rep.eigenvalues, rep.cluster_floor);
  rep.analytic_overlap = analytic_overlap(op, rep.eigenvectors.leftCols(rep.zero_cluster_size));
  return rep;
}

}  // namespace spinpath
