// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinpath/semigroup.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "spinpath/matrix_exp.hpp"
#include "spinpath/quadrature.hpp"
#include "spinpath/spin.hpp"

namespace spinpath {

bool is_hermitian(const CMatrix& H, double tol) {
  return H.rows() == H.cols() && (H - H.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

cplx exact_kernel(const CMatrix& H, double t, cplx z, cplx zp) {
  if (!std::isfinite(t) || t < 0.0) throw ValidationError("exact_kernel needs finite t >= 0");
  return coherent_rep(mat_exp(H, cplx(-t, 0.0)), z, zp);
}

cplx exact_kernel(const HamiltonianSpec& H, double t, cplx z, cplx zp) {
  two_j_of(H.j);
  return exact_kernel(H.realize(), t, z, zp);
}

cplx exact_kernel_unitary(const CMatrix& H, double t, cplx z, cplx zp) {
  if (!std::isfinite(t)) throw ValidationError("exact_kernel_unitary needs finite t");
  if (!is_hermitian(H)) throw ValidationError("unitary kernel requires a Hermitian Hamiltonian");
  return coherent_rep(mat_exp(H, cplx(0.0, -t)), z, zp);
}

cplx exact_kernel_unitary(const HamiltonianSpec& H, double t, cplx z, cplx zp) {
  two_j_of(H.j);
  return exact_kernel_unitary(H.realize(), t, z, zp);
}

std::vector<MonomialTerm> contract_hamiltonian(const std::vector<MonomialTerm>& terms, double j) {
  two_j_of(j);
  if (j <= 0.0) throw ValidationError("contraction needs j >= 1/2");
  const double scale = 1.0 / std::sqrt(2.0 * j);
  // Expand each word letter by letter; identical words are merged in a
  // deterministic order.
  std::vector<MonomialTerm> out;
  for (const auto& term : terms) {
    std::vector<MonomialTerm> partial{{term.coeff, {}}};
    for (auto g : term.word) {
      std::vector<MonomialTerm> next;
      for (auto& p : partial) {
        switch (g) {
          case Generator::JPlus:
          case Generator::JMinus: {
            auto q = p;
            q.coeff *= scale;
            q.word.push_back(g);
            next.push_back(std::move(q));
            break;
          }
          case Generator::J3: {
            auto q = p;
            q.word.push_back(Generator::J3);
            next.push_back(std::move(q));
            auto r = p;
            r.coeff *= j;
            next.push_back(std::move(r));
            break;
          }
          case Generator::Identity:
            next.push_back(p);
            break;
        }
      }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  std::map<std::vector<Generator>, cplx> merged;
  std::vector<std::vector<Generator>> order;
  for (const auto& t : out) {
    auto it = merged.find(t.word);
    if (it == merged.end()) {
      merged.emplace(t.word, t.coeff);
      order.push_back(t.word);
    } else {
      it->second += t.coeff;
    }
  }
  std::vector<MonomialTerm> result;
  for (const auto& w : order) result.push_back({merged[w], w});
  return result;
}

cplx contraction_kernel_lhs(const std::vector<MonomialTerm>& terms, double j, double t, cplx z, cplx zp) {
  const auto contracted = contract_hamiltonian(terms, j);
  const double s = std::sqrt(2.0 * j);
  const CMatrix H = realize_monomials(contracted, build_spin_system(j, 1e9));
  return (kPi / (2.0 * j)) * exact_kernel(H, t, z / s, zp / s);
}

FockSystem::FockSystem(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw ValidationError("Fock truncation must be nonnegative");
  const int d = n_max + 1;
  lower_ = CMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) lower_(n - 1, n) = std::sqrt(static_cast<double>(n));
  raise_ = lower_.adjoint();
}

CVector FockSystem::amplitudes(cplx z) const {
  CVector a(n_max_ + 1);
  cplx v = std::exp(-0.5 * std::norm(z));
  for (int n = 0; n <= n_max_; ++n) {
    a[n] = v;
    v *= z / std::sqrt(n + 1.0);
  }
  return a;
}

double FockSystem::tail(cplx z) const { return std::max(0.0, 1.0 - amplitudes(z).squaredNorm()); }

CMatrix fock_quantize(const SymbolFn& h_hat, const FockSystem& fock) {
  const int nm = fock.n_max();
  const int d = nm + 1;
  const double R = 2.0 * std::sqrt(static_cast<double>(std::max(16, nm)));
  const int n_r = 4 * nm + 64;
  const int n_theta = 2 * nm + 16;
  const auto gl = gauss_legendre(n_r);
  CMatrix acc = CMatrix::Zero(d, d);
  const double dtheta = 2.0 * kPi / n_theta;
  for (int a = 0; a < n_r; ++a) {
    const double r = 0.5 * R * (gl.nodes[a] + 1.0);
    const double wr = 0.5 * R * gl.weights[a] * r;
    for (int b = 0; b < n_theta; ++b) {
      const cplx z = std::polar(r, b * dtheta);
      const cplx v = h_hat.h(z);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericalError("limit symbol not finite");
      const CVector amp = fock.amplitudes(z);
      acc.noalias() += (wr * dtheta / kPi * v) * (amp * amp.adjoint());
    }
  }
  return acc;
}

cplx fock_oracle_kernel(const SymbolFn& h_hat, int n_max, double t, cplx z, cplx zp) {
  if (!std::isfinite(t) || t < 0.0) throw ValidationError("fock_oracle_kernel needs t >= 0");
  const FockSystem fock(n_max);
  const double tail = std::max(fock.tail(z), fock.tail(zp));
  if (tail > 1e-8) throw NumericalError("Fock truncation tail exceeds 1e-8; raise n_max");
  const CMatrix H = h_hat.vanishes ? CMatrix::Zero(n_max + 1, n_max + 1) : fock_quantize(h_hat, fock);
  return fock.amplitudes(z).dot(mat_exp(H, cplx(-t, 0.0), 4096) * fock.amplitudes(zp));
}

SymbolFn radial_polynomial_symbol(const std::vector<double>& coeffs) {
  if (coeffs.empty()) return constant_symbol(0.0);
  std::ostringstream name;
  name << "poly|z|^2(";
  for (std::size_t k = 0; k < coeffs.size(); ++k) name << (k ? "," : "") << coeffs[k];
  name << ")";
  bool zero = true;
  for (double c : coeffs) zero = zero && c == 0.0;
  auto h = [coeffs](cplx z) {
    const double x = std::norm(z);
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return cplx(acc, 0.0);
  };
  const double bound = coeffs.size() > 1 ? std::numeric_limits<double>::infinity() : std::abs(coeffs[0]);
  return SymbolFn{name.str(), h, bound, true, zero};
}

}  // namespace spinpath
