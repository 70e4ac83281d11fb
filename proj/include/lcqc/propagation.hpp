// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Real-time evolution psi -> exp(-i H t) psi for a sparse Hamiltonian, by a
// truncated Taylor series on short substeps or by Lanczos projection.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "lcqc/errors.hpp"
#include "lcqc/hilbert.hpp"
#include "lcqc/models.hpp"

namespace lcqc {

enum class PropagationMethod { taylor, krylov };

struct PropagatorConfig {
  double t0 = 1.0;
  int series_order = 40;
  /// Adaptive mode sums up to kMaxAdaptiveOrder terms until the remaining
  /// tail is bounded by tail_tol.
  bool adaptive = false;
  double tail_tol = 1e-13;
  int krylov_dim = 30;
  PropagationMethod method = PropagationMethod::taylor;

  static constexpr int kMaxAdaptiveOrder = 256;

  void validate() const {
    if (!(t0 > 0.0)) throw std::invalid_argument("PropagatorConfig: t0 must be positive");
    if (series_order < 1) throw std::invalid_argument("PropagatorConfig: series_order must be >= 1");
    if (krylov_dim < 2) throw std::invalid_argument("PropagatorConfig: krylov_dim must be >= 2");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("PropagatorConfig: tail_tol must be positive");
  }
};

struct PropagationStats {
  int substeps = 0;
  long matvecs = 0;
  /// Largest relative norm drift seen after a substep.
  double max_drift = 0.0;
  /// Number of substeps after which the state was renormalized.
  int renormalizations = 0;
  /// Largest truncation estimate seen.
  double max_tail = 0.0;

  void merge(const PropagationStats& o) {
    substeps += o.substeps;
    matvecs += o.matvecs;
    max_drift = std::max(max_drift, o.max_drift);
    renormalizations += o.renormalizations;
    max_tail = std::max(max_tail, o.max_tail);
  }
};

/// Gershgorin bound on the spectral radius.
inline double spectral_radius_bound(const SparseMatrix& h) {
  double r = 0.0;
  const auto& rp = h.row_ptr();
  for (std::size_t i = 0; i < h.dimension(); ++i) {
    double s = std::abs(h.diagonal()[i]);
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) s += std::abs(h.values()[k]);
    r = std::max(r, s);
  }
  return r;
}

namespace detail {

/// y = c * (H x); sum += y; returns ||y||^2.
inline double taylor_term(const SparseMatrix& h, const Complex* x, Complex* y, Complex* sum, Complex c) {
  const auto& rp = h.row_ptr();
  const auto& cols = h.cols();
  const auto& vals = h.values();
  const auto& diag = h.diagonal();
  double n2 = 0.0;
  const std::size_t dim = h.dimension();
  for (std::size_t r = 0; r < dim; ++r) {
    Complex acc = diag[r] * x[r];
    for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) acc += vals[k] * x[cols[k]];
    acc *= c;
    y[r] = acc;
    sum[r] += acc;
    n2 += std::norm(acc);
  }
  return n2;
}

inline void check_sizes(const SparseMatrix& h, const Eigen::VectorXcd& psi) {
  if (static_cast<std::size_t>(psi.size()) != h.dimension())
    throw std::invalid_argument("evolve: state length does not match Hamiltonian dimension");
}

inline void track_drift(Eigen::VectorXcd& v, double target_norm, double tail_tol, PropagationStats* stats) {
  const double n = v.norm();
  const double drift = target_norm > 0.0 ? std::abs(n - target_norm) / target_norm : 0.0;
  if (stats) stats->max_drift = std::max(stats->max_drift, drift);
  if (drift > tail_tol && n > 0.0) {
    v *= target_norm / n;
    if (stats) ++stats->renormalizations;
  }
}

}  // namespace detail

/// exp(-i H t) psi by a Taylor series on ceil(|t|/t0) equal substeps.
inline Eigen::VectorXcd evolve_taylor(const SparseMatrix& h, const Eigen::VectorXcd& psi, double t,
                                      const PropagatorConfig& cfg, PropagationStats* stats = nullptr) {
  cfg.validate();
  detail::check_sizes(h, psi);
  Eigen::VectorXcd v = psi;
  if (t == 0.0 || psi.size() == 0) return v;
  const double psi_norm = psi.norm();
  if (psi_norm == 0.0) return v;
  const int n_sub = static_cast<int>(std::ceil(std::abs(t) / cfg.t0 - 1e-12));
  const double tau = t / std::max(1, n_sub);
  const double radius = spectral_radius_bound(h) * std::abs(tau);
  const int max_order = cfg.adaptive ? PropagatorConfig::kMaxAdaptiveOrder : cfg.series_order;
  const double tol = cfg.tail_tol * psi_norm;

  Eigen::VectorXcd a(psi.size()), b(psi.size());
  for (int s = 0; s < std::max(1, n_sub); ++s) {
    a = v;
    double tail = 0.0;
    bool converged = false;
    int k = 1;
    for (; k <= max_order; ++k) {
      const Complex c(0.0, -tau / k);
      const double term = std::sqrt(detail::taylor_term(h, a.data(), b.data(), v.data(), c));
      a.swap(b);
      // Remaining terms are bounded by a geometric series with ratio x.
      const double x = radius / (k + 1);
      tail = x < 0.5 ? term * x / (1.0 - x) : term;
      if (term == 0.0 || (x < 0.5 && tail <= tol)) {
        converged = true;
        ++k;
        break;
      }
    }
    if (stats) {
      stats->matvecs += k - 1;
      ++stats->substeps;
      stats->max_tail = std::max(stats->max_tail, tail / psi_norm);
    }
    if (!converged && tail > tol)
      throw PrecisionError("evolve_taylor: series tail " + std::to_string(tail / psi_norm) +
                               " exceeds tolerance at order " + std::to_string(max_order),
                           tail / psi_norm);
    detail::track_drift(v, psi_norm, cfg.tail_tol, stats);
  }
  return v;
}

/// exp(-i H t) psi by Lanczos projection onto a Krylov space of dimension
/// krylov_dim, restarted per substep. Substeps are halved until the
/// a-posteriori error estimate is below tail_tol.
inline Eigen::VectorXcd evolve_krylov(const SparseMatrix& h, const Eigen::VectorXcd& psi, double t,
                                      const PropagatorConfig& cfg, PropagationStats* stats = nullptr) {
  cfg.validate();
  detail::check_sizes(h, psi);
  Eigen::VectorXcd v = psi;
  if (t == 0.0 || psi.size() == 0) return v;
  const double psi_norm = psi.norm();
  if (psi_norm == 0.0) return v;
  const auto dim = static_cast<Eigen::Index>(h.dimension());
  const int m_max = static_cast<int>(std::min<Eigen::Index>(cfg.krylov_dim, dim));
  const double sign = t > 0 ? 1.0 : -1.0;
  double remaining = std::abs(t);
  double step = cfg.t0;

  Eigen::MatrixXcd basis(dim, m_max);
  Eigen::VectorXcd w(dim);
  while (remaining > 0.0) {
    const double beta0 = v.norm();
    basis.col(0) = v / beta0;
    Eigen::VectorXd alpha(m_max), beta(m_max);
    int m = 0;
    bool invariant = false;
    for (int j = 0; j < m_max; ++j) {
      h.apply(basis.col(j).data(), w.data());
      if (stats) ++stats->matvecs;
      alpha[j] = basis.col(j).dot(w).real();
      // Full reorthogonalization, applied twice for stability.
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) w -= basis.col(i).dot(w) * basis.col(i);
      m = j + 1;
      beta[j] = w.norm();
      if (beta[j] < 1e-14) {
        invariant = true;
        break;
      }
      if (j + 1 < m_max) basis.col(j + 1) = w / beta[j];
    }
    if (m == dim) invariant = true;

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      tri(j, j) = alpha[j];
      if (j + 1 < m) tri(j, j + 1) = tri(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    auto coeffs = [&](double tau) {
      Eigen::VectorXcd phase(m);
      for (int j = 0; j < m; ++j) phase[j] = std::exp(Complex(0.0, -sign * tau * es.eigenvalues()[j]));
      Eigen::VectorXcd c = es.eigenvectors().cast<Complex>() *
                           (phase.asDiagonal() * es.eigenvectors().row(0).transpose().cast<Complex>());
      return c;
    };

    double tau = invariant ? remaining : std::min(remaining, step);
    Eigen::VectorXcd c = coeffs(tau);
    double err = invariant ? 0.0 : beta[m - 1] * std::abs(c[m - 1]);
    while (err > cfg.tail_tol) {
      tau *= 0.5;
      c = coeffs(tau);
      err = beta[m - 1] * std::abs(c[m - 1]);
      if (tau < 1e-12 * std::abs(t))
        throw PrecisionError("evolve_krylov: step size underflow", err);
    }
    if (stats) {
      ++stats->substeps;
      stats->max_tail = std::max(stats->max_tail, err);
    }
    v = beta0 * (basis.leftCols(m) * c);
    remaining -= tau;
    if (remaining < 1e-14 * std::abs(t)) remaining = 0.0;
    step = std::min(cfg.t0, 2.0 * tau);
    detail::track_drift(v, psi_norm, cfg.tail_tol, stats);
  }
  return v;
}

inline Eigen::VectorXcd evolve(const SparseMatrix& h, const Eigen::VectorXcd& psi, double t,
                               const PropagatorConfig& cfg, PropagationStats* stats = nullptr) {
  return cfg.method == PropagationMethod::taylor ? evolve_taylor(h, psi, t, cfg, stats)
                                                 : evolve_krylov(h, psi, t, cfg, stats);
}

inline StateVector evolve_taylor(const SparseMatrix& h, const StateVector& psi, double t,
                                 const PropagatorConfig& cfg, PropagationStats* stats = nullptr) {
  return {psi.basis, evolve_taylor(h, psi.amps, t, cfg, stats)};
}

inline StateVector evolve_krylov(const SparseMatrix& h, const StateVector& psi, double t,
                                 const PropagatorConfig& cfg, PropagationStats* stats = nullptr) {
  return {psi.basis, evolve_krylov(h, psi.amps, t, cfg, stats)};
}

inline StateVector evolve(const SparseMatrix& h, const StateVector& psi, double t, const PropagatorConfig& cfg,
                          PropagationStats* stats = nullptr) {
  return {psi.basis, evolve(h, psi.amps, t, cfg, stats)};
}

/// Evolves a state of a local Hamiltonian, assembling the matrix in the
/// state's own basis.
inline StateVector evolve(const LocalHamiltonian& h, const StateVector& psi, double t, const PropagatorConfig& cfg,
                          PropagationStats* stats = nullptr) {
  return evolve(assemble_sparse(h, *psi.basis), psi, t, cfg, stats);
}

}  // namespace lcqc
