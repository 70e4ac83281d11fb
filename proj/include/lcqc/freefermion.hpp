// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// The XX chain as free fermions. With unit XY exchange the single-particle
// hopping is 1/2 between neighbours and G_ij = <c_i^dag c_j> evolves as
// G(t) = U^dag G(0) U with U = exp(-i M t).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lcqc {

struct HoppingMatrix {
  int n_sites = 0;
  Eigen::MatrixXd entries;
  bool periodic = false;
  /// Sign of the bond closing the ring; +1 for open chains.
  int boundary_sign = 1;
};

inline HoppingMatrix open_chain_hopping(int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("open_chain_hopping: need at least two sites");
  HoppingMatrix m{n_sites, Eigen::MatrixXd::Zero(n_sites, n_sites), false, 1};
  for (int i = 0; i + 1 < n_sites; ++i) m.entries(i, i + 1) = m.entries(i + 1, i) = 0.5;
  return m;
}

/// Boundary sign making the ring hopping exact in the fermion-parity sector of
/// n_particles: antiperiodic for even particle number.
inline int periodic_boundary_sign(int n_particles) { return n_particles % 2 == 0 ? -1 : 1; }

inline HoppingMatrix ring_hopping(int n_sites, int boundary_sign) {
  if (n_sites < 3) throw std::invalid_argument("ring_hopping: need at least three sites");
  if (boundary_sign != 1 && boundary_sign != -1) throw std::invalid_argument("ring_hopping: sign must be +1 or -1");
  HoppingMatrix m = open_chain_hopping(n_sites);
  m.periodic = true;
  m.boundary_sign = boundary_sign;
  m.entries(0, n_sites - 1) = m.entries(n_sites - 1, 0) = 0.5 * boundary_sign;
  return m;
}

struct CorrelationMatrix {
  Eigen::MatrixXcd g;

  double particle_number() const { return g.trace().real(); }
};

/// Diagonal correlations of a product state; occupied[i] marks spin up at i.
inline CorrelationMatrix product_state_correlations(const std::vector<bool>& occupied) {
  const auto n = static_cast<Eigen::Index>(occupied.size());
  CorrelationMatrix c{Eigen::MatrixXcd::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) c.g(i, i) = occupied[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
  return c;
}

/// Alternating occupations; up_first occupies site 0.
inline CorrelationMatrix neel_correlations(int n_sites, bool up_first) {
  std::vector<bool> occ(static_cast<std::size_t>(n_sites));
  for (int i = 0; i < n_sites; ++i) occ[static_cast<std::size_t>(i)] = (i % 2 == 0) == up_first;
  return product_state_correlations(occ);
}

/// Reuses one diagonalization of M for many evolution times.
class FreeFermionEvolver {
 public:
  explicit FreeFermionEvolver(const HoppingMatrix& m) : es_(m.entries) {
    if (m.entries.rows() != m.n_sites || m.entries.cols() != m.n_sites)
      throw std::invalid_argument("FreeFermionEvolver: matrix size does not match n_sites");
  }

  /// exp(-i M t).
  Eigen::MatrixXcd propagator(double t) const {
    const Eigen::Index n = es_.eigenvalues().size();
    Eigen::VectorXcd phase(n);
    for (Eigen::Index k = 0; k < n; ++k) phase[k] = std::exp(std::complex<double>(0.0, -t * es_.eigenvalues()[k]));
    const Eigen::MatrixXcd v = es_.eigenvectors().cast<std::complex<double>>();
    return v * phase.asDiagonal() * v.transpose();
  }

  CorrelationMatrix evolve(const CorrelationMatrix& g0, double t) const {
    const Eigen::MatrixXcd u = propagator(t);
    return {u.adjoint() * g0.g * u};
  }

  /// G_ii(t) - 1/2 for every site.
  std::vector<double> sz_profile(const CorrelationMatrix& g0, double t) const {
    const Eigen::MatrixXcd u = propagator(t);
    const Eigen::Index n = u.rows();
    std::vector<double> out(static_cast<std::size_t>(n));
    // Diagonal of U^dag G0 U without forming the full product.
    const Eigen::MatrixXcd gu = g0.g * u;
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = u.col(i).dot(gu.col(i)).real() - 0.5;
    return out;
  }

 private:
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_;
};

inline CorrelationMatrix evolve_correlations(const HoppingMatrix& m, const CorrelationMatrix& g0, double t) {
  return FreeFermionEvolver(m).evolve(g0, t);
}

inline std::vector<double> sz_profile(const HoppingMatrix& m, const CorrelationMatrix& g0, double t) {
  return FreeFermionEvolver(m).sz_profile(g0, t);
}

/// Neel quench on an open chain or a ring; the central site (n/2) starts
/// down. Returns <S^z_center(t)> on the grid t = k dt, k = 0..steps.
inline std::vector<double> central_spin_curve(int n_sites, bool periodic, double dt, int steps) {
  const int center = n_sites / 2;
  const bool up_first = center % 2 == 1;
  const CorrelationMatrix g0 = neel_correlations(n_sites, up_first);
  const HoppingMatrix m =
      periodic ? ring_hopping(n_sites, periodic_boundary_sign(static_cast<int>(std::lround(g0.particle_number()))))
               : open_chain_hopping(n_sites);
  const FreeFermionEvolver ev(m);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) out.push_back(ev.sz_profile(g0, k * dt)[static_cast<std::size_t>(center)]);
  return out;
}

/// First grid time t = k dt at which |curve - reference| exceeds threshold.
inline std::optional<double> first_deviation_time(const std::vector<double>& curve, const std::vector<double>& reference,
                                                  double dt, double threshold) {
  const std::size_t n = std::min(curve.size(), reference.size());
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(curve[k] - reference[k]) > threshold) return static_cast<double>(k) * dt;
  return std::nullopt;
}

}  // namespace lcqc
