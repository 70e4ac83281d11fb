// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent thermal references: classical transfer matrices and dense
// eigendecompositions.

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "oracles.hpp"

namespace oracle {

/// ln Z of H = sum_i jz_i s_i s_{i+1} - sum_i h_i s_i with s = +-1/2, by a 2x2
/// transfer matrix with per-step rescaling.
inline double ising_log_partition(const std::vector<double>& jz, const std::vector<double>& fields, double beta) {
  const double s[2] = {-0.5, 0.5};
  Eigen::Vector2d v;
  for (int a = 0; a < 2; ++a) v(a) = std::exp(beta * fields[0] * s[a]);
  double log_scale = 0.0;
  for (std::size_t i = 0; i < jz.size(); ++i) {
    Eigen::Vector2d next = Eigen::Vector2d::Zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) next(b) += v(a) * std::exp(-beta * (jz[i] * s[a] * s[b] - fields[i + 1] * s[b]));
    const double m = next.maxCoeff();
    log_scale += std::log(m);
    v = next / m;
  }
  return log_scale + std::log(v.sum());
}

/// <X^2> - <X>^2 in the Gibbs state of h (X need not commute with h).
inline double thermal_variance(const Mat& h, const Mat& x, double beta) {
  const Mat rho = gibbs(h, beta);
  const double z = rho.trace().real();
  const double m1 = (rho * x).trace().real() / z;
  const double m2 = (rho * x * x).trace().real() / z;
  return m2 - m1 * m1;
}

/// d^2 ln Z / d lambda^2 at lambda = 0 for h + lambda d, from the spectral
/// (Duhamel) formula.
inline double log_partition_second_derivative(const Mat& h, const Mat& d, double beta) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXd e = es.eigenvalues();
  const double e0 = e.minCoeff();
  const Mat dm = es.eigenvectors().adjoint() * d * es.eigenvectors();
  const Eigen::Index n = e.size();
  double z = 0.0, first = 0.0, second = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    const double wm = std::exp(-beta * (e(m) - e0));
    z += wm;
    first += wm * dm(m, m).real();
    for (Eigen::Index k = 0; k < n; ++k) {
      const double wk = std::exp(-beta * (e(k) - e0));
      const double gap = e(k) - e(m);
      const double f = std::abs(gap) < 1e-9 ? beta * beta * 0.5 * (wm + wk) : beta * (wm - wk) / gap;
      second += std::norm(dm(m, k)) * f;
    }
  }
  const double mean = first / z;
  return second / z - beta * beta * mean * mean;
}

}  // namespace oracle
