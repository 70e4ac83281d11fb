// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense reference for the light-cone estimator: the pre-evolved product state
//   exp(-i H_M t) [e^{+i H_L' t_f/2} e^{-i H_L t_f/2}] [e^{+i H_R' t_f/2} e^{-i H_R t_f/2}] |Neel>
// on the whole 2l+1 site subchain, built from sector-blocked dense matrices.

#include <cmath>
#include <vector>

#include "oracles.hpp"

namespace oracle {

inline std::vector<Bond> bonds_within(const std::vector<Bond>& bonds, int lo, int hi) {
  std::vector<Bond> out;
  for (const auto& b : bonds)
    if (b.a >= lo && b.a < hi && b.b >= lo && b.b < hi) out.push_back(b);
  return out;
}

inline std::vector<double> fields_within(const std::vector<double>& fields, int lo, int hi) {
  std::vector<double> out(fields.size(), 0.0);
  for (int i = lo; i < hi && i < static_cast<int>(fields.size()); ++i) out[static_cast<std::size_t>(i)] = fields[static_cast<std::size_t>(i)];
  return out;
}

/// Spectral data of a real symmetric matrix for repeated exp(-i h t) psi.
struct RealSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;

  explicit RealSpectrum(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real());
    values = es.eigenvalues();
    vectors = es.eigenvectors().cast<Complex>();
  }

  Eigen::VectorXcd apply(double t, const Eigen::VectorXcd& psi) const {
    const Eigen::VectorXcd ph = (Complex(0, -t) * values.cast<Complex>()).array().exp();
    return vectors * ph.cwiseProduct(vectors.adjoint() * psi);
  }
};

/// The 2l+1 site subchain diagonalised once, so curves for several t_f
/// share the eigendecompositions. The centre starts down unless center_up.
class PreEvolvedOracle {
 public:
  PreEvolvedOracle(int l, const std::vector<Bond>& bonds, const std::vector<double>& fields, bool center_up = false)
      : l_(l) {
    const int n = 2 * l + 1;
    for (int i = 0; i < n; ++i)
      if ((i % 2 == 0) == center_up) neel_ |= 1L << i;
    const int n_up = __builtin_popcountl(static_cast<unsigned long>(neel_));
    states_ = sector_states(n, n_up);
    auto part = [&](int lo, int hi) {
      return RealSpectrum(sector_hamiltonian(n, n_up, bonds_within(bonds, lo, hi), fields_within(fields, lo, hi)));
    };
    parts_.push_back(part(0, l));
    parts_.push_back(part(l / 2, l));
    parts_.push_back(part(l + 1, n));
    parts_.push_back(part(l + 1, l + l / 2 + 1));
    parts_.push_back(part(l / 2, l + l / 2 + 1));
  }

  /// <S^z> at label `site` for each time in `times`.
  std::vector<double> curve(double t_f, const std::vector<double>& times, int site) const {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<long>(states_.size()));
    psi[std::lower_bound(states_.begin(), states_.end(), neel_) - states_.begin()] = 1.0;
    psi = parts_[0].apply(0.5 * t_f, psi);
    psi = parts_[1].apply(-0.5 * t_f, psi);
    psi = parts_[2].apply(0.5 * t_f, psi);
    psi = parts_[3].apply(-0.5 * t_f, psi);
    std::vector<double> out;
    for (double t : times) {
      const Eigen::VectorXcd v = parts_[4].apply(t, psi);
      double sz = 0.0;
      for (std::size_t k = 0; k < states_.size(); ++k)
        sz += std::norm(v[static_cast<long>(k)]) * (((states_[k] >> (site + l_)) & 1) ? 0.5 : -0.5);
      out.push_back(sz);
    }
    return out;
  }

 private:
  int l_;
  long neel_ = 0;
  std::vector<long> states_;
  std::vector<RealSpectrum> parts_;
};

inline std::vector<double> pre_evolved_curve(int l, const std::vector<Bond>& bonds, const std::vector<double>& fields,
                                             double t_f, const std::vector<double>& times, int site,
                                             bool center_up = false) {
  return PreEvolvedOracle(l, bonds, fields, center_up).curve(t_f, times, site);
}

}  // namespace oracle
