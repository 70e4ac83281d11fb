// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lcqc/propagation.hpp"
#include "oracles.hpp"

using namespace lcqc;

namespace {

LocalHamiltonian random_chain(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LocalHamiltonian h{n, {}, {}};
  for (int i = 0; i + 1 < n; ++i) h.terms.push_back(BondTerm::xxz(i, i + 1, 1.0 + 0.3 * u(rng), 1.5 * u(rng)));
  return h;
}

PropagatorConfig krylov_cfg() {
  PropagatorConfig c;
  c.method = PropagationMethod::krylov;
  return c;
}

}  // namespace

TEST(Taylor, ZeroTimeIsIdentity) {
  std::mt19937_64 rng(1);
  const auto b = make_sector(8, 4);
  const auto h = assemble_sparse(build_xxz(8, 0.5), *b);
  const auto psi = oracle::random_state(static_cast<long>(b->size()), rng);
  EXPECT_EQ((evolve_taylor(h, psi, 0.0, {}) - psi).norm(), 0.0);
}

TEST(Taylor, TwoSiteRotation) {
  // Oracle: the n_up = 1 block is [[0, 1/2], [1/2, 0]], so |up down> rotates
  // with <S^z_0(t)> = cos(t) / 2.
  const auto b = make_sector(2, 1);
  const auto h = assemble_sparse(build_xxz(2, 0.0), *b);
  for (double t : {0.3, 1.7, std::numbers::pi}) {
    const auto out = evolve_taylor(h, basis_vector(b, 0b01), t, {});
    const double sz0 = 0.5 * std::norm(out.amplitude(0b01)) - 0.5 * std::norm(out.amplitude(0b10));
    EXPECT_NEAR(sz0, 0.5 * std::cos(t), 1e-12);
  }
}

TEST(Taylor, TwelveSitesMatchDenseExponential) {
  std::mt19937_64 rng(2);
  const int n = 12;
  const auto b = make_sector(n, 6);
  const auto h = assemble_sparse(build_xxz(n, 1.0), *b);
  const auto psi = oracle::random_state(static_cast<long>(b->size()), rng);
  const auto out = evolve_taylor(h, psi, 3.0, {});
  // Oracle: dense exponential of the Pauli-product Hamiltonian's sector block.
  const auto hb = oracle::sector_block(oracle::bond_hamiltonian(n, oracle::xxz_bonds(n, 1.0)), n, 6);
  EXPECT_LT((out - oracle::propagator(hb, 3.0) * psi).norm(), 1e-9);
}

TEST(Taylor, FixedOrderTooLowRaisesPrecisionError) {
  std::mt19937_64 rng(3);
  const auto b = make_sector(10, 5);
  const auto h = assemble_sparse(build_xxz(10, 2.0), *b);
  const auto psi = oracle::random_state(static_cast<long>(b->size()), rng);
  PropagatorConfig cfg;
  cfg.series_order = 5;
  try {
    (void)evolve_taylor(h, psi, 1.0, cfg);
    FAIL() << "expected PrecisionError";
  } catch (const PrecisionError& e) {
    EXPECT_GT(e.achieved_tail(), cfg.tail_tol);
  }
  cfg.adaptive = true;
  EXPECT_NO_THROW((void)evolve_taylor(h, psi, 1.0, cfg));
}

TEST(Taylor, LongStepsNeedAdaptiveOrder) {
  std::mt19937_64 rng(4);
  const auto b = make_sector(12, 6);
  const auto h = assemble_sparse(build_xxz(12, 2.0), *b);
  const auto psi = oracle::random_state(static_cast<long>(b->size()), rng);
  PropagatorConfig cfg;
  cfg.t0 = 2.5;
  EXPECT_THROW((void)evolve_taylor(h, psi, 5.0, cfg), PrecisionError);
  cfg.adaptive = true;
  PropagationStats stats;
  const auto out = evolve_taylor(h, psi, 5.0, cfg, &stats);
  EXPECT_GT(stats.matvecs, 80);
  EXPECT_LT((out - evolve_taylor(h, psi, 5.0, PropagatorConfig{})).norm(), 1e-9);
}

TEST(Krylov, EigenvectorAcquiresPhase) {
  const auto b = make_sector(8, 4);
  const auto hs = assemble_sparse(build_xxz(8, 0.7), *b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hs.to_dense());
  const Eigen::VectorXcd v = es.eigenvectors().col(3).cast<Complex>();
  const auto out = evolve_krylov(hs, v, 2.5, krylov_cfg());
  const Complex expect = std::exp(Complex(0, -2.5 * es.eigenvalues()[3]));
  EXPECT_NEAR(std::abs(v.dot(out)), 1.0, 1e-12);
  EXPECT_LT((out - expect * v).norm(), 1e-11);
}

TEST(Krylov, AgreesWithTaylorOnRandomInstances) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(0.1, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6 + trial % 9;
    const auto b = make_sector(n, n / 2);
    const auto hs = assemble_sparse(random_chain(n, rng), *b);
    const auto psi = oracle::random_state(static_cast<long>(b->size()), rng);
    const double t = ut(rng);
    EXPECT_LT((evolve_krylov(hs, psi, t, krylov_cfg()) - evolve_taylor(hs, psi, t, {})).norm(), 1e-8)
        << "n=" << n << " t=" << t;
  }
}

TEST(Krylov, DimensionTwoSectorExact) {
  const auto b = make_sector(2, 1);
  const auto hs = assemble_sparse(build_xxz(2, 0.4), *b);
  const Eigen::VectorXcd psi = Eigen::Vector2cd(1.0, 0.0);
  const Eigen::VectorXcd ref = oracle::propagator_pade(hs.to_dense().cast<Complex>(), 7.3) * psi;
  for (int m : {2, 5, 30}) {
    auto cfg = krylov_cfg();
    cfg.krylov_dim = m;
    EXPECT_LT((evolve_krylov(hs, psi, 7.3, cfg) - ref).norm(), 1e-13);
  }
}

TEST(Propagation, NormPreservedToThirty) {
  std::mt19937_64 rng(6);
  const auto b = make_sector(10, 5);
  const auto hs = assemble_sparse(build_xxz(10, 1.0), *b);
  const auto psi = oracle::random_state(static_cast<long>(b->size()), rng);
  for (auto cfg : {PropagatorConfig{}, krylov_cfg()}) {
    PropagationStats stats;
    EXPECT_NEAR(evolve(hs, psi, 30.0, cfg, &stats).norm(), 1.0, 1e-9);
    EXPECT_LT(stats.max_drift, 1e-9);
  }
}

TEST(Propagation, EnergyConserved) {
  std::mt19937_64 rng(7);
  for (int n : {8, 12, 14}) {
    const auto b = make_sector(n, n / 2);
    const auto hs = assemble_sparse(random_chain(n, rng), *b);
    const auto psi = oracle::random_state(static_cast<long>(b->size()), rng);
    const double e0 = psi.dot(hs * psi).real();
    const auto out = evolve(hs, psi, 4.0, {});
    EXPECT_LT(std::abs(out.dot(hs * out).real() - e0), 1e-8 * std::max(1.0, std::abs(e0)));
  }
}

TEST(Propagation, ReversibleAndComposable) {
  std::mt19937_64 rng(8);
  const auto b = make_sector(12, 6);
  const auto hs = assemble_sparse(random_chain(12, rng), *b);
  const auto psi = oracle::random_state(static_cast<long>(b->size()), rng);
  for (auto cfg : {PropagatorConfig{}, krylov_cfg()}) {
    EXPECT_LT((evolve(hs, evolve(hs, psi, 3.3, cfg), -3.3, cfg) - psi).norm(), 1e-8);
    EXPECT_LT((evolve(hs, psi, 2.75, cfg) - evolve(hs, evolve(hs, psi, 1.25, cfg), 1.5, cfg)).norm(), 1e-8);
  }
}

TEST(Propagation, RejectsBadConfig) {
  const auto b = make_sector(4, 2);
  const auto hs = assemble_sparse(build_xxz(4, 0.0), *b);
  const Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(6).normalized();
  PropagatorConfig cfg;
  cfg.t0 = 0.0;
  EXPECT_THROW((void)evolve(hs, psi, 1.0, cfg), std::invalid_argument);
  cfg = {};
  cfg.krylov_dim = 1;
  EXPECT_THROW((void)evolve(hs, psi, 1.0, cfg), std::invalid_argument);
  EXPECT_THROW((void)evolve(hs, Eigen::VectorXcd::Ones(5), 1.0, PropagatorConfig{}), std::invalid_argument);
}
