// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>

#include "lcqc/freefermion.hpp"
#include "lcqc/propagation.hpp"

using namespace lcqc;

TEST(FreeFermion, ZeroTimeReturnsInitialCorrelations) {
  const auto g0 = neel_correlations(9, true);
  const auto g = evolve_correlations(open_chain_hopping(9), g0, 0.0);
  EXPECT_LT((g.g - g0.g).norm(), 1e-14);
}

TEST(FreeFermion, TwoSiteOccupation) {
  // Oracle: M = [[0, 1/2], [1/2, 0]] rotates the occupied mode by angle t/2.
  const auto g0 = neel_correlations(2, true);
  for (double t : {0.4, 1.3, 2.9}) {
    const auto p = sz_profile(open_chain_hopping(2), g0, t);
    EXPECT_NEAR(p[0] + 0.5, std::pow(std::cos(t / 2), 2), 1e-14);
  }
}

TEST(FreeFermion, MatchesManyBodyEvolutionAtDeltaZero) {
  const int n = 12;
  const auto psi0 = neel_state(n, true);
  const auto hs = assemble_sparse(build_xxz(n, 0.0), *psi0.basis);
  const FreeFermionEvolver ff(open_chain_hopping(n));
  const auto g0 = neel_correlations(n, true);
  StateVector psi = psi0;
  for (int step = 1; step <= 12; ++step) {
    psi = evolve_taylor(hs, psi, 0.5, {});
    const auto p = ff.sz_profile(g0, 0.5 * step);
    for (int i = 0; i < n; ++i) {
      double sz = 0.0;
      for (std::size_t k = 0; k < psi.size(); ++k)
        sz += std::norm(psi.amps[static_cast<long>(k)]) * (((psi.basis->state(k) >> i) & 1U) ? 0.5 : -0.5);
      EXPECT_NEAR(sz, p[static_cast<std::size_t>(i)], 1e-8) << "site " << i << " t " << 0.5 * step;
    }
  }
}

TEST(FreeFermion, ConservesParticlesAndStaysPhysical) {
  for (bool periodic : {false, true}) {
    const int n = 20;
    const auto g0 = neel_correlations(n, true);
    const auto m = periodic ? ring_hopping(n, periodic_boundary_sign(10)) : open_chain_hopping(n);
    for (double t : {0.7, 5.0, 23.0}) {
      const auto g = evolve_correlations(m, g0, t);
      EXPECT_NEAR(g.particle_number(), g0.particle_number(), 1e-10);
      EXPECT_LT((g.g - g.g.adjoint()).norm(), 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.g, Eigen::EigenvaluesOnly);
      EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
      EXPECT_LT(es.eigenvalues().maxCoeff(), 1.0 + 1e-10);
    }
  }
}

TEST(FreeFermion, HoppingMatrixShape) {
  const auto ring = ring_hopping(6, -1);
  EXPECT_EQ(ring.entries(0, 5), -0.5);
  EXPECT_EQ((ring.entries - ring.entries.transpose()).norm(), 0.0);
  EXPECT_EQ(ring.entries.diagonal().cwiseAbs().sum(), 0.0);
  EXPECT_EQ(open_chain_hopping(6).boundary_sign, 1);
  EXPECT_EQ(periodic_boundary_sign(18), -1);
  EXPECT_EQ(periodic_boundary_sign(17), 1);
  EXPECT_THROW(ring_hopping(6, 2), std::invalid_argument);
}

TEST(FreeFermion, CentralSiteStartsDownAndIsBulkIndependent) {
  const auto a = central_spin_curve(41, false, 0.25, 40);
  const auto b = central_spin_curve(81, false, 0.25, 40);
  EXPECT_EQ(a.front(), -0.5);
  // Both chains satisfy N >= 4 t for t <= 10.
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-6) << "t=" << 0.25 * k;
}

TEST(FreeFermion, BulkCurveIsBesselProfile) {
  // Oracle: in the infinite chain <S^z_0(t)> = -J_0(2t)/2 for a down start.
  const auto c = central_spin_curve(101, false, 0.5, 40);
  for (std::size_t k = 0; k < c.size(); ++k) EXPECT_NEAR(c[k], -0.5 * std::cyl_bessel_j(0.0, k * 1.0), 1e-12);
}

TEST(FreeFermion, BoundaryOnsetGrowsWithLength) {
  const double dt = 0.25;
  const auto ref = central_spin_curve(101, false, dt, 120);
  const auto t35 = first_deviation_time(central_spin_curve(35, false, dt, 120), ref, dt, 0.01);
  const auto t51 = first_deviation_time(central_spin_curve(51, false, dt, 120), ref, dt, 0.01);
  const auto t36 = first_deviation_time(central_spin_curve(36, true, dt, 120), ref, dt, 0.01);
  ASSERT_TRUE(t35 && t51 && t36);
  EXPECT_NEAR(*t35, 16.0, 2.0);
  EXPECT_NEAR(*t51, 22.0, 2.0);
  // A ring removes the edges but wraps the front around at the same distance.
  EXPECT_NEAR(*t36, *t35, 2.0);
  std::printf("onset N=35 %.2f N=51 %.2f ring N=36 %.2f\n", *t35, *t51, *t36);
}

TEST(FreeFermion, FirstDeviationNoneWhenIdentical) {
  const std::vector<double> a{0.1, 0.2, 0.3};
  EXPECT_FALSE(first_deviation_time(a, a, 1.0, 1e-12));
  EXPECT_DOUBLE_EQ(*first_deviation_time({0.0, 0.5}, {0.0, 0.0}, 0.25, 0.1), 0.25);
}
