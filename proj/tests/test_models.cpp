// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "lcqc/models.hpp"
#include "oracles.hpp"

using namespace lcqc;

namespace {

std::vector<oracle::Bond> as_oracle_bonds(const LocalHamiltonian& h) {
  std::vector<oracle::Bond> out;
  for (const auto& t : h.terms) out.push_back({t.site_a, t.site_b, t.j_xy, t.j_z});
  return out;
}

oracle::Mat oracle_matrix(const LocalHamiltonian& h) {
  return oracle::bond_hamiltonian(h.n_sites, as_oracle_bonds(h), h.site_fields);
}

Eigen::VectorXd sorted_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

LocalHamiltonian random_model(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  LocalHamiltonian h{n, {}, {}};
  for (int i = 0; i + 1 < n; ++i) {
    h.terms.push_back(BondTerm::xxz(i, i + 1, u(rng), u(rng)));
    if (i + 2 < n && u(rng) > 0) h.terms.push_back(BondTerm::heisenberg(i, i + 2, u(rng)));
  }
  if (u(rng) > 0) h = with_uniform_field(h, u(rng));
  return h;
}

}  // namespace

TEST(Xxz, TwoSiteXYSpectrum) {
  // Oracle: dense Pauli-product matrix.
  const auto ev = sorted_eigenvalues(oracle_matrix(build_xxz(2, 0.0)).real());
  const Eigen::Vector4d expect(-0.5, 0.0, 0.0, 0.5);
  EXPECT_LT((ev - expect).norm(), 1e-14);
  EXPECT_LT((sorted_eigenvalues(dense_matrix(build_xxz(2, 0.0))) - expect).norm(), 1e-14);
}

TEST(Xxz, TwoSiteHeisenbergSpectrum) {
  const auto ev = sorted_eigenvalues(dense_matrix(build_xxz(2, 1.0)));
  EXPECT_NEAR(ev[0], -0.75, 1e-14);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev[i], 0.25, 1e-14);
}

TEST(Xxz, TwelveSiteGroundStateMatchesDenseOracle) {
  const auto h = build_xxz(12, 0.5);
  const oracle::Mat full = oracle_matrix(h);
  double oracle_e0 = 1e300, e0 = 1e300;
  for (int k = 0; k <= 12; ++k) {
    oracle_e0 = std::min(oracle_e0, sorted_eigenvalues(oracle::sector_block(full, 12, k).real())[0]);
    e0 = std::min(e0, sorted_eigenvalues(dense_matrix(h, enumerate_sector(12, k)))[0]);
  }
  EXPECT_NEAR(e0, oracle_e0, 1e-10);
}

TEST(Xxz, RejectsSingleSite) { EXPECT_THROW(build_xxz(1, 0.0), std::invalid_argument); }

TEST(Assemble, TwoSiteSectorBlock) {
  const double delta = 0.37;
  const auto m = dense_matrix(build_xxz(2, delta), enumerate_sector(2, 1));
  Eigen::Matrix2d expect;
  expect << -delta / 4, 0.5, 0.5, -delta / 4;
  EXPECT_LT((m - expect).norm(), 1e-15);
}

TEST(Assemble, AllUpSectorIsIsingSum) {
  std::mt19937_64 rng(1);
  const auto h = random_model(7, rng);
  double expect = 0.0;
  for (const auto& t : h.terms) expect += t.j_z / 4;
  for (int i = 0; i < 7; ++i) expect -= h.field(i) / 2;
  const auto m = dense_matrix(h, enumerate_sector(7, 7));
  ASSERT_EQ(m.rows(), 1);
  EXPECT_NEAR(m(0, 0), expect, 1e-14);
}

TEST(Assemble, SymmetricOnRandomModels) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 11;
    const auto h = random_model(n, rng);
    const auto m = dense_matrix(h);
    EXPECT_LT((m - m.transpose()).norm(), 1e-14);
  }
}

TEST(Assemble, SectorBlocksReassembleDenseOracle) {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 10; ++n) {
    const auto h = random_model(n, rng);
    const oracle::Mat ref = oracle_matrix(h);
    Eigen::MatrixXd blocks = Eigen::MatrixXd::Zero(1L << n, 1L << n);
    for (int k = 0; k <= n; ++k) {
      const auto b = enumerate_sector(n, k);
      const auto m = dense_matrix(h, b);
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
          blocks(static_cast<long>(b.state(i)), static_cast<long>(b.state(j))) = m(static_cast<long>(i), static_cast<long>(j));
    }
    EXPECT_LT((blocks - ref.real()).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n;
    EXPECT_LT(ref.imag().cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Assemble, CommutesWithTotalMagnetization) {
  std::mt19937_64 rng(6);
  for (int n = 2; n <= 10; ++n) {
    const auto h = random_model(n, rng);
    const Eigen::MatrixXd m = dense_matrix(h);
    Eigen::VectorXd sz(1L << n);
    for (long s = 0; s < (1L << n); ++s) sz[s] = std::popcount(static_cast<Bits>(s)) - 0.5 * n;
    const Eigen::MatrixXd comm = m * sz.asDiagonal() - sz.asDiagonal() * m;
    EXPECT_LT(comm.norm(), 1e-12);
  }
}

TEST(Faf, DegenerateProbabilities) {
  std::mt19937_64 rng(1);
  for (double p : {0.0, 1.0}) {
    const auto h = build_faf(20, 1.0, -2.0, 2.0, p, rng);
    const auto b = nearest_bonds(h);
    for (std::size_t i = 0; i < b.size(); ++i) {
      EXPECT_EQ(b[i], i % 2 == 0 ? 1.0 : (p == 0.0 ? 2.0 : -2.0));
    }
    for (const auto& t : h.terms) EXPECT_EQ(t.j_xy, t.j_z);
  }
}

TEST(Faf, BernoulliFraction) {
  std::mt19937_64 rng(12345);
  const int n = 10000;
  const auto b = nearest_bonds(build_faf(n, 1.0, -2.0, 2.0, 0.5, rng));
  int ferro = 0, total = 0;
  for (std::size_t i = 1; i < b.size(); i += 2) {
    ++total;
    ferro += b[i] < 0;
  }
  // Binomial bound: 3 sigma = 3 sqrt(n p (1-p)).
  EXPECT_LT(std::abs(ferro - 0.5 * total), 3.0 * std::sqrt(0.25 * total));
}

TEST(Faf, RejectsOddLength) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(build_faf(7, 1.0, -2.0, 2.0, 0.5, rng), std::invalid_argument);
}

TEST(Frustrated, SecondNeighbourRule) {
  const auto h = frustrated_from_bonds({0.9, 0.9, 0.9, 0.9});
  for (const auto& t : h.terms) {
    if (t.site_b == t.site_a + 2) {
      EXPECT_NEAR(t.j_z, 0.405, 1e-15);
    }
  }
  const auto m = frustrated_from_bonds({0.9, 1.1});
  ASSERT_EQ(m.terms.size(), 3U);
  EXPECT_NEAR(m.terms[1].j_z, 0.495, 1e-15);
}

TEST(Frustrated, PureSixSiteGroundState) {
  // Oracle: dense diagonalization. The open uniform chain at k = j/2 has the
  // dimer covering (01)(23)(45) as exact ground state, energy 3 * (-3/4).
  const auto h = build_frustrated_pure(6);
  const auto ev = sorted_eigenvalues(oracle_matrix(h).real());
  EXPECT_NEAR(ev[0], -2.25, 1e-12);
  EXPECT_NEAR(sorted_eigenvalues(dense_matrix(h))[0], -2.25, 1e-12);
}

TEST(Frustrated, RandomChoicesComeFromAlphabet) {
  std::mt19937_64 rng(3);
  const auto h = build_frustrated(50, {0.9, 1.1}, rng);
  for (double b : nearest_bonds(h)) EXPECT_TRUE(b == 0.9 || b == 1.1);
}

TEST(Restrict, CountsAndRebasing) {
  const auto h = build_xxz(9, 0.3);
  const auto r = restrict(h, SiteRange{0, 4});
  EXPECT_EQ(r.n_sites, 4);
  EXPECT_EQ(r.terms.size(), 3U);
  const auto mid = restrict(h, SiteRange{3, 6});
  ASSERT_EQ(mid.terms.size(), 2U);
  EXPECT_EQ(mid.terms[0].site_a, 0);
  EXPECT_EQ(restrict(h, SiteRange{4, 5}).terms.size(), 0U);
  EXPECT_THROW(restrict(h, SiteRange{4, 4}), std::invalid_argument);
  EXPECT_EQ(restrict(h, SiteRange{0, 4}, false).terms.size(), 1U);
}

TEST(Restrict, FullRangeIsIdentity) {
  std::mt19937_64 rng(8);
  const auto h = random_model(8, rng);
  const auto r = restrict(h, SiteRange{0, 8});
  EXPECT_EQ(r.terms, h.terms);
  EXPECT_EQ(r.site_fields, h.site_fields);
}

TEST(Couplings, RoundTrip) {
  std::mt19937_64 rng(10);
  const auto h = build_faf(12, 1.0, -2.0, 2.0, 0.5, rng);
  std::stringstream ss;
  write_couplings(ss, nearest_bonds(h));
  const auto back = chain_from_bonds(read_couplings(ss));
  EXPECT_EQ(back.terms, h.terms);
  std::stringstream bad("1.0\nfoo\n");
  EXPECT_THROW(read_couplings(bad), std::invalid_argument);
}

TEST(DimerField, StaggeredSigns) {
  const auto h = with_dimer_field(build_xxz(4, 1.0), 0.1);
  ASSERT_EQ(h.terms.size(), 6U);
  EXPECT_DOUBLE_EQ(h.terms[3].j_z, 0.1);
  EXPECT_DOUBLE_EQ(h.terms[4].j_z, -0.1);
  EXPECT_DOUBLE_EQ(h.terms[5].j_z, 0.1);
}

TEST(SpinWave, ReferenceValues) {
  EXPECT_NEAR(spin_wave_velocity(0.0), 1.0, 1e-15);
  EXPECT_NEAR(spin_wave_velocity(1.0), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(spin_wave_velocity(0.5), 3.0 * std::sqrt(3.0) / 4.0, 1e-15);
  EXPECT_THROW(spin_wave_velocity(1.5), std::domain_error);
}

TEST(SpinWave, MonotoneIncreasingAndContinuous) {
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = spin_wave_velocity(-1.0 + 0.02 * i);
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_NEAR(spin_wave_velocity(1.0 - 1e-9), std::numbers::pi / 2, 1e-4);
  EXPECT_NEAR(spin_wave_velocity(-1.0), 0.0, 1e-15);
}
