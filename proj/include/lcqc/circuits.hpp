// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Block and corner-transfer circuits approximating exp(-i H t) on an open
// nearest-neighbour chain, with dense verification at small N.
//
// Bond b joins sites b and b+1. A factor exp(sign * i H_[lo,hi] tau) evolves
// every term whose sites lie in [lo, hi+1].

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "lcqc/errors.hpp"
#include "lcqc/hilbert.hpp"
#include "lcqc/models.hpp"

namespace lcqc {

struct GateFactor {
  int bond_lo = 0;
  int bond_hi = 0;  // inclusive
  double duration = 0.0;
  /// -1 for exp(-i H tau), +1 for exp(+i H tau).
  int sign = -1;

  SiteRange sites() const { return {bond_lo, bond_hi + 2}; }
};

/// Product of factors applied in list order (factors.front() acts first).
struct Gate {
  std::vector<GateFactor> factors;

  SiteRange support() const {
    SiteRange r{kMaxSites, 0};
    for (const auto& f : factors) {
      r.begin = std::min(r.begin, f.sites().begin);
      r.end = std::max(r.end, f.sites().end);
    }
    return r;
  }
};

struct CircuitLayer {
  std::string name;
  std::vector<Gate> gates;

  /// Throws InvariantViolation when two gates share a site.
  void check_disjoint() const {
    std::vector<SiteRange> s;
    for (const auto& g : gates)
      if (!g.factors.empty()) s.push_back(g.support());
    std::sort(s.begin(), s.end(), [](const SiteRange& a, const SiteRange& b) { return a.begin < b.begin; });
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i].begin < s[i - 1].end)
        throw InvariantViolation("CircuitLayer " + name + ": gate supports overlap at site " +
                                 std::to_string(s[i].begin));
  }
};

/// Layers in application order; one application represents evolution for
/// `time`.
struct Circuit {
  int n_sites = 0;
  double time = 0.0;
  std::vector<CircuitLayer> layers;
};

namespace detail {

inline void require_nearest_neighbour(const LocalHamiltonian& h) {
  validate(h);
  if (h.has_fields()) throw std::invalid_argument("circuits: site fields are not supported");
  for (const auto& t : h.terms)
    if (t.site_b != t.site_a + 1) throw std::invalid_argument("circuits: only nearest-neighbour bonds are supported");
}

inline void add_factor(Gate& g, int lo, int hi, double duration, int sign, int n_sites) {
  lo = std::max(lo, 0);
  hi = std::min(hi, n_sites - 2);
  if (lo > hi || duration == 0.0) return;
  g.factors.push_back({lo, hi, duration, sign});
}

}  // namespace detail

/// Blocks of l sites evolve independently; then each inter-block bond is
/// switched on inside an l-site window centred on it by
/// V = exp(-i (H_win + h_c) t) exp(+i H_win t). With allow_partial_block the
/// last block may be shorter and windows are clipped to the chain.
inline Circuit build_block_circuit(const LocalHamiltonian& h, int l, double t, bool allow_partial_block = false) {
  detail::require_nearest_neighbour(h);
  const int n = h.n_sites;
  if (l < 2 || l % 2 != 0) throw std::invalid_argument("build_block_circuit: l must be even and >= 2");
  if (n % l != 0 && !allow_partial_block)
    throw std::invalid_argument("build_block_circuit: chain length must be divisible by l");
  Circuit c{n, t, {{"U", {}}, {"V", {}}}};
  for (int k = 0; k * l < n; ++k) {
    Gate g;
    detail::add_factor(g, k * l, (k + 1) * l - 2, t, -1, n);
    c.layers[0].gates.push_back(g);
  }
  for (int k = 1; k * l < n; ++k) {
    const int coupling = k * l - 1;
    const int lo = k * l - l / 2, hi = k * l + l / 2 - 2;  // bonds of the window sites [kl - l/2, kl + l/2)
    Gate g;
    detail::add_factor(g, lo, coupling - 1, t, +1, n);
    detail::add_factor(g, coupling + 1, hi, t, +1, n);
    detail::add_factor(g, lo, hi, t, -1, n);
    c.layers[1].gates.push_back(g);
  }
  for (const auto& layer : c.layers) layer.check_disjoint();
  return c;
}

struct CornerConfig {
  int l_prime = 1;
  double t = 1.0;
  double v_lr = 1.0;

  /// Substeps per half round.
  int n0() const { return std::max(1, static_cast<int>(std::ceil(v_lr * t / 2.0 - 1e-12))); }

  /// Spacing of triangle centres, 2 l' + v t rounded up to even.
  int period() const {
    int l = static_cast<int>(std::ceil(2.0 * l_prime + v_lr * t - 1e-12));
    return l + (l % 2);
  }

  double substep() const { return t / (2.0 * n0()); }

  void validate() const {
    if (l_prime < 1) throw std::invalid_argument("CornerConfig: l' must be >= 1");
    if (!(t >= 0.0)) throw std::invalid_argument("CornerConfig: t must be non-negative");
    if (!(v_lr > 0.0)) throw std::invalid_argument("CornerConfig: v_LR must be positive");
    if (substep() > 1.0 / v_lr + 1e-12) throw InvariantViolation("CornerConfig: substep exceeds 1/v_LR");
  }
};

namespace detail {

/// Half-round layers: flattened triangles centred on `centres`, then the
/// rectangles between adjacent centres with the neighbouring half
/// triangles undone.
inline void add_corner_half(Circuit& c, const CornerConfig& cfg, const std::vector<int>& centres,
                            const std::string& suffix) {
  const int n = c.n_sites;
  const int n0 = cfg.n0();
  const double tau = cfg.substep();
  const int a = cfg.l_prime / 2, b = (cfg.l_prime + 1) / 2;

  CircuitLayer tri{"U" + suffix, {}};
  for (int ctr : centres) {
    Gate g;
    for (int s = n0 - 1; s >= 0; --s) add_factor(g, ctr - a - s, ctr + b + s, tau, -1, n);
    tri.gates.push_back(g);
  }

  CircuitLayer rect{"V" + suffix, {}};
  std::vector<int> edges;
  edges.push_back(-1);
  edges.insert(edges.end(), centres.begin(), centres.end());
  edges.push_back(n - 1);
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const int left = edges[e], right = edges[e + 1];
    const int lo = left + 1, hi = right - 1;
    if (lo > hi) continue;
    Gate g;
    if (e + 1 < edges.size() - 1) {
      // Undo the left half of the triangle centred at `right`: its slices
      // are applied last-first, so the inverse runs slice 0 first.
      for (int s = 0; s < n0; ++s) add_factor(g, std::max(lo, right - a - s), right - 1, tau, +1, n);
    }
    if (e > 0) {
      for (int s = 0; s < n0; ++s) add_factor(g, left + 1, std::min(hi, left + b + s), tau, +1, n);
    }
    add_factor(g, lo, hi, cfg.t / 2.0, -1, n);
    rect.gates.push_back(g);
  }
  c.layers.push_back(tri);
  c.layers.push_back(rect);
}

}  // namespace detail

/// One round approximates exp(-i H t): triangles U and rectangles V centred
/// on bonds k l, then U~ and V~ centred on k l + l/2. Chains whose length is
/// not a multiple of l end in a partial period.
inline Circuit build_corner_circuit(const LocalHamiltonian& h, const CornerConfig& cfg) {
  detail::require_nearest_neighbour(h);
  cfg.validate();
  const int n = h.n_sites;
  if (n < 2) throw std::invalid_argument("build_corner_circuit: need at least two sites");
  const int l = cfg.period();
  std::vector<int> centres, shifted;
  for (int c = 0; c <= n - 2; c += l) centres.push_back(c);
  for (int c = l / 2; c <= n - 2; c += l) shifted.push_back(c);
  Circuit c{n, cfg.t, {}};
  detail::add_corner_half(c, cfg, centres, "");
  detail::add_corner_half(c, cfg, shifted, "~");
  for (const auto& layer : c.layers) layer.check_disjoint();
  return c;
}

/// Identity circuit of the given length, for reference measurements.
inline Circuit identity_circuit(int n_sites, double t) { return {n_sites, t, {}}; }

/// Plain-text export: one line per factor,
/// "layer site_lo site_hi duration sign" with site_hi inclusive.
inline void write_circuit(std::ostream& os, const Circuit& c) {
  os << "# layer site_lo site_hi duration sign\n";
  for (const auto& layer : c.layers)
    for (const auto& g : layer.gates)
      for (const auto& f : g.factors)
        os << layer.name << ' ' << f.bond_lo << ' ' << f.bond_hi + 1 << ' ' << f.duration << ' '
           << (f.sign < 0 ? '-' : '+') << '\n';
}

/// Operator blocks in each magnetization sector of an n-site chain.
struct SectorOperator {
  int n_sites = 0;
  std::vector<BasisPtr> bases;  // index n_up
  std::vector<Eigen::MatrixXcd> blocks;

  static SectorOperator identity(int n) {
    SectorOperator op{n, {}, {}};
    for (int k = 0; k <= n; ++k) {
      op.bases.push_back(make_sector(n, k));
      const auto d = static_cast<Eigen::Index>(op.bases.back()->size());
      op.blocks.push_back(Eigen::MatrixXcd::Identity(d, d));
    }
    return op;
  }

  /// Largest singular value over all sectors.
  double spectral_norm() const {
    double best = 0.0;
    for (const auto& m : blocks) {
      if (m.size() == 0) continue;
      Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
      best = std::max(best, svd.singularValues()(0));
    }
    return best;
  }

  SectorOperator operator-(const SectorOperator& o) const {
    SectorOperator r = *this;
    for (std::size_t k = 0; k < blocks.size(); ++k) r.blocks[k] -= o.blocks[k];
    return r;
  }

  SectorOperator operator*(const SectorOperator& o) const {
    SectorOperator r = *this;
    for (std::size_t k = 0; k < blocks.size(); ++k) r.blocks[k] = blocks[k] * o.blocks[k];
    return r;
  }

  SectorOperator adjoint() const {
    SectorOperator r = *this;
    for (auto& m : r.blocks) m.adjointInPlace();
    return r;
  }
};

inline constexpr int kMaxDenseCircuitSites = 14;

/// Dense unitaries of circuit factors, cached by bond range.
class FactorCache {
 public:
  explicit FactorCache(const LocalHamiltonian& h) : h_(h) {}

  Eigen::MatrixXcd unitary(const GateFactor& f) {
    auto key = std::make_pair(f.bond_lo, f.bond_hi);
    auto it = eig_.find(key);
    if (it == eig_.end()) {
      const SiteRange w = f.sites();
      if (w.size() > 12) throw ResourceError("FactorCache: factor window wider than 12 sites");
      const Eigen::MatrixXd hw = dense_matrix(restrict(h_, w));
      it = eig_.emplace(key, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hw)).first;
    }
    const auto& es = it->second;
    const Eigen::VectorXcd ph =
        (Complex(0.0, f.sign * f.duration) * es.eigenvalues().cast<Complex>()).array().exp();
    const Eigen::MatrixXcd v = es.eigenvectors().cast<Complex>();
    return v * ph.asDiagonal() * v.adjoint();
  }

 private:
  LocalHamiltonian h_;
  std::map<std::pair<int, int>, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>> eig_;
};

/// The circuit as a sector-blocked dense operator.
inline SectorOperator circuit_operator(const Circuit& c, const LocalHamiltonian& h) {
  detail::require_nearest_neighbour(h);
  if (c.n_sites != h.n_sites) throw std::invalid_argument("circuit_operator: size mismatch");
  if (c.n_sites > kMaxDenseCircuitSites) throw ResourceError("circuit_operator: chain too long for dense evaluation");
  SectorOperator op = SectorOperator::identity(c.n_sites);
  FactorCache cache(h);
  for (const auto& layer : c.layers)
    for (const auto& g : layer.gates)
      for (const auto& f : g.factors) {
        const Eigen::MatrixXcd u = cache.unitary(f);
        for (std::size_t k = 0; k < op.blocks.size(); ++k) apply_local(*op.bases[k], op.blocks[k], f.sites(), u);
      }
  return op;
}

/// Dense unitary of one layer, for unitarity checks.
inline SectorOperator layer_operator(const CircuitLayer& layer, const LocalHamiltonian& h) {
  return circuit_operator(Circuit{h.n_sites, 0.0, {layer}}, h);
}

/// exp(-i H t) per sector by Hermitian diagonalization.
inline SectorOperator exact_propagator(const LocalHamiltonian& h, double t) {
  if (h.n_sites > kMaxDenseCircuitSites) throw ResourceError("exact_propagator: chain too long");
  SectorOperator op = SectorOperator::identity(h.n_sites);
  for (std::size_t k = 0; k < op.blocks.size(); ++k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_matrix(h, *op.bases[k]));
    const Eigen::VectorXcd ph = (Complex(0.0, -t) * es.eigenvalues().cast<Complex>()).array().exp();
    const Eigen::MatrixXcd v = es.eigenvectors().cast<Complex>();
    op.blocks[k] = v * ph.asDiagonal() * v.adjoint();
  }
  return op;
}

/// Spectral-norm distance between the circuit and exp(-i H t).
inline double circuit_error(const Circuit& c, const LocalHamiltonian& h) {
  return (exact_propagator(h, c.time) - circuit_operator(c, h)).spectral_norm();
}

/// Frobenius weight of op on `site`: |op - (1/2) tr_site(op) (x) 1|_F.
inline double site_weight(const SectorOperator& op, int site) {
  const Bits m = Bits{1} << site;
  double w = 0.0;
  for (std::size_t k = 0; k < op.blocks.size(); ++k) {
    const auto& basis = *op.bases[k];
    const auto& blk = op.blocks[k];
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const Complex v = blk(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        const Bits si = basis.state(i), sj = basis.state(j);
        if ((si & m) != (sj & m)) {
          w += std::norm(v);
          continue;
        }
        const Bits fi = si ^ m, fj = sj ^ m;
        const int other = std::popcount(fi);
        const auto& ob = *op.bases[static_cast<std::size_t>(other)];
        const Complex u = op.blocks[static_cast<std::size_t>(other)](static_cast<Eigen::Index>(ob.index(fi)),
                                                                     static_cast<Eigen::Index>(ob.index(fj)));
        w += 0.25 * std::norm(v - u);
      }
  }
  return std::sqrt(w);
}

inline double frobenius_norm(const SectorOperator& op) {
  double s = 0.0;
  for (const auto& b : op.blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

inline constexpr double kSupportThreshold = 1e-8;

/// Largest distance from `site` at which C^{-rounds} S^z_site C^{rounds} acts
/// with relative weight above 1e-8.
inline int support_radius(const SectorOperator& c_total, int site) {
  const int n = c_total.n_sites;
  SectorOperator o = c_total;
  for (std::size_t k = 0; k < o.blocks.size(); ++k) {
    const auto& basis = *o.bases[k];
    Eigen::VectorXcd d(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) d[static_cast<Eigen::Index>(i)] = ((basis.state(i) >> site) & 1U) ? 0.5 : -0.5;
    o.blocks[k] = c_total.blocks[k].adjoint() * d.asDiagonal() * c_total.blocks[k];
  }
  const double norm = frobenius_norm(o);
  int radius = 0;
  for (int j = 0; j < n; ++j)
    if (site_weight(o, j) > kSupportThreshold * norm) radius = std::max(radius, std::abs(j - site));
  return radius;
}

/// Support growth per unit time: the largest Heisenberg-picture radius of a
/// single-site S^z over all starting sites after `rounds` applications,
/// divided by rounds * circuit time.
inline double measure_circuit_velocity(const Circuit& c, const LocalHamiltonian& h, int rounds) {
  if (rounds < 1) throw std::invalid_argument("measure_circuit_velocity: rounds must be >= 1");
  if (c.time <= 0.0) throw std::invalid_argument("measure_circuit_velocity: circuit time must be positive");
  const SectorOperator one = circuit_operator(c, h);
  SectorOperator total = one;
  for (int r = 1; r < rounds; ++r) total = one * total;
  int radius = 0;
  for (int s = 0; s < c.n_sites; ++s) radius = std::max(radius, support_radius(total, s));
  return radius / (rounds * c.time);
}

/// Rank of the operator-Schmidt decomposition of a full-space operator on n
/// sites across the cut between sites cut-1 and cut.
inline int operator_schmidt_rank(const Eigen::MatrixXcd& op, int n, int cut, double tol = 1e-10) {
  if (op.rows() != (Eigen::Index{1} << n) || op.cols() != op.rows())
    throw std::invalid_argument("operator_schmidt_rank: dimension mismatch");
  if (cut <= 0 || cut >= n) return 1;
  const Eigen::Index dl = Eigen::Index{1} << cut, dr = Eigen::Index{1} << (n - cut);
  Eigen::MatrixXcd r(dl * dl, dr * dr);
  for (Eigen::Index i = 0; i < op.rows(); ++i)
    for (Eigen::Index j = 0; j < op.cols(); ++j) {
      const Eigen::Index il = i & (dl - 1), ir = i >> cut, jl = j & (dl - 1), jr = j >> cut;
      r(il * dl + jl, ir * dr + jr) = op(i, j);
    }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(r);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s[k] > tol * s[0]) ++rank;
  return rank;
}

/// Largest operator bond dimension across the cut at distance d from the
/// nearer end of an n-site operator: 4^min(d, n-d).
inline std::uint64_t operator_bond_bound(int n, int cut) {
  const int d = std::min(cut, n - cut);
  return std::uint64_t{1} << (2 * std::max(0, d));
}

}  // namespace lcqc
