// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Computational basis, fixed-magnetization sectors and state vectors for
// spin-1/2 chains. Site i is bit i of a 64-bit word; a set bit is spin up.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lcqc/errors.hpp"

namespace lcqc {

using Complex = std::complex<double>;
using Bits = std::uint64_t;

inline constexpr int kMaxSites = 40;

inline constexpr Bits low_mask(int width) {
  return width >= 64 ? ~Bits{0} : ((Bits{1} << width) - 1);
}

inline constexpr Bits extract_bits(Bits bits, int begin, int width) {
  return (bits >> begin) & low_mask(width);
}

/// Half-open range of site indices [begin, end).
struct SiteRange {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool contains(int site) const { return site >= begin && site < end; }
  Bits mask() const { return low_mask(size()) << begin; }
  friend bool operator==(const SiteRange&, const SiteRange&) = default;
};

struct BasisState {
  Bits bits = 0;
  int n_sites = 0;

  int n_up() const { return std::popcount(bits); }
  double total_sz() const { return n_up() - 0.5 * n_sites; }
  bool up(int site) const { return (bits >> site) & 1U; }
  friend bool operator==(const BasisState&, const BasisState&) = default;
};

namespace detail {

inline const std::array<std::array<std::uint64_t, 65>, 65>& binomial_table() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 65>, 65> c{};
    for (int n = 0; n <= 64; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
    return c;
  }();
  return table;
}

}  // namespace detail

inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n || n > 64) return 0;
  return detail::binomial_table()[n][k];
}

/// Basis states of n_sites spins, either all 2^n of them or those with a fixed
/// number of up spins. States are sorted by their bit pattern.
class SectorBasis {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Every bit pattern with popcount n_up, in increasing numeric order.
  static SectorBasis sector(int n_sites, int n_up) {
    if (n_sites < 0 || n_sites > kMaxSites)
      throw std::invalid_argument("sector: n_sites must lie in [0, 40]");
    if (n_up < 0 || n_up > n_sites)
      throw std::invalid_argument("sector: n_up must lie in [0, n_sites]");
    SectorBasis b;
    b.n_sites_ = n_sites;
    b.n_up_ = n_up;
    const std::uint64_t count = binomial(n_sites, n_up);
    b.states_.reserve(count);
    if (n_up == 0) {
      b.states_.push_back(0);
    } else {
      Bits v = low_mask(n_up);
      for (std::uint64_t k = 0; k < count; ++k) {
        b.states_.push_back(v);
        const Bits t = v | (v - 1);
        v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
      }
    }
    return b;
  }

  /// The unrestricted 2^n_sites basis; states are not materialized.
  static SectorBasis full(int n_sites) {
    if (n_sites < 0 || n_sites > kMaxSites)
      throw std::invalid_argument("full basis: n_sites must lie in [0, 40]");
    SectorBasis b;
    b.n_sites_ = n_sites;
    b.n_up_ = -1;
    return b;
  }

  int n_sites() const { return n_sites_; }
  std::optional<int> n_up() const {
    return n_up_ < 0 ? std::nullopt : std::optional<int>(n_up_);
  }
  bool is_sector() const { return n_up_ >= 0; }

  std::size_t size() const {
    return is_sector() ? states_.size() : (std::size_t{1} << n_sites_);
  }

  Bits state(std::size_t k) const { return is_sector() ? states_[k] : static_cast<Bits>(k); }

  BasisState basis_state(std::size_t k) const { return {state(k), n_sites_}; }

  bool contains(Bits b) const {
    if ((b & ~low_mask(n_sites_)) != 0) return false;
    return !is_sector() || std::popcount(b) == n_up_;
  }

  /// Position of b in this basis, or npos. Uses the combinatorial number
  /// system, which orders fixed-popcount words numerically.
  std::size_t index(Bits b) const {
    if (!contains(b)) return npos;
    if (!is_sector()) return static_cast<std::size_t>(b);
    std::uint64_t rank = 0;
    int j = 1;
    while (b != 0) {
      const int p = std::countr_zero(b);
      rank += binomial(p, j);
      ++j;
      b &= b - 1;
    }
    return static_cast<std::size_t>(rank);
  }

  friend bool operator==(const SectorBasis& a, const SectorBasis& b) {
    return a.n_sites_ == b.n_sites_ && a.n_up_ == b.n_up_;
  }

 private:
  SectorBasis() = default;
  int n_sites_ = 0;
  int n_up_ = -1;
  std::vector<Bits> states_;
};

inline SectorBasis enumerate_sector(int n_sites, int n_up) {
  return SectorBasis::sector(n_sites, n_up);
}

using BasisPtr = std::shared_ptr<const SectorBasis>;

inline BasisPtr make_sector(int n_sites, int n_up) {
  return std::make_shared<const SectorBasis>(SectorBasis::sector(n_sites, n_up));
}
inline BasisPtr make_full(int n_sites) {
  return std::make_shared<const SectorBasis>(SectorBasis::full(n_sites));
}

/// Amplitudes over a shared, immutable basis.
struct StateVector {
  BasisPtr basis;
  Eigen::VectorXcd amps;

  StateVector() = default;
  StateVector(BasisPtr b) : basis(std::move(b)), amps(Eigen::VectorXcd::Zero(basis->size())) {}
  StateVector(BasisPtr b, Eigen::VectorXcd a) : basis(std::move(b)), amps(std::move(a)) {
    if (static_cast<std::size_t>(amps.size()) != basis->size())
      throw std::invalid_argument("StateVector: amplitude count does not match basis size");
  }

  int n_sites() const { return basis->n_sites(); }
  std::size_t size() const { return basis->size(); }
  double norm() const { return amps.norm(); }

  Complex amplitude(Bits b) const {
    const std::size_t k = basis->index(b);
    return k == SectorBasis::npos ? Complex{} : amps[static_cast<Eigen::Index>(k)];
  }

  void normalize() {
    const double n = amps.norm();
    if (n == 0.0) throw std::invalid_argument("StateVector: cannot normalize the zero vector");
    amps /= n;
  }
};

inline StateVector basis_vector(BasisPtr basis, Bits b) {
  const std::size_t k = basis->index(b);
  if (k == SectorBasis::npos) throw std::invalid_argument("basis_vector: state not in basis");
  StateVector v(std::move(basis));
  v.amps[static_cast<Eigen::Index>(k)] = 1.0;
  return v;
}

/// Alternating pattern; up_first puts site 0 up.
inline Bits neel_bits(int n_sites, bool up_first) {
  Bits b = 0;
  for (int i = 0; i < n_sites; ++i)
    if ((i % 2 == 0) == up_first) b |= Bits{1} << i;
  return b;
}

inline BasisState neel_basis_state(int n_sites, bool up_first) {
  if (n_sites < 1 || n_sites > kMaxSites)
    throw std::invalid_argument("neel_state: n_sites must lie in [1, 40]");
  return {neel_bits(n_sites, up_first), n_sites};
}

/// Largest sector a state vector may be materialized in.
inline constexpr std::uint64_t kMaxStateDimension = std::uint64_t{1} << 28;

/// The Neel pattern as a vector in its magnetization sector.
inline StateVector neel_state(int n_sites, bool up_first) {
  const BasisState s = neel_basis_state(n_sites, up_first);
  if (binomial(n_sites, s.n_up()) > kMaxStateDimension)
    throw ResourceError("neel_state: sector dimension exceeds the state-vector limit");
  return basis_vector(make_sector(n_sites, s.n_up()), s.bits);
}

/// a on the low sites, b on the high sites.
inline StateVector tensor_product(const StateVector& a, const StateVector& b) {
  const int na = a.n_sites();
  const int n = na + b.n_sites();
  if (n > kMaxSites) throw std::invalid_argument("tensor_product: too many sites");
  BasisPtr basis = (a.basis->is_sector() && b.basis->is_sector())
                       ? make_sector(n, *a.basis->n_up() + *b.basis->n_up())
                       : make_full(n);
  StateVector out(basis);
  for (std::size_t j = 0; j < b.size(); ++j) {
    const Complex bj = b.amps[static_cast<Eigen::Index>(j)];
    if (bj == Complex{}) continue;
    const Bits hi = b.basis->state(j) << na;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Complex ai = a.amps[static_cast<Eigen::Index>(i)];
      if (ai == Complex{}) continue;
      out.amps[static_cast<Eigen::Index>(basis->index(hi | a.basis->state(i)))] = ai * bj;
    }
  }
  return out;
}

/// Re-expresses v in another basis on the same sites; amplitudes outside the
/// target basis must vanish.
inline StateVector embed(const StateVector& v, BasisPtr target) {
  if (target->n_sites() != v.n_sites()) throw std::invalid_argument("embed: site count mismatch");
  StateVector out(target);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Complex a = v.amps[static_cast<Eigen::Index>(k)];
    if (a == Complex{}) continue;
    const std::size_t j = target->index(v.basis->state(k));
    if (j == SectorBasis::npos) throw std::invalid_argument("embed: amplitude outside target basis");
    out.amps[static_cast<Eigen::Index>(j)] = a;
  }
  return out;
}

namespace detail {

struct SparseEntry {
  Bits bits;
  Complex amp;
};

inline constexpr double kSupportFloor = 1e-300;

inline BasisPtr basis_for_support(int n_sites, const std::vector<Bits>& support) {
  if (support.empty()) return make_full(n_sites);
  const int pc = std::popcount(support.front());
  for (Bits b : support)
    if (std::popcount(b) != pc) return make_full(n_sites);
  return make_sector(n_sites, pc);
}

inline StateVector vector_from_map(int n_sites, const std::unordered_map<Bits, Complex>& m) {
  std::vector<Bits> support;
  support.reserve(m.size());
  for (const auto& [b, a] : m) support.push_back(b);
  StateVector v(basis_for_support(n_sites, support));
  for (const auto& [b, a] : m) v.amps[static_cast<Eigen::Index>(v.basis->index(b))] = a;
  return v;
}

}  // namespace detail

/// Splits a product state into its factors on three consecutive ranges that
/// partition the chain. Factors are normalized and their tensor product
/// reproduces the input, including its global phase.
inline std::array<StateVector, 3> factorize_split(const StateVector& psi,
                                                  const std::array<SiteRange, 3>& ranges,
                                                  double tolerance = 1e-10) {
  const int n = psi.n_sites();
  if (ranges[0].begin != 0 || ranges[0].end != ranges[1].begin || ranges[1].end != ranges[2].begin ||
      ranges[2].end != n || ranges[0].empty() || ranges[1].empty() || ranges[2].empty())
    throw std::invalid_argument("factorize_split: ranges must partition the chain into three non-empty parts");

  std::vector<detail::SparseEntry> support;
  std::size_t pivot = 0;
  double pivot_mag = -1.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const Complex a = psi.amps[static_cast<Eigen::Index>(k)];
    const double m = std::norm(a);
    if (m <= detail::kSupportFloor) continue;
    if (m > pivot_mag) {
      pivot_mag = m;
      pivot = support.size();
    }
    support.push_back({psi.basis->state(k), a});
  }
  if (support.empty()) throw std::invalid_argument("factorize_split: zero state");

  const Bits pb = support[pivot].bits;
  const Complex p = support[pivot].amp;
  std::array<Bits, 3> pivot_part;
  for (int r = 0; r < 3; ++r) pivot_part[r] = extract_bits(pb, ranges[r].begin, ranges[r].size());

  // Slices through the pivot entry along each range.
  std::array<std::unordered_map<Bits, Complex>, 3> slice;
  for (const auto& e : support) {
    std::array<Bits, 3> part;
    for (int r = 0; r < 3; ++r) part[r] = extract_bits(e.bits, ranges[r].begin, ranges[r].size());
    for (int r = 0; r < 3; ++r) {
      bool others_match = true;
      for (int s = 0; s < 3; ++s)
        if (s != r && part[s] != pivot_part[s]) others_match = false;
      if (others_match) slice[r][part[r]] = e.amp;
    }
  }

  std::array<double, 3> slice_norm2{};
  for (int r = 0; r < 3; ++r)
    for (const auto& [b, a] : slice[r]) slice_norm2[r] += std::norm(a);

  const Complex inv_p2 = 1.0 / (p * p);
  double residual2 = 0.0;
  double product_on_support2 = 0.0;
  for (const auto& e : support) {
    Complex prod = inv_p2;
    for (int r = 0; r < 3; ++r) {
      auto it = slice[r].find(extract_bits(e.bits, ranges[r].begin, ranges[r].size()));
      prod *= (it == slice[r].end()) ? Complex{} : it->second;
    }
    residual2 += std::norm(e.amp - prod);
    product_on_support2 += std::norm(prod);
  }
  const std::size_t product_support = slice[0].size() * slice[1].size() * slice[2].size();
  if (product_support != support.size()) {
    const double product_norm2 = slice_norm2[0] * slice_norm2[1] * slice_norm2[2] / std::norm(p * p);
    residual2 += std::max(0.0, product_norm2 - product_on_support2);
  }
  const double residual = std::sqrt(residual2) / psi.norm();
  if (residual > tolerance)
    throw StructureError("factorize_split: state is not a product across the cuts (residual " +
                         std::to_string(residual) + ")");

  std::array<StateVector, 3> out;
  for (int r = 0; r < 3; ++r) {
    out[r] = detail::vector_from_map(ranges[r].size(), slice[r]);
    out[r].normalize();
  }
  // The product of the normalized slices differs from psi by the phase of p.
  const Complex phase = p / std::abs(p);
  const Complex slice_phase = [&] {
    Complex c = 1.0;
    for (int r = 0; r < 3; ++r) c *= out[r].amplitude(pivot_part[r]);
    return c / std::abs(c);
  }();
  out[0].amps *= phase / slice_phase;
  return out;
}

/// One term of a conditional decomposition: the outer sites are in the basis
/// state `outer`, with marginal amplitude `amplitude` (real, non-negative) and
/// normalized conditional state `inner` on the remaining sites.
struct Branch {
  BasisState outer;
  double amplitude = 0.0;
  StateVector inner;
};

inline constexpr double kBranchWeightCutoff = 1e-14;

/// Removes the contiguous range `outer` from a bit pattern, packing the
/// remaining sites in order.
inline Bits remove_range(Bits bits, const SiteRange& outer) {
  return (bits & low_mask(outer.begin)) | ((bits >> outer.end) << outer.begin);
}

inline Bits insert_range(Bits inner, Bits outer_bits, const SiteRange& outer) {
  return (inner & low_mask(outer.begin)) | (outer_bits << outer.begin) |
         ((inner >> outer.begin) << outer.end);
}

/// Writes psi = sum over outer basis states alpha of A(alpha) phi(alpha) (x)
/// xi(alpha). Branches are sorted by outer bits; those with |A|^2 below
/// 1e-14 are dropped.
inline std::vector<Branch> conditional_decompose(const StateVector& psi, const SiteRange& outer) {
  const int n = psi.n_sites();
  if (outer.begin < 0 || outer.end > n || outer.empty() || outer.size() == n)
    throw std::invalid_argument("conditional_decompose: outer range must be a proper non-empty subrange");
  const int n_inner = n - outer.size();

  std::map<Bits, std::vector<std::pair<Bits, Complex>>> groups;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const Complex a = psi.amps[static_cast<Eigen::Index>(k)];
    if (a == Complex{}) continue;
    const Bits b = psi.basis->state(k);
    groups[extract_bits(b, outer.begin, outer.size())].emplace_back(remove_range(b, outer), a);
  }

  std::map<int, BasisPtr> inner_bases;
  auto inner_basis = [&](Bits alpha) {
    const int key = psi.basis->is_sector() ? *psi.basis->n_up() - std::popcount(alpha) : -1;
    auto it = inner_bases.find(key);
    if (it != inner_bases.end()) return it->second;
    BasisPtr b = key < 0 ? make_full(n_inner) : make_sector(n_inner, key);
    inner_bases.emplace(key, b);
    return b;
  };

  std::vector<Branch> out;
  for (auto& [alpha, entries] : groups) {
    double w = 0.0;
    for (const auto& e : entries) w += std::norm(e.second);
    if (w < kBranchWeightCutoff) continue;
    StateVector xi(inner_basis(alpha));
    for (const auto& [bits, a] : entries) xi.amps[static_cast<Eigen::Index>(xi.basis->index(bits))] = a;
    const double amp = std::sqrt(w);
    xi.amps /= amp;
    out.push_back({BasisState{alpha, outer.size()}, amp, std::move(xi)});
  }
  return out;
}

/// Inverse of conditional_decompose on the given basis.
inline StateVector reconstruct(const std::vector<Branch>& branches, const SiteRange& outer, BasisPtr basis) {
  StateVector out(basis);
  for (const auto& br : branches)
    for (std::size_t k = 0; k < br.inner.size(); ++k) {
      const Complex a = br.inner.amps[static_cast<Eigen::Index>(k)];
      if (a == Complex{}) continue;
      const Bits b = insert_range(br.inner.basis->state(k), br.outer.bits, outer);
      const std::size_t j = basis->index(b);
      if (j == SectorBasis::npos) throw std::invalid_argument("reconstruct: basis does not contain branch support");
      out.amps[static_cast<Eigen::Index>(j)] += br.amplitude * a;
    }
  return out;
}

/// Left-multiplies the rows of `columns` (indexed by `basis`) by a unitary
/// acting on the sites of `window`. `local` is indexed by the window bits
/// (window.begin is the lowest bit) and must not couple configurations that
/// fall outside the basis.
template <class Derived>
void apply_local(const SectorBasis& basis, Eigen::MatrixBase<Derived>& columns, const SiteRange& window,
                 const Eigen::MatrixXcd& local) {
  const int w = window.size();
  if (local.rows() != (Eigen::Index{1} << w) || local.cols() != local.rows())
    throw std::invalid_argument("apply_local: operator dimension does not match window");
  const std::size_t dim = basis.size();
  const Bits wmask = window.mask();
  std::vector<char> done(dim, 0);
  std::vector<Eigen::Index> rows, locs;
  Eigen::MatrixXcd sub, block;
  for (std::size_t k = 0; k < dim; ++k) {
    if (done[k]) continue;
    const Bits env = basis.state(k) & ~wmask;
    rows.clear();
    locs.clear();
    for (Bits loc = 0; loc < (Bits{1} << w); ++loc) {
      const std::size_t idx = basis.index(env | (loc << window.begin));
      if (idx == SectorBasis::npos) continue;
      rows.push_back(static_cast<Eigen::Index>(idx));
      locs.push_back(static_cast<Eigen::Index>(loc));
      done[idx] = 1;
    }
    const auto m = static_cast<Eigen::Index>(rows.size());
    sub = local(locs, locs);
    block.resize(m, columns.cols());
    for (Eigen::Index r = 0; r < m; ++r) block.row(r) = columns.row(rows[r]);
    block = (sub * block).eval();
    for (Eigen::Index r = 0; r < m; ++r) columns.row(rows[r]) = block.row(r);
  }
}

}  // namespace lcqc
