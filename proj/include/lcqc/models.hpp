// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Spin-1/2 chain Hamiltonians built from two-site bond terms, with S = sigma/2.
// A bond contributes J_xy (S^x S^x + S^y S^y) + J_z S^z S^z; site fields
// contribute -h_i S^z_i.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcqc/hilbert.hpp"

namespace lcqc {

enum class BondKind { heisenberg, xxz };

struct BondTerm {
  int site_a = 0;
  int site_b = 0;
  BondKind kind = BondKind::xxz;
  double j_xy = 0.0;
  double j_z = 0.0;

  static BondTerm heisenberg(int a, int b, double j) { return {a, b, BondKind::heisenberg, j, j}; }
  static BondTerm xxz(int a, int b, double j_xy, double j_z) { return {a, b, BondKind::xxz, j_xy, j_z}; }
  friend bool operator==(const BondTerm&, const BondTerm&) = default;
};

struct LocalHamiltonian {
  int n_sites = 0;
  std::vector<BondTerm> terms;
  /// Per-site Zeeman fields h_i entering as -h_i S^z_i; empty means zero.
  std::vector<double> site_fields;

  double field(int site) const {
    return site_fields.empty() ? 0.0 : site_fields[static_cast<std::size_t>(site)];
  }
  bool has_fields() const {
    return std::any_of(site_fields.begin(), site_fields.end(), [](double h) { return h != 0.0; });
  }
};

inline void validate(const LocalHamiltonian& h) {
  if (h.n_sites < 1) throw std::invalid_argument("LocalHamiltonian: n_sites must be positive");
  if (!h.site_fields.empty() && h.site_fields.size() != static_cast<std::size_t>(h.n_sites))
    throw std::invalid_argument("LocalHamiltonian: site_fields must be empty or have n_sites entries");
  for (const auto& t : h.terms) {
    const int d = t.site_b - t.site_a;
    if (t.site_a < 0 || t.site_b >= h.n_sites || (d != 1 && d != 2))
      throw std::invalid_argument("LocalHamiltonian: bond must join i to i+1 or i+2 inside the chain");
    if (!std::isfinite(t.j_xy) || !std::isfinite(t.j_z))
      throw std::invalid_argument("LocalHamiltonian: non-finite coupling");
  }
}

/// Open-boundary XXZ chain with unit exchange.
inline LocalHamiltonian build_xxz(int n_sites, double delta) {
  if (n_sites < 2) throw std::invalid_argument("build_xxz: need at least two sites");
  LocalHamiltonian h{n_sites, {}, {}};
  for (int i = 0; i + 1 < n_sites; ++i) h.terms.push_back(BondTerm::xxz(i, i + 1, 1.0, delta));
  return h;
}

namespace detail {

/// Uniform draw in [0,1) from the top 53 bits, identical on every platform.
template <class Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Nearest-neighbour Heisenberg chain from a list of bond strengths; bond i
/// joins sites i and i+1.
inline LocalHamiltonian chain_from_bonds(const std::vector<double>& bonds) {
  LocalHamiltonian h{static_cast<int>(bonds.size()) + 1, {}, {}};
  for (std::size_t i = 0; i < bonds.size(); ++i)
    h.terms.push_back(BondTerm::heisenberg(static_cast<int>(i), static_cast<int>(i) + 1, bonds[i]));
  return h;
}

/// Dimerized chain with intra-dimer strength j on bonds (0,1), (2,3), ... and
/// random inter-dimer bonds: j_f with probability p, otherwise j_a.
template <class Rng>
LocalHamiltonian build_faf(int n_sites, double j, double j_f, double j_a, double p, Rng& rng) {
  if (n_sites < 2 || n_sites % 2 != 0) throw std::invalid_argument("build_faf: n_sites must be even and >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("build_faf: p must lie in [0, 1]");
  if (!(j_f < 0.0 && 0.0 < j_a)) throw std::invalid_argument("build_faf: need j_f < 0 < j_a");
  std::vector<double> bonds(static_cast<std::size_t>(n_sites - 1));
  for (std::size_t i = 0; i < bonds.size(); ++i)
    bonds[i] = (i % 2 == 0) ? j : (detail::uniform01(rng) < p ? j_f : j_a);
  return chain_from_bonds(bonds);
}

/// Chain with nearest bonds j_i and second-neighbour bonds k_i = j_i j_{i+1} / 2.
inline LocalHamiltonian frustrated_from_bonds(const std::vector<double>& bonds) {
  const int n = static_cast<int>(bonds.size()) + 1;
  if (n < 3) throw std::invalid_argument("frustrated chain: n_sites must be >= 3");
  LocalHamiltonian h{n, {}, {}};
  for (int i = 0; i + 1 < n; ++i) {
    h.terms.push_back(BondTerm::heisenberg(i, i + 1, bonds[static_cast<std::size_t>(i)]));
    if (i + 2 < n)
      h.terms.push_back(BondTerm::heisenberg(
          i, i + 2, 0.5 * bonds[static_cast<std::size_t>(i)] * bonds[static_cast<std::size_t>(i) + 1]));
  }
  return h;
}

/// Frustrated chain with each j_i drawn uniformly from {j_choices.first,
/// j_choices.second}.
template <class Rng>
LocalHamiltonian build_frustrated(int n_sites, std::pair<double, double> j_choices, Rng& rng) {
  if (n_sites < 3) throw std::invalid_argument("build_frustrated: n_sites must be >= 3");
  std::vector<double> bonds(static_cast<std::size_t>(n_sites - 1));
  for (auto& b : bonds) b = detail::uniform01(rng) < 0.5 ? j_choices.first : j_choices.second;
  return frustrated_from_bonds(bonds);
}

/// Uniform frustrated chain with j = 1, k = 1/2.
inline LocalHamiltonian build_frustrated_pure(int n_sites) {
  if (n_sites < 3) throw std::invalid_argument("build_frustrated: n_sites must be >= 3");
  return frustrated_from_bonds(std::vector<double>(static_cast<std::size_t>(n_sites - 1), 1.0));
}

/// Nearest-neighbour exchange strengths in bond order (the isotropic coupling
/// of each (i, i+1) term, summed if repeated).
inline std::vector<double> nearest_bonds(const LocalHamiltonian& h) {
  std::vector<double> bonds(static_cast<std::size_t>(std::max(0, h.n_sites - 1)), 0.0);
  for (const auto& t : h.terms)
    if (t.site_b == t.site_a + 1) bonds[static_cast<std::size_t>(t.site_a)] += t.j_z;
  return bonds;
}

inline void write_couplings(std::ostream& os, const std::vector<double>& bonds) {
  const auto old = os.precision(17);
  for (double b : bonds) os << b << '\n';
  os.precision(old);
}

inline std::vector<double> read_couplings(std::istream& is) {
  std::vector<double> bonds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(line.substr(first), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("read_couplings: bad value on line " + std::to_string(line_no));
    }
    if (line.find_first_not_of(" \t\r", first + used) != std::string::npos)
      throw std::invalid_argument("read_couplings: trailing characters on line " + std::to_string(line_no));
    bonds.push_back(v);
  }
  return bonds;
}

/// Sets the uniform field -h sum_i S^z_i.
inline LocalHamiltonian with_uniform_field(LocalHamiltonian h, double field) {
  h.site_fields.assign(static_cast<std::size_t>(h.n_sites), field);
  return h;
}

/// Adds lambda sum_i (-1)^i S_i . S_{i+1} as extra isotropic bond terms.
inline LocalHamiltonian with_dimer_field(LocalHamiltonian h, double lambda) {
  if (lambda == 0.0) return h;
  for (int i = 0; i + 1 < h.n_sites; ++i)
    h.terms.push_back(BondTerm::heisenberg(i, i + 1, (i % 2 == 0) ? lambda : -lambda));
  return h;
}

/// Terms fully inside `window`, re-based so window.begin becomes site 0.
/// Without boundary terms, bonds touching either end site of the window are
/// dropped as well.
inline LocalHamiltonian restrict(const LocalHamiltonian& h, const SiteRange& window,
                                 bool keep_boundary_terms = true) {
  if (window.empty()) throw std::invalid_argument("restrict: empty window");
  if (window.begin < 0 || window.end > h.n_sites) throw std::invalid_argument("restrict: window outside chain");
  LocalHamiltonian out{window.size(), {}, {}};
  const int lo = window.begin, hi = window.end - 1;
  for (const auto& t : h.terms) {
    if (!window.contains(t.site_a) || !window.contains(t.site_b)) continue;
    if (!keep_boundary_terms && (t.site_a == lo || t.site_b == hi)) continue;
    BondTerm r = t;
    r.site_a -= lo;
    r.site_b -= lo;
    out.terms.push_back(r);
  }
  if (!h.site_fields.empty())
    out.site_fields.assign(h.site_fields.begin() + lo, h.site_fields.begin() + window.end);
  return out;
}

/// Real symmetric matrix in compressed-row form. Every supported Hamiltonian
/// is real in the S^z basis, so values are stored as doubles.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t dim, std::vector<std::size_t> row_ptr, std::vector<std::uint32_t> cols,
               std::vector<double> vals, std::vector<double> diag)
      : dim_(dim), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), vals_(std::move(vals)),
        diag_(std::move(diag)) {}

  std::size_t dimension() const { return dim_; }
  std::size_t off_diagonal_count() const { return vals_.size(); }
  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::uint32_t>& cols() const { return cols_; }
  const std::vector<double>& values() const { return vals_; }
  const std::vector<double>& diagonal() const { return diag_; }

  /// y = H x.
  void apply(const Complex* x, Complex* y) const {
    for (std::size_t r = 0; r < dim_; ++r) {
      Complex acc = diag_[r] * x[r];
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += vals_[k] * x[cols_[k]];
      y[r] = acc;
    }
  }

  Eigen::VectorXcd operator*(const Eigen::VectorXcd& x) const {
    if (static_cast<std::size_t>(x.size()) != dim_) throw std::invalid_argument("SparseMatrix: size mismatch");
    Eigen::VectorXcd y(x.size());
    apply(x.data(), y.data());
    return y;
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    for (std::size_t r = 0; r < dim_; ++r) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = diag_[r];
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols_[k])) += vals_[k];
    }
    return m;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::uint32_t> cols_;
  std::vector<double> vals_;
  std::vector<double> diag_;
};

inline double diagonal_energy(const LocalHamiltonian& h, Bits s) {
  double e = 0.0;
  for (const auto& t : h.terms) {
    const bool same = ((s >> t.site_a) & 1U) == ((s >> t.site_b) & 1U);
    e += same ? 0.25 * t.j_z : -0.25 * t.j_z;
  }
  if (!h.site_fields.empty())
    for (int i = 0; i < h.n_sites; ++i) e -= h.site_fields[static_cast<std::size_t>(i)] * (((s >> i) & 1U) ? 0.5 : -0.5);
  return e;
}

/// Matrix elements <s'|H|s> within `basis`.
inline SparseMatrix assemble_sparse(const LocalHamiltonian& h, const SectorBasis& basis) {
  if (h.n_sites != basis.n_sites()) throw std::invalid_argument("assemble_sparse: site count mismatch");
  validate(h);
  const std::size_t dim = basis.size();
  if (dim > std::size_t{0xFFFFFFFF}) throw std::invalid_argument("assemble_sparse: dimension too large");
  std::vector<std::size_t> row_ptr;
  row_ptr.reserve(dim + 1);
  row_ptr.push_back(0);
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  std::vector<double> diag(dim);
  std::vector<std::pair<std::uint32_t, double>> row;
  for (std::size_t r = 0; r < dim; ++r) {
    const Bits s = basis.state(r);
    diag[r] = diagonal_energy(h, s);
    row.clear();
    for (const auto& t : h.terms) {
      if (t.j_xy == 0.0) continue;
      if (((s >> t.site_a) & 1U) == ((s >> t.site_b) & 1U)) continue;
      const Bits flipped = s ^ ((Bits{1} << t.site_a) | (Bits{1} << t.site_b));
      row.emplace_back(static_cast<std::uint32_t>(basis.index(flipped)), 0.5 * t.j_xy);
    }
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!cols.empty() && cols.size() > row_ptr.back() && cols.back() == row[k].first) {
        vals.back() += row[k].second;
      } else {
        cols.push_back(row[k].first);
        vals.push_back(row[k].second);
      }
    }
    row_ptr.push_back(cols.size());
  }
  return SparseMatrix(dim, std::move(row_ptr), std::move(cols), std::move(vals), std::move(diag));
}

inline Eigen::MatrixXd dense_matrix(const LocalHamiltonian& h, const SectorBasis& basis) {
  return assemble_sparse(h, basis).to_dense();
}

/// Full 2^n matrix, indexed by bit pattern.
inline Eigen::MatrixXd dense_matrix(const LocalHamiltonian& h) {
  return dense_matrix(h, SectorBasis::full(h.n_sites));
}

/// Maximal excitation velocity of the XXZ chain, (pi/2) sin(theta)/theta with
/// cos(theta) = delta.
inline double spin_wave_velocity(double delta) {
  if (!(std::abs(delta) <= 1.0)) throw std::domain_error("spin_wave_velocity: requires |delta| <= 1");
  const double theta = std::acos(delta);
  if (theta < 1e-4) {
    const double t2 = theta * theta;
    return std::numbers::pi / 2 * (1.0 - t2 / 6.0 + t2 * t2 / 120.0);
  }
  return std::numbers::pi / 2 * std::sin(theta) / theta;
}

}  // namespace lcqc
