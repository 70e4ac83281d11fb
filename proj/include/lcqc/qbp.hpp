// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Thermal free energy of long chains by sweeping a window density matrix.
//
// Every term of the chain is assigned to its highest site j; the terms of
// site j form the increment g_j. After the sweep has reached site s, the
// window holds the normalized marginal of exp(-beta (g_0 + ... + g_{s-1} +
// g_s / 2)). Adding site s+1 appends a free spin and switches on
// A = (g_s + g_{s+1}) / 2 through
//
//   rho -> O^T (tr_first(rho) (x) 1) O,   O = exp(beta (H - A)/2) exp(-beta H / 2),
//
// with H the window Hamiltonian after the step. If the window held the exact
// Gibbs state of H - A this reproduces exp(-beta H) exactly; the only
// approximation is that O acts on the window and not on the whole chain. A
// final tail step adds the last half increment. Traces stripped at each step
// accumulate into ln Z.
//
// All supported Hamiltonians conserve S^z, so window matrices and transfer
// operators are stored block-diagonally by the number of up spins.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "lcqc/errors.hpp"
#include "lcqc/hilbert.hpp"
#include "lcqc/models.hpp"
#include "lcqc/parallel.hpp"

namespace lcqc {

/// One dense matrix per up-spin count of a window.
using BlockMatrix = std::vector<Eigen::MatrixXd>;

/// States of an n-site window grouped by up-spin count, and the position of
/// every bit pattern inside its group.
class WindowLayout {
 public:
  explicit WindowLayout(int n_sites) : n_sites_(n_sites) {
    if (n_sites < 1 || n_sites > 20) throw std::invalid_argument("WindowLayout: window must have 1..20 sites");
    groups_.resize(static_cast<std::size_t>(n_sites) + 1);
    position_.resize(std::size_t{1} << n_sites);
    for (Bits b = 0; b < (Bits{1} << n_sites); ++b) {
      auto& g = groups_[static_cast<std::size_t>(std::popcount(b))];
      position_[b] = static_cast<int>(g.size());
      g.push_back(b);
    }
  }

  int n_sites() const { return n_sites_; }
  int n_groups() const { return n_sites_ + 1; }
  const std::vector<Bits>& group(int n_up) const { return groups_[static_cast<std::size_t>(n_up)]; }
  int position(Bits b) const { return position_[b]; }

 private:
  int n_sites_;
  std::vector<std::vector<Bits>> groups_;
  std::vector<int> position_;
};

/// Dense matrix of a window Hamiltonian, one block per up-spin count.
inline BlockMatrix block_hamiltonian(const LocalHamiltonian& h, const WindowLayout& layout) {
  validate(h);
  if (h.n_sites != layout.n_sites()) throw std::invalid_argument("block_hamiltonian: site count mismatch");
  BlockMatrix out(static_cast<std::size_t>(layout.n_groups()));
  for (int k = 0; k < layout.n_groups(); ++k) {
    const auto& states = layout.group(k);
    auto& m = out[static_cast<std::size_t>(k)];
    m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(states.size()), static_cast<Eigen::Index>(states.size()));
    for (std::size_t r = 0; r < states.size(); ++r) {
      const Bits s = states[r];
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = diagonal_energy(h, s);
      for (const auto& t : h.terms) {
        if (t.j_xy == 0.0 || ((s >> t.site_a) & 1U) == ((s >> t.site_b) & 1U)) continue;
        const Bits f = s ^ ((Bits{1} << t.site_a) | (Bits{1} << t.site_b));
        m(layout.position(f), static_cast<Eigen::Index>(r)) += 0.5 * t.j_xy;
      }
    }
  }
  return out;
}

namespace detail {

struct BlockSpectrum {
  std::vector<Eigen::VectorXd> values;
  std::vector<Eigen::MatrixXd> vectors;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
};

inline BlockSpectrum spectrum(const BlockMatrix& h) {
  BlockSpectrum s;
  for (const auto& b : h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    if (es.info() != Eigen::Success) throw std::runtime_error("qbp: eigensolver failed");
    s.min = std::min(s.min, es.eigenvalues().minCoeff());
    s.max = std::max(s.max, es.eigenvalues().maxCoeff());
    s.values.push_back(es.eigenvalues());
    s.vectors.push_back(es.eigenvectors());
  }
  return s;
}

/// exp(factor (H - shift)) block by block.
inline BlockMatrix exp_blocks(const BlockSpectrum& s, double factor, double shift) {
  BlockMatrix out;
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    const Eigen::VectorXd w = (factor * (s.values[k].array() - shift)).exp().matrix();
    out.push_back(s.vectors[k] * w.asDiagonal() * s.vectors[k].transpose());
  }
  return out;
}

/// LocalHamiltonian a + scale * b on the same window.
inline LocalHamiltonian combine(const LocalHamiltonian& a, const LocalHamiltonian& b, double scale) {
  LocalHamiltonian out = a;
  for (auto t : b.terms) {
    t.j_xy *= scale;
    t.j_z *= scale;
    out.terms.push_back(t);
  }
  if (!b.site_fields.empty()) {
    if (out.site_fields.empty()) out.site_fields.assign(static_cast<std::size_t>(out.n_sites), 0.0);
    for (std::size_t i = 0; i < b.site_fields.size(); ++i) out.site_fields[i] += scale * b.site_fields[i];
  }
  return out;
}

// exp(x) underflows to zero below about -745.
inline constexpr double kMaxExponent = 700.0;

}  // namespace detail

/// Window density matrix; ln Z of the sites swept so far is log_weight plus
/// the log of the trace (1 after normalization).
struct WindowDensityMatrix {
  int n_sites = 0;
  int first_site = 0;
  BlockMatrix blocks;
  double log_weight = 0.0;

  double trace() const {
    double t = 0.0;
    for (const auto& b : blocks) t += b.trace();
    return t;
  }

  /// Divides by the trace and moves its log into log_weight.
  void normalize() {
    const double t = trace();
    if (!(t > 0.0) || !std::isfinite(t)) throw NumericalBreakdown("qbp: window trace is not positive", static_cast<std::size_t>(first_site));
    for (auto& b : blocks) b /= t;
    log_weight += std::log(t);
  }

  /// Full 2^n matrix indexed by window bit pattern (site first_site = bit 0).
  Eigen::MatrixXd dense(const WindowLayout& layout) const {
    const Eigen::Index dim = Eigen::Index{1} << n_sites;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < layout.n_groups(); ++k) {
      const auto& g = layout.group(k);
      for (std::size_t r = 0; r < g.size(); ++r)
        for (std::size_t c = 0; c < g.size(); ++c)
          out(static_cast<Eigen::Index>(g[r]), static_cast<Eigen::Index>(g[c])) =
              blocks[static_cast<std::size_t>(k)](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    return out;
  }
};

/// Normalized exp(-beta H) on a window; log_weight = ln tr exp(-beta H).
inline WindowDensityMatrix window_gibbs(const LocalHamiltonian& h, const WindowLayout& layout, double beta,
                                        int first_site = 0) {
  if (!(beta >= 0.0)) throw std::invalid_argument("window_gibbs: beta must be >= 0");
  const auto s = detail::spectrum(block_hamiltonian(h, layout));
  WindowDensityMatrix rho{h.n_sites, first_site, detail::exp_blocks(s, -beta, s.min), -beta * s.min};
  rho.normalize();
  return rho;
}

/// O = exp(beta (H - A)/2) exp(-beta H / 2) stored as scaled blocks; the true
/// operator is exp(log_scale / 2) times `blocks`.
struct TransferOperator {
  int n_sites = 0;
  double beta = 0.0;
  std::vector<double> key;
  BlockMatrix blocks;
  double log_scale = 0.0;
};

/// Builds the transfer operator for window Hamiltonian `window_h` (A
/// included) and perturbation `a`, both on the same window.
inline TransferOperator build_transfer_op(const LocalHamiltonian& window_h, const LocalHamiltonian& a, double beta,
                                          const WindowLayout& layout) {
  if (!(beta >= 0.0)) throw std::invalid_argument("build_transfer_op: beta must be >= 0");
  if (a.n_sites != window_h.n_sites) throw std::invalid_argument("build_transfer_op: A must live on the window");
  const auto full = detail::spectrum(block_hamiltonian(window_h, layout));
  const auto before = detail::spectrum(block_hamiltonian(detail::combine(window_h, a, -1.0), layout));
  if (beta * (full.max - full.min) / 2 > detail::kMaxExponent ||
      beta * (before.max - before.min) / 2 > detail::kMaxExponent)
    throw std::range_error("build_transfer_op: exponent out of range at this beta");
  // Both factors are shifted to have largest entry 1; the shifts go into log_scale.
  const BlockMatrix up = detail::exp_blocks(before, 0.5 * beta, before.max);
  const BlockMatrix down = detail::exp_blocks(full, -0.5 * beta, full.min);
  TransferOperator op{window_h.n_sites, beta, {}, {}, beta * (before.max - full.min)};
  for (std::size_t k = 0; k < up.size(); ++k) op.blocks.push_back(up[k] * down[k]);
  return op;
}

inline TransferOperator build_transfer_op(const LocalHamiltonian& window_h, const LocalHamiltonian& a, double beta) {
  return build_transfer_op(window_h, a, beta, WindowLayout(window_h.n_sites));
}

/// rho -> O^T rho O with the operator's scale folded into log_weight.
inline void apply_transfer(WindowDensityMatrix& rho, const TransferOperator& op) {
  if (op.n_sites != rho.n_sites) throw std::invalid_argument("apply_transfer: window size mismatch");
  Eigen::MatrixXd tmp;
  for (std::size_t k = 0; k < rho.blocks.size(); ++k) {
    if (rho.blocks[k].size() == 0) continue;
    tmp.noalias() = rho.blocks[k] * op.blocks[k];
    rho.blocks[k].noalias() = op.blocks[k].transpose() * tmp;
  }
  rho.log_weight += op.log_scale;
}

/// Canonical encoding of the couplings inside one window, relative to the
/// window start.
using BondConfigurationKey = std::vector<double>;

/// Index tables for tracing out bit 0 of a window and appending a free spin
/// as the new top bit.
class WindowShift {
 public:
  explicit WindowShift(const WindowLayout& layout) : n_(layout.n_sites()) {
    if (n_ < 2) throw std::invalid_argument("WindowShift: window needs at least two sites");
    const WindowLayout inner(n_ - 1);
    reduced_dims_.resize(static_cast<std::size_t>(n_));
    source_.resize(static_cast<std::size_t>(n_));
    target_.resize(static_cast<std::size_t>(n_) + 1);
    for (int m = 0; m < n_; ++m) {
      const auto& g = inner.group(m);
      reduced_dims_[static_cast<std::size_t>(m)] = static_cast<Eigen::Index>(g.size());
      for (Bits c = 0; c < 2; ++c) {
        auto& idx = source_[static_cast<std::size_t>(m)][c];
        for (Bits x : g) idx.push_back(layout.position(c | (x << 1)));
      }
    }
    for (int k = 0; k <= n_; ++k)
      for (Bits b = 0; b < 2; ++b) {
        const int m = k - static_cast<int>(b);
        if (m < 0 || m >= n_) continue;
        auto& idx = target_[static_cast<std::size_t>(k)][b];
        for (Bits x : inner.group(m)) idx.push_back(layout.position(x | (b << (n_ - 1))));
      }
  }

  /// tr_first(rho) (x) 1, in place; first_site advances by one.
  void apply(WindowDensityMatrix& rho) const {
    BlockMatrix reduced(static_cast<std::size_t>(n_));
    for (int m = 0; m < n_; ++m) {
      const auto um = static_cast<std::size_t>(m);
      reduced[um] = Eigen::MatrixXd::Zero(reduced_dims_[um], reduced_dims_[um]);
      for (std::size_t c = 0; c < 2; ++c) {
        const auto& idx = source_[um][c];
        reduced[um] += rho.blocks[um + c](idx, idx);
      }
    }
    for (int k = 0; k <= n_; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      auto& out = rho.blocks[uk];
      out.setZero();
      for (std::size_t b = 0; b < 2; ++b) {
        const auto& idx = target_[uk][b];
        if (idx.empty()) continue;
        out(idx, idx) = reduced[uk - b];
      }
    }
    ++rho.first_site;
  }

 private:
  int n_;
  std::vector<Eigen::Index> reduced_dims_;
  std::vector<std::array<std::vector<int>, 2>> source_;
  std::vector<std::array<std::vector<int>, 2>> target_;
};

/// Operators for one chain at one beta: the initial window state, one
/// transfer operator per distinct window signature, and the tail operator.
struct TransferTable {
  int n_sites = 0;
  int window = 0;
  double beta = 0.0;
  WindowDensityMatrix initial;
  std::map<BondConfigurationKey, std::size_t> signatures;
  std::vector<TransferOperator> ops;
  /// ops index for the step that adds site window + i.
  std::vector<std::size_t> step_ops;
  TransferOperator tail;

  std::size_t signature_count() const { return signatures.size(); }
};

namespace detail {

inline int increment_site(const BondTerm& t) { return std::max(t.site_a, t.site_b); }

/// Window [begin, begin + width) with increment weights: increments below
/// `half_from` count fully, increments in [half_from, half_to] count half,
/// later ones not at all.
inline LocalHamiltonian weighted_window(const LocalHamiltonian& h, int begin, int width,
                                        const std::vector<std::vector<std::size_t>>& by_site, int half_from,
                                        int half_to) {
  LocalHamiltonian out{width, {}, {}};
  auto weight = [&](int j) { return j < half_from ? 1.0 : (j <= half_to ? 0.5 : 0.0); };
  for (int j = begin; j < begin + width; ++j)
    for (std::size_t idx : by_site[static_cast<std::size_t>(j)]) {
      BondTerm t = h.terms[idx];
      if (std::min(t.site_a, t.site_b) < begin) continue;
      const double w = weight(j);
      if (w == 0.0) continue;
      t.site_a -= begin;
      t.site_b -= begin;
      t.j_xy *= w;
      t.j_z *= w;
      out.terms.push_back(t);
    }
  if (!h.site_fields.empty()) {
    out.site_fields.resize(static_cast<std::size_t>(width));
    for (int j = begin; j < begin + width; ++j)
      out.site_fields[static_cast<std::size_t>(j - begin)] = weight(j) * h.site_fields[static_cast<std::size_t>(j)];
  }
  return out;
}

/// Sorted term list plus fields; identical physics gives identical keys.
inline BondConfigurationKey window_key(double kind, const LocalHamiltonian& w) {
  std::vector<std::tuple<int, int, double, double>> terms;
  for (const auto& t : w.terms) terms.emplace_back(t.site_a, t.site_b, t.j_xy, t.j_z);
  std::sort(terms.begin(), terms.end());
  BondConfigurationKey key{kind, static_cast<double>(w.n_sites)};
  for (const auto& [a, b, jxy, jz] : terms) key.insert(key.end(), {double(a), double(b), jxy, jz});
  key.insert(key.end(), w.site_fields.begin(), w.site_fields.end());
  return key;
}

inline std::vector<std::vector<std::size_t>> terms_by_site(const LocalHamiltonian& h) {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(h.n_sites));
  for (std::size_t i = 0; i < h.terms.size(); ++i)
    out[static_cast<std::size_t>(increment_site(h.terms[i]))].push_back(i);
  return out;
}

inline int term_range(const LocalHamiltonian& h) {
  int r = 0;
  for (const auto& t : h.terms) r = std::max(r, std::abs(t.site_b - t.site_a));
  return r;
}

}  // namespace detail

/// Smallest usable window for `h`: A must fit inside it.
inline int minimum_window(const LocalHamiltonian& h) { return std::max(2, detail::term_range(h) + 2); }

/// Builds the operator table for a sweep of `h` with window l0. Windows of
/// at least the chain length reduce to the exact Gibbs state.
inline TransferTable precompute_ops(const LocalHamiltonian& h, int l0, double beta) {
  validate(h);
  if (!(beta >= 0.0)) throw std::invalid_argument("precompute_ops: beta must be >= 0");
  if (!std::isfinite(beta)) throw std::range_error("precompute_ops: beta must be finite");
  const int n = h.n_sites;
  const int w = std::min(l0, n);
  if (w < n && w < minimum_window(h))
    throw std::invalid_argument("precompute_ops: window too small for the term range");
  if (w > 20) throw ResourceError("precompute_ops: window above 20 sites");
  const auto by_site = detail::terms_by_site(h);
  const WindowLayout layout(w);

  TransferTable table;
  table.n_sites = n;
  table.window = w;
  table.beta = beta;
  table.initial = window_gibbs(detail::weighted_window(h, 0, w, by_site, w - 1, w - 1), layout, beta, 0);

  for (int s = w; s < n; ++s) {
    const int begin = s - w + 1;
    const auto full = detail::weighted_window(h, begin, w, by_site, s, s);
    auto key = detail::window_key(0.0, full);
    auto [it, inserted] = table.signatures.try_emplace(key, table.ops.size());
    if (inserted) {
      const auto a = detail::weighted_window(h, begin, w, by_site, s - 1, s);
      // a currently weights increments s-1 and s by one half and everything
      // earlier fully; keep only the two half increments.
      LocalHamiltonian pert{w, {}, {}};
      for (const auto& t : a.terms)
        if (detail::increment_site(t) + begin >= s - 1) pert.terms.push_back(t);
      if (!a.site_fields.empty()) {
        pert.site_fields.assign(static_cast<std::size_t>(w), 0.0);
        for (int j = std::max(begin, s - 1); j <= s; ++j)
          pert.site_fields[static_cast<std::size_t>(j - begin)] = a.site_fields[static_cast<std::size_t>(j - begin)];
      }
      table.ops.push_back(build_transfer_op(full, pert, beta, layout));
      table.ops.back().key = std::move(key);
    }
    table.step_ops.push_back(it->second);
  }

  const int begin = n - w;
  const auto full = detail::weighted_window(h, begin, w, by_site, n, n);
  const auto half_last = detail::weighted_window(h, begin, w, by_site, n - 1, n - 1);
  table.tail = build_transfer_op(full, detail::combine(full, half_last, -1.0), beta, layout);
  table.tail.key = detail::window_key(1.0, full);
  return table;
}

/// Positivity tolerance relative to the unit trace.
inline constexpr double kPositivityTolerance = 1e-10;

namespace detail {

inline void check_positive(const WindowDensityMatrix& rho, std::size_t site) {
  for (const auto& b : rho.blocks) {
    if (b.size() == 0) continue;
    Eigen::MatrixXd shifted = b;
    shifted.diagonal().array() += kPositivityTolerance;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() != Eigen::Success)
      throw NumericalBreakdown("qbp: window density matrix lost positivity", site);
  }
}

}  // namespace detail

struct SweepResult {
  double log_z = 0.0;
  WindowDensityMatrix final_state;
};

/// Runs the sweep; ln Z is the accumulated log weight of the final window.
inline SweepResult sweep(const TransferTable& table, bool check_positivity = true) {
  WindowDensityMatrix rho = table.initial;
  if (table.window < table.n_sites) {
    const WindowShift shift{WindowLayout(table.window)};
    for (std::size_t i = 0; i < table.step_ops.size(); ++i) {
      const auto site = static_cast<std::size_t>(table.window) + i;
      shift.apply(rho);
      apply_transfer(rho, table.ops[table.step_ops[i]]);
      rho.normalize();
      if (check_positivity) detail::check_positive(rho, site);
    }
  }
  apply_transfer(rho, table.tail);
  rho.normalize();
  if (check_positivity) detail::check_positive(rho, static_cast<std::size_t>(table.n_sites - 1));
  return {rho.log_weight, std::move(rho)};
}

/// ln Z of `h` at inverse temperature beta with window l0.
inline double log_partition(const LocalHamiltonian& h, int l0, double beta) {
  return sweep(precompute_ops(h, l0, beta)).log_z;
}

struct LogPartitionJob {
  const LocalHamiltonian* model = nullptr;
  double beta = 0.0;
};

/// Independent sweeps on up to `workers` threads; each result depends only on
/// its job.
inline std::vector<double> log_partition_batch(const std::vector<LogPartitionJob>& jobs, int l0, unsigned workers) {
  std::vector<double> out(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t i) { out[i] = log_partition(*jobs[i].model, l0, jobs[i].beta); });
  return out;
}

/// A finite-difference observable with a flag for catastrophic cancellation.
struct ThermoValue {
  double value = 0.0;
  bool precision_warning = false;
};

namespace detail {

/// Second derivative from f(-2s), f(-s), f(0), f(s), f(2s).
inline double second_difference5(const std::vector<double>& f, double step) {
  return (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * step * step);
}

inline bool cancelled(double numerator, double log_z) {
  return std::abs(numerator) < 1e3 * std::numeric_limits<double>::epsilon() * std::abs(log_z);
}

}  // namespace detail

/// Per-site response of ln Z to a parameter coupled through `perturb`, by a
/// five-point central difference: (1/N) d^2 ln Z / dx^2.
template <class Perturb>
ThermoValue second_derivative_per_site(const LocalHamiltonian& h, int l0, double beta, double step, Perturb perturb,
                                       unsigned workers = 1) {
  if (!(step > 0.0)) throw std::invalid_argument("qbp: finite-difference step must be positive");
  std::vector<LocalHamiltonian> models;
  for (int k = -2; k <= 2; ++k) models.push_back(perturb(h, k * step));
  std::vector<LogPartitionJob> jobs;
  for (const auto& m : models) jobs.push_back({&m, beta});
  const auto f = log_partition_batch(jobs, l0, workers);
  const double d2 = detail::second_difference5(f, step);
  const double numerator = -f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4];
  return {d2 / h.n_sites, detail::cancelled(numerator, f[2])};
}

/// chi = (1/N) beta^-1 d^2 ln Z / dh^2 for the Zeeman term -h sum S^z.
inline ThermoValue uniform_susceptibility(const LocalHamiltonian& h, int l0, double beta, double h_step = 1e-3,
                                          unsigned workers = 1) {
  if (!(beta > 0.0)) throw std::invalid_argument("uniform_susceptibility: beta must be > 0");
  auto r = second_derivative_per_site(
      h, l0, beta, h_step,
      [](const LocalHamiltonian& m, double x) {
        LocalHamiltonian out = m;
        if (out.site_fields.empty()) out.site_fields.assign(static_cast<std::size_t>(out.n_sites), 0.0);
        for (auto& f : out.site_fields) f += x;
        return out;
      },
      workers);
  r.value /= beta;
  return r;
}

/// chi_dimer / beta per site = beta^-2 d^2 ln Z / d lambda^2 for the
/// staggered bond field lambda sum (-1)^i S_i . S_{i+1}.
inline ThermoValue dimer_susceptibility(const LocalHamiltonian& h, int l0, double beta, double lambda_step = 1e-3,
                                        unsigned workers = 1) {
  if (!(beta > 0.0)) throw std::invalid_argument("dimer_susceptibility: beta must be > 0");
  auto r = second_derivative_per_site(
      h, l0, beta, lambda_step, [](const LocalHamiltonian& m, double x) { return with_dimer_field(m, x); }, workers);
  r.value /= beta * beta;
  return r;
}

/// C = beta^2 d^2 ln Z / d beta^2 per site, three-point central difference.
inline ThermoValue specific_heat_from(double f_minus, double f0, double f_plus, double beta, double beta_step,
                                      int n_sites) {
  const double numerator = f_plus - 2 * f0 + f_minus;
  return {beta * beta * numerator / (beta_step * beta_step) / n_sites, detail::cancelled(numerator, f0)};
}

inline ThermoValue specific_heat(const LocalHamiltonian& h, int l0, double beta, double beta_step = 0.25,
                                 unsigned workers = 1) {
  if (!(beta_step > 0.0) || beta < beta_step)
    throw std::invalid_argument("specific_heat: need 0 < beta_step <= beta");
  const auto f = log_partition_batch({{&h, beta - beta_step}, {&h, beta}, {&h, beta + beta_step}}, l0, workers);
  return specific_heat_from(f[0], f[1], f[2], beta, beta_step, h.n_sites);
}

struct ThermoRequest {
  bool specific_heat = true;
  bool susceptibility = true;
  bool dimer = false;
  double beta_step = 0.25;
  double h_step = 1e-3;
  double lambda_step = 1e-3;
};

struct ThermoPoint {
  double beta = 0.0;
  double log_z = 0.0;
  ThermoValue specific_heat;
  ThermoValue susceptibility;
  ThermoValue dimer;
};

/// Observables on the grid beta = k beta_step, k = 1..n_points. One frozen
/// model serves every offset; ln Z at h = 0, lambda = 0 is shared between
/// observables and grid neighbours.
inline std::vector<ThermoPoint> thermo_curve(const LocalHamiltonian& h, int l0, int n_points, const ThermoRequest& req,
                                             unsigned workers = 1) {
  if (n_points < 1) throw std::invalid_argument("thermo_curve: need at least one grid point");
  if (!(req.beta_step > 0.0 && req.h_step > 0.0 && req.lambda_step > 0.0))
    throw std::invalid_argument("thermo_curve: steps must be positive");
  std::vector<LocalHamiltonian> fields, dimers;
  for (int k : {-2, -1, 1, 2}) {
    LocalHamiltonian m = h;
    if (m.site_fields.empty()) m.site_fields.assign(static_cast<std::size_t>(m.n_sites), 0.0);
    for (auto& f : m.site_fields) f += k * req.h_step;
    fields.push_back(std::move(m));
    dimers.push_back(with_dimer_field(h, k * req.lambda_step));
  }
  std::vector<LogPartitionJob> jobs;
  // Base ln Z at k = 0..n_points+1, then four field and four dimer offsets per point.
  for (int k = 0; k <= n_points + 1; ++k) jobs.push_back({&h, k * req.beta_step});
  const std::size_t offsets = jobs.size();
  for (int k = 1; k <= n_points; ++k) {
    if (req.susceptibility)
      for (const auto& m : fields) jobs.push_back({&m, k * req.beta_step});
    if (req.dimer)
      for (const auto& m : dimers) jobs.push_back({&m, k * req.beta_step});
  }
  const auto f = log_partition_batch(jobs, l0, workers);

  std::vector<ThermoPoint> out;
  std::size_t next = offsets;
  auto five = [&](double center) {
    std::vector<double> v{f[next], f[next + 1], center, f[next + 2], f[next + 3]};
    next += 4;
    return v;
  };
  for (int k = 1; k <= n_points; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    ThermoPoint p;
    p.beta = k * req.beta_step;
    p.log_z = f[uk];
    if (req.specific_heat) p.specific_heat = specific_heat_from(f[uk - 1], f[uk], f[uk + 1], p.beta, req.beta_step, h.n_sites);
    if (req.susceptibility) {
      const auto v = five(f[uk]);
      const double num = -v[0] + 16 * v[1] - 30 * v[2] + 16 * v[3] - v[4];
      p.susceptibility = {detail::second_difference5(v, req.h_step) / h.n_sites / p.beta, detail::cancelled(num, v[2])};
    }
    if (req.dimer) {
      const auto v = five(f[uk]);
      const double num = -v[0] + 16 * v[1] - 30 * v[2] + 16 * v[3] - v[4];
      p.dimer = {detail::second_difference5(v, req.lambda_step) / h.n_sites / (p.beta * p.beta),
                 detail::cancelled(num, v[2])};
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace lcqc
