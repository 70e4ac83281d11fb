// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Light-cone sampling of a local observable at the centre of a 2l+1 site
// subchain. Sites carry labels -l..l; local index j = label + l.
//
// The half chains are pre-evolved (exp(+i H_L' t/2) exp(-i H_L t/2) on the
// left, mirrored on the right), their outer quarters are measured in the
// computational basis, and each sampled middle state xi_L (x) centre (x) xi_R
// on sites -l/2..l/2 is evolved under H_M. The |A|^2-weighted average of the
// per-sample expectation equals that of the pre-evolved product state.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcqc/errors.hpp"
#include "lcqc/hilbert.hpp"
#include "lcqc/models.hpp"
#include "lcqc/parallel.hpp"
#include "lcqc/propagation.hpp"

namespace lcqc {

/// Site-local observable; `site` is a label relative to the subchain centre.
struct Observable {
  enum class Kind { identity, sz };
  Kind kind = Kind::sz;
  int site = 0;

  static Observable identity() { return {Kind::identity, 0}; }
  static Observable sz(int site) { return {Kind::sz, site}; }

  double operator_norm() const { return kind == Kind::identity ? 1.0 : 0.5; }

  /// Diagonal value on a basis state whose bit `bit` holds the observed site.
  double value(Bits bits, int bit) const {
    if (kind == Kind::identity) return 1.0;
    return ((bits >> bit) & 1U) ? 0.5 : -0.5;
  }
};

/// Expectation of a diagonal observable, normalized by the state norm.
inline double expectation(const StateVector& psi, const Observable& o, int bit) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double w = std::norm(psi.amps[static_cast<Eigen::Index>(k)]);
    den += w;
    num += w * o.value(psi.basis->state(k), bit);
  }
  return num / den;
}

struct HamiltonianSplit {
  int l = 0;
  /// All parts live on the full 2l+1 sites, in local indices.
  LocalHamiltonian full, left, right, boundary, middle, left_inner, right_inner;
  SiteRange left_window, right_window, middle_window, left_inner_window, right_inner_window;
};

namespace detail {

inline LocalHamiltonian select_terms(const LocalHamiltonian& h, const SiteRange& w) {
  LocalHamiltonian out{h.n_sites, {}, {}};
  for (const auto& t : h.terms)
    if (w.contains(t.site_a) && w.contains(t.site_b)) out.terms.push_back(t);
  if (!h.site_fields.empty()) {
    out.site_fields.assign(h.site_fields.size(), 0.0);
    for (int i = w.begin; i < w.end; ++i) out.site_fields[static_cast<std::size_t>(i)] = h.site_fields[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace detail

/// Splits a subchain Hamiltonian into the left and right halves, the
/// boundary part touching the centre, the middle half and its two wings.
inline HamiltonianSplit split_hamiltonians(const LocalHamiltonian& h_sub) {
  validate(h_sub);
  const int n = h_sub.n_sites;
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("split_hamiltonians: subchain must have 2l+1 sites");
  const int l = (n - 1) / 2;
  if (l % 2 != 0) throw std::invalid_argument("split_hamiltonians: l must be even");
  HamiltonianSplit s;
  s.l = l;
  s.full = h_sub;
  s.left_window = {0, l};
  s.right_window = {l + 1, n};
  s.middle_window = {l / 2, l + l / 2 + 1};
  s.left_inner_window = {l / 2, l};
  s.right_inner_window = {l + 1, l + l / 2 + 1};
  s.left = detail::select_terms(h_sub, s.left_window);
  s.right = detail::select_terms(h_sub, s.right_window);
  s.middle = detail::select_terms(h_sub, s.middle_window);
  s.left_inner = detail::select_terms(h_sub, s.left_inner_window);
  s.right_inner = detail::select_terms(h_sub, s.right_inner_window);
  s.boundary = LocalHamiltonian{n, {}, {}};
  for (const auto& t : h_sub.terms) {
    const bool in_l = s.left_window.contains(t.site_a) && s.left_window.contains(t.site_b);
    const bool in_r = s.right_window.contains(t.site_a) && s.right_window.contains(t.site_b);
    if (!in_l && !in_r) s.boundary.terms.push_back(t);
  }
  if (!h_sub.site_fields.empty()) {
    s.boundary.site_fields.assign(static_cast<std::size_t>(n), 0.0);
    s.boundary.site_fields[static_cast<std::size_t>(l)] = h_sub.site_fields[static_cast<std::size_t>(l)];
  }
  return s;
}

/// Pre-evolved half-chain states exp(+i H_L' t/2) exp(-i H_L t/2) psi_l and
/// the mirror image on the right. Inputs live on l sites each.
inline std::pair<StateVector, StateVector> prepare_half_states(const HamiltonianSplit& s, const StateVector& psi_l,
                                                               const StateVector& psi_r, double t_f,
                                                               const PropagatorConfig& cfg = {},
                                                               PropagationStats* stats = nullptr) {
  const int l = s.l;
  if (psi_l.n_sites() != l || psi_r.n_sites() != l)
    throw std::invalid_argument("prepare_half_states: half states must have l sites");
  const LocalHamiltonian hl = restrict(s.full, s.left_window);
  const LocalHamiltonian hl_inner = detail::select_terms(hl, SiteRange{l / 2, l});
  const LocalHamiltonian hr = restrict(s.full, s.right_window);
  const LocalHamiltonian hr_inner = detail::select_terms(hr, SiteRange{0, l / 2});
  auto half = [&](const LocalHamiltonian& h, const LocalHamiltonian& h_inner, const StateVector& psi) {
    if (t_f == 0.0) return psi;
    const StateVector a = evolve(assemble_sparse(h, *psi.basis), psi, 0.5 * t_f, cfg, stats);
    return evolve(assemble_sparse(h_inner, *psi.basis), a, -0.5 * t_f, cfg, stats);
  };
  return {half(hl, hl_inner, psi_l), half(hr, hr_inner, psi_r)};
}

using ModelFactory = std::function<LocalHamiltonian(int n_sites)>;

struct LightconeConfig {
  int l = 12;
  double delta = 0.0;
  /// Builds the subchain Hamiltonian; the XXZ chain with `delta` when empty.
  ModelFactory model;
  /// Final time; non-positive selects l / velocity on the 2 dt grid.
  double t_f = 0.0;
  /// Earliest swept time; t_f / 2 when unset.
  std::optional<double> t_stop;
  double dt = 0.25;
  int n_it = 1000;
  std::uint64_t seed = 1;
  Observable observable = Observable::sz(0);
  bool center_up = false;
  /// Light-cone velocity used for the default t_f; non-positive selects the
  /// spin-wave velocity.
  double velocity = 0.0;
  PropagatorConfig propagator;
  unsigned workers = 1;
  /// Keep per-sample records in the result.
  bool keep_records = false;

  LocalHamiltonian subchain_hamiltonian() const {
    return model ? model(2 * l + 1) : build_xxz(2 * l + 1, delta);
  }

  double effective_velocity() const { return velocity > 0.0 ? velocity : spin_wave_velocity(delta); }

  double final_time() const {
    if (t_f > 0.0) return t_f;
    const double grid = 2.0 * dt;
    return std::max(grid, std::floor(l / effective_velocity() / grid + 1e-9) * grid);
  }

  double stop_time() const { return t_stop ? *t_stop : 0.5 * final_time(); }

  /// Number of backward sweep steps after the forward evolution.
  int sweep_steps() const { return static_cast<int>(std::lround((final_time() - stop_time()) / dt)); }

  /// Swept times t_f, t_f - dt, ..., t_stop.
  std::vector<double> times() const {
    std::vector<double> out;
    const double tf = final_time();
    for (int k = 0; k <= sweep_steps(); ++k) out.push_back(tf - k * dt);
    return out;
  }

  void validate() const {
    if (l < 2 || l % 2 != 0) throw std::invalid_argument("LightconeConfig: l must be even and >= 2");
    if (2 * l + 1 > kMaxSites) throw std::invalid_argument("LightconeConfig: subchain too long");
    if (!(dt > 0.0)) throw std::invalid_argument("LightconeConfig: dt must be positive");
    if (n_it < 1) throw std::invalid_argument("LightconeConfig: n_it must be >= 1");
    const double tf = final_time();
    const double ts = stop_time();
    if (!(ts > 0.0 && ts <= tf)) throw std::invalid_argument("LightconeConfig: need 0 < t_stop <= t_f");
    const double steps = (tf - ts) / dt;
    if (std::abs(steps - std::round(steps)) > 1e-9)
      throw std::invalid_argument("LightconeConfig: dt must divide t_f - t_stop");
    if (observable.kind == Observable::Kind::sz && std::abs(observable.site) > l / 2)
      throw std::invalid_argument("LightconeConfig: observable must lie in the middle window");
    propagator.validate();
  }
};

struct SampleRecord {
  BasisState alpha_l;
  BasisState alpha_r;
  /// Values at t_f - k dt, k = 0..sweep_steps.
  std::vector<double> values;
  std::uint64_t rng_stream_id = 0;
  std::uint64_t iteration = 0;
};

struct Estimate {
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> rms;
  std::vector<double> std_error;
  std::size_t n_it = 0;
};

/// Streaming per-time mean and variance, merged in iteration order.
class EstimateAccumulator {
 public:
  explicit EstimateAccumulator(std::vector<double> times)
      : times_(std::move(times)), mean_(times_.size(), 0.0), m2_(times_.size(), 0.0) {}

  void add(const std::vector<double>& values) {
    if (values.size() != times_.size()) throw InvariantViolation("EstimateAccumulator: value count mismatch");
    ++count_;
    const double n = static_cast<double>(count_);
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double d = values[k] - mean_[k];
      mean_[k] += d / n;
      m2_[k] += d * (values[k] - mean_[k]);
    }
  }

  Estimate result() const {
    Estimate e{times_, mean_, std::vector<double>(times_.size()), std::vector<double>(times_.size()), count_};
    for (std::size_t k = 0; k < times_.size(); ++k) {
      e.rms[k] = count_ > 0 ? std::sqrt(std::max(0.0, m2_[k]) / static_cast<double>(count_)) : 0.0;
      e.std_error[k] = count_ > 0 ? e.rms[k] / std::sqrt(static_cast<double>(count_)) : 0.0;
    }
    return e;
  }

 private:
  std::vector<double> times_;
  std::vector<double> mean_, m2_;
  std::size_t count_ = 0;
};

/// Reorders an estimate by increasing time.
inline Estimate ascending(Estimate e) {
  std::vector<std::size_t> idx(e.times.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return e.times[a] < e.times[b]; });
  Estimate out;
  out.n_it = e.n_it;
  for (std::size_t i : idx) {
    out.times.push_back(e.times[i]);
    out.mean.push_back(e.mean[i]);
    out.rms.push_back(e.rms[i]);
    out.std_error.push_back(e.std_error[i]);
  }
  return out;
}

struct SamplingResult {
  Estimate estimate;
  std::vector<SampleRecord> records;
  PropagationStats stats;
  double prepare_seconds = 0.0;
  double sample_seconds = 0.0;
};

/// Immutable sampling set-up: half-chain branch tables and middle-window
/// sector matrices. sample() is safe to call concurrently.
class LightconeSampler {
 public:
  explicit LightconeSampler(LightconeConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const int l = cfg_.l;
    const int n = 2 * l + 1;
    split_ = split_hamiltonians(cfg_.subchain_hamiltonian());
    if (split_.full.n_sites != n) throw std::invalid_argument("LightconeSampler: model returned wrong size");

    const Bits initial = neel_bits(n, cfg_.center_up);
    const Bits left_bits = extract_bits(initial, 0, l);
    const Bits right_bits = extract_bits(initial, l + 1, l);
    center_up_bit_ = extract_bits(initial, l, 1);
    const StateVector psi_l = basis_vector(make_sector(l, std::popcount(left_bits)), left_bits);
    const StateVector psi_r = basis_vector(make_sector(l, std::popcount(right_bits)), right_bits);

    PropagationStats stats;
    auto [pl, pr] = prepare_half_states(split_, psi_l, psi_r, cfg_.final_time(), cfg_.propagator, &stats);
    prepare_stats_ = stats;
    left_ = conditional_decompose(pl, SiteRange{0, l / 2});
    right_ = conditional_decompose(pr, SiteRange{l / 2, l});
    left_cdf_ = cumulative(left_);
    right_cdf_ = cumulative(right_);

    const LocalHamiltonian hm = restrict(split_.full, split_.middle_window);
    for (const auto& bl : left_)
      for (const auto& br : right_) {
        if (!bl.inner.basis->is_sector() || !br.inner.basis->is_sector())
          throw InvariantViolation("LightconeSampler: conditional states left their magnetization sector");
        const int n_up = *bl.inner.basis->n_up() + *br.inner.basis->n_up() + static_cast<int>(center_up_bit_);
        if (sectors_.count(n_up)) continue;
        auto basis = make_sector(l + 1, n_up);
        if (basis->size() > kMaxStateDimension) throw ResourceError("LightconeSampler: middle sector too large");
        sectors_.emplace(n_up, Sector{basis, assemble_sparse(hm, *basis)});
      }
    prepare_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  const LightconeConfig& config() const { return cfg_; }
  const HamiltonianSplit& split() const { return split_; }
  const std::vector<Branch>& left_branches() const { return left_; }
  const std::vector<Branch>& right_branches() const { return right_; }
  std::vector<double> times() const { return cfg_.times(); }
  double prepare_seconds() const { return prepare_seconds_; }
  const PropagationStats& prepare_stats() const { return prepare_stats_; }
  std::size_t sector_count() const { return sectors_.size(); }

  /// Per-time expectation for one pair of outer configurations.
  std::vector<double> evaluate(std::size_t left_index, std::size_t right_index,
                               PropagationStats* stats = nullptr) const {
    const Branch& bl = left_[left_index];
    const Branch& br = right_[right_index];
    const int h = cfg_.l / 2;
    const int n_up = *bl.inner.basis->n_up() + *br.inner.basis->n_up() + static_cast<int>(center_up_bit_);
    const Sector& sec = sectors_.at(n_up);
    StateVector chi(sec.basis);
    for (std::size_t i = 0; i < bl.inner.size(); ++i) {
      const Complex a = bl.inner.amps[static_cast<Eigen::Index>(i)];
      if (a == Complex{}) continue;
      const Bits lo = bl.inner.basis->state(i) | (center_up_bit_ << h);
      for (std::size_t j = 0; j < br.inner.size(); ++j) {
        const Complex b = br.inner.amps[static_cast<Eigen::Index>(j)];
        if (b == Complex{}) continue;
        const std::size_t idx = sec.basis->index(lo | (br.inner.basis->state(j) << (h + 1)));
        if (idx == SectorBasis::npos) throw InvariantViolation("LightconeSampler: sample outside its sector");
        chi.amps[static_cast<Eigen::Index>(idx)] = a * b;
      }
    }
    const int bit = cfg_.observable.site + h;
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(cfg_.sweep_steps()) + 1);
    Eigen::VectorXcd v = evolve(sec.h, chi.amps, cfg_.final_time(), cfg_.propagator, stats);
    values.push_back(expectation(StateVector(sec.basis, v), cfg_.observable, bit));
    for (int k = 0; k < cfg_.sweep_steps(); ++k) {
      v = evolve(sec.h, v, -cfg_.dt, cfg_.propagator, stats);
      values.push_back(expectation(StateVector(sec.basis, v), cfg_.observable, bit));
    }
    return values;
  }

  /// Draws (alpha_L, alpha_R) from independent counter streams of
  /// (seed, iteration) and evaluates the pair.
  SampleRecord sample(std::uint64_t iteration, PropagationStats* stats = nullptr) const {
    const CounterStream left_stream(cfg_.seed, iteration, 0);
    const CounterStream right_stream(cfg_.seed, iteration, 1);
    const std::size_t il = draw(left_cdf_, left_stream.uniform(0));
    const std::size_t ir = draw(right_cdf_, right_stream.uniform(0));
    SampleRecord r;
    r.alpha_l = left_[il].outer;
    r.alpha_r = right_[ir].outer;
    r.values = evaluate(il, ir, stats);
    r.rng_stream_id = left_stream.id();
    r.iteration = iteration;
    return r;
  }

  /// The |A|^2-weighted sum over every pair of branches.
  std::vector<double> exhaustive_average() const {
    std::vector<double> acc(static_cast<std::size_t>(cfg_.sweep_steps()) + 1, 0.0);
    for (std::size_t i = 0; i < left_.size(); ++i)
      for (std::size_t j = 0; j < right_.size(); ++j) {
        const double w = std::pow(left_[i].amplitude * right_[j].amplitude, 2);
        const auto v = evaluate(i, j);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += w * v[k];
      }
    return acc;
  }

  SamplingResult run() const {
    const auto t0 = std::chrono::steady_clock::now();
    const auto n = static_cast<std::size_t>(cfg_.n_it);
    std::vector<SampleRecord> records(n);
    std::vector<PropagationStats> stats(n);
    parallel_for(n, cfg_.workers, [&](std::size_t i) { records[i] = sample(i, &stats[i]); });
    EstimateAccumulator acc(times());
    SamplingResult out;
    out.stats = prepare_stats_;
    for (std::size_t i = 0; i < n; ++i) {
      acc.add(records[i].values);
      out.stats.merge(stats[i]);
    }
    out.estimate = acc.result();
    if (cfg_.keep_records) out.records = std::move(records);
    out.prepare_seconds = prepare_seconds_;
    out.sample_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }

 private:
  struct Sector {
    BasisPtr basis;
    SparseMatrix h;
  };

  static std::vector<double> cumulative(const std::vector<Branch>& branches) {
    std::vector<double> cdf;
    double acc = 0.0;
    for (const auto& b : branches) cdf.push_back(acc += b.amplitude * b.amplitude);
    return cdf;
  }

  static std::size_t draw(const std::vector<double>& cdf, double u) {
    const double target = u * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
  }

  LightconeConfig cfg_;
  HamiltonianSplit split_;
  Bits center_up_bit_ = 0;
  std::vector<Branch> left_, right_;
  std::vector<double> left_cdf_, right_cdf_;
  std::map<int, Sector> sectors_;
  PropagationStats prepare_stats_;
  double prepare_seconds_ = 0.0;
};

inline SamplingResult run_sampling_full(const LightconeConfig& cfg) { return LightconeSampler(cfg).run(); }

/// Mean, rms and standard error at each swept time, in sweep order
/// (t_f first).
inline Estimate run_sampling(const LightconeConfig& cfg) { return run_sampling_full(cfg).estimate; }

/// Sample fluctuation of the per-sample expectation at each swept time.
inline std::vector<std::pair<double, double>> rms_vs_time(const LightconeConfig& cfg) {
  const Estimate e = run_sampling(cfg);
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k < e.times.size(); ++k) out.emplace_back(e.times[k], e.rms[k]);
  return out;
}

/// Concatenates runs with t_f = step, 2 step, ..., t_max, each swept back over
/// (t_f - step, t_f], into one curve ordered by time. Run k uses a seed
/// derived from (seed, k).
inline Estimate run_stitched(const LightconeConfig& base, double t_max, double step = 1.0,
                             SamplingResult* totals = nullptr) {
  if (!(step > 0.0) || !(t_max >= step)) throw std::invalid_argument("run_stitched: need 0 < step <= t_max");
  Estimate out;
  const int runs = static_cast<int>(std::floor(t_max / step + 1e-9));
  for (int k = 1; k <= runs; ++k) {
    LightconeConfig cfg = base;
    cfg.t_f = k * step;
    cfg.t_stop = k * step - step + base.dt;
    cfg.seed = mix64(base.seed ^ mix64(static_cast<std::uint64_t>(k)));
    const SamplingResult r = run_sampling_full(cfg);
    if (totals) {
      totals->stats.merge(r.stats);
      totals->prepare_seconds += r.prepare_seconds;
      totals->sample_seconds += r.sample_seconds;
    }
    const Estimate e = ascending(r.estimate);
    out.n_it = e.n_it;
    out.times.insert(out.times.end(), e.times.begin(), e.times.end());
    out.mean.insert(out.mean.end(), e.mean.begin(), e.mean.end());
    out.rms.insert(out.rms.end(), e.rms.begin(), e.rms.end());
    out.std_error.insert(out.std_error.end(), e.std_error.begin(), e.std_error.end());
  }
  return out;
}

struct Curve {
  std::vector<double> times;
  std::vector<double> values;
};

inline constexpr int kMaxExactSubchainSites = 24;

/// Direct evolution of the whole 2l+1 site subchain on the grid 0, dt, ...,
/// t_f.
inline Curve exact_subchain_reference(const LightconeConfig& cfg) {
  const int n = 2 * cfg.l + 1;
  if (n > kMaxExactSubchainSites)
    throw ResourceError("exact_subchain_reference: subchain of " + std::to_string(n) + " sites exceeds the limit of " +
                        std::to_string(kMaxExactSubchainSites));
  if (cfg.observable.kind == Observable::Kind::sz && std::abs(cfg.observable.site) > cfg.l)
    throw std::invalid_argument("exact_subchain_reference: observable outside subchain");
  const LocalHamiltonian h = cfg.subchain_hamiltonian();
  const Bits initial = neel_bits(n, cfg.center_up);
  const BasisPtr basis = make_sector(n, std::popcount(initial));
  const SparseMatrix hs = assemble_sparse(h, *basis);
  StateVector psi = basis_vector(basis, initial);
  const int bit = cfg.observable.site + cfg.l;
  const double tf = cfg.final_time();
  const int steps = static_cast<int>(std::lround(tf / cfg.dt));
  Curve c;
  c.times.push_back(0.0);
  c.values.push_back(expectation(psi, cfg.observable, bit));
  for (int k = 1; k <= steps; ++k) {
    psi.amps = evolve(hs, psi.amps, cfg.dt, cfg.propagator);
    c.times.push_back(k * cfg.dt);
    c.values.push_back(expectation(psi, cfg.observable, bit));
  }
  return c;
}

}  // namespace lcqc
