// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Fits a decaying oscillation f(t) ~ A t^{-a} cos(omega t + theta0), A > 0.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lcqc/errors.hpp"

namespace lcqc {

struct EnvelopeFit {
  double exponent = 0.0;
  double omega = 0.0;
  double theta0 = 0.0;  // in [0, 2 pi)
  std::size_t n_extrema = 0;
  std::size_t n_crossings = 0;
};

struct Extremum {
  double t = 0.0;
  double value = 0.0;
};

namespace detail {

/// Least-squares slope and intercept of y against x.
inline std::pair<double, double> line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

}  // namespace detail

/// Interior local extrema of a sampled curve inside [t_lo, t_hi], refined by
/// a parabola through the three nearest samples.
inline std::vector<Extremum> find_extrema(const std::vector<double>& t, const std::vector<double>& f, double t_lo,
                                          double t_hi) {
  std::vector<Extremum> out;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    const double a = f[i - 1], b = f[i], c = f[i + 1];
    if (!((b > a && b >= c) || (b < a && b <= c))) continue;
    const double curv = a - 2 * b + c;
    const double h = t[i + 1] - t[i];
    double shift = curv != 0.0 ? 0.5 * (a - c) / curv : 0.0;
    shift = std::clamp(shift, -1.0, 1.0);
    out.push_back({t[i] + shift * h, b - 0.25 * (a - c) * shift});
  }
  return out;
}

/// Sign changes inside [t_lo, t_hi], located by linear interpolation.
inline std::vector<double> find_zero_crossings(const std::vector<double>& t, const std::vector<double>& f,
                                               double t_lo, double t_hi) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i] < t_lo || t[i + 1] > t_hi) continue;
    if ((f[i] < 0.0) == (f[i + 1] < 0.0)) continue;
    out.push_back(t[i] + (t[i + 1] - t[i]) * f[i] / (f[i] - f[i + 1]));
  }
  return out;
}

/// Exponent from a log-log fit of extremum magnitudes, omega from the
/// zero-crossing spacing, theta0 from the phase of each extremum (cos = +-1)
/// averaged on the circle.
inline EnvelopeFit fit_envelope(const std::vector<double>& t, const std::vector<double>& f, double t_lo, double t_hi) {
  if (t.size() != f.size()) throw std::invalid_argument("fit_envelope: length mismatch");
  if (!(t_lo > 0.0 && t_lo < t_hi)) throw std::invalid_argument("fit_envelope: need 0 < t_lo < t_hi");
  const auto ext = find_extrema(t, f, t_lo, t_hi);
  if (ext.size() < 4) throw AnalysisError("fit_envelope: fewer than 4 extrema in the window");
  const auto zeros = find_zero_crossings(t, f, t_lo, t_hi);
  if (zeros.size() < 2) throw AnalysisError("fit_envelope: fewer than 2 zero crossings in the window");

  EnvelopeFit fit;
  fit.n_extrema = ext.size();
  fit.n_crossings = zeros.size();
  std::vector<double> lx, ly;
  for (const auto& e : ext) {
    if (e.value == 0.0) continue;
    lx.push_back(std::log(e.t));
    ly.push_back(std::log(std::abs(e.value)));
  }
  fit.exponent = -detail::line_fit(lx, ly).first;

  std::vector<double> idx;
  for (std::size_t k = 0; k < zeros.size(); ++k) idx.push_back(static_cast<double>(k));
  fit.omega = std::numbers::pi / detail::line_fit(idx, zeros).first;

  std::complex<double> acc = 0.0;
  for (const auto& e : ext) {
    const double target = e.value > 0.0 ? 0.0 : std::numbers::pi;
    acc += std::polar(1.0, target - fit.omega * e.t);
  }
  fit.theta0 = std::arg(acc);
  if (fit.theta0 < 0.0) fit.theta0 += 2 * std::numbers::pi;
  return fit;
}

}  // namespace lcqc
