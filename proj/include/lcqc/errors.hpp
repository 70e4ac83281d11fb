// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lcqc {

/// A state does not have the tensor structure an operation requires.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated series did not reach the requested tail tolerance.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, double achieved_tail)
      : std::runtime_error(what), achieved_tail_(achieved_tail) {}
  double achieved_tail() const noexcept { return achieved_tail_; }

 private:
  double achieved_tail_;
};

/// A problem size exceeds a configured guard.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A thermal sweep lost positivity; site() is the chain site being added.
class NumericalBreakdown : public std::runtime_error {
 public:
  NumericalBreakdown(const std::string& what, std::size_t site)
      : std::runtime_error(what), site_(site) {}
  std::size_t site() const noexcept { return site_; }

 private:
  std::size_t site_;
};

/// Input data cannot support the requested analysis.
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lcqc
