// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace logsob {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A family parameter lies outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A named precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string condition, const std::string& what)
      : Error(what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// A pointwise evaluation produced a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::vector<double> point)
      : Error(what), point_(std::move(point)) {}
  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

/// A Monte Carlo estimate could not be formed.
class EstimationError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual configuration.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace logsob
