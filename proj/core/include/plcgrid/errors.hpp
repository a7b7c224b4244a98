// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plcgrid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed structured-text input. Carries the 1-based line number
/// (0 when the problem is not tied to a line, e.g. a missing key).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Structural problem with a grid: duplicate ids, dangling references,
/// unknown buses, invalid electrical parameters.
class GridError : public Error {
 public:
  using Error::Error;
};

/// Raised by metrics that are only defined on connected graphs.
class DisconnectedGraphError : public Error {
 public:
  explicit DisconnectedGraphError(std::size_t components);
  std::size_t components() const noexcept { return components_; }

 private:
  std::size_t components_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A model was evaluated outside its domain (zero impedance, zero voltage,
/// degenerate two-port, infeasible generator spec, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace plcgrid
