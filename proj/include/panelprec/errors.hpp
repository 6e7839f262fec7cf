#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace panelprec {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid configuration (unknown distribution kind, inconsistent bounds).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data failed validation. Carries the 1-based source row when known.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, std::optional<std::size_t> row = std::nullopt)
      : std::runtime_error(row ? "row " + std::to_string(*row) + ": " + what : what), row_(row) {}

  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  std::optional<std::size_t> row_;
};

/// An iterative numerical method hit its iteration bound.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace panelprec
