#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ns1d {

/// Argument outside the domain of a closure (e.g. negative density).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Invalid configuration. Carries the 1-based config line when known (0 otherwise).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Field length does not match the grid it is paired with.
class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite value produced by the time integrator.
class IntegrationError : public std::runtime_error {
public:
  IntegrationError(const std::string& what, std::ptrdiff_t index, int stage)
      : std::runtime_error(what + " (index " + std::to_string(index) + ", stage " +
                           std::to_string(stage) + ")"),
        index_(index), stage_(stage) {}
  std::ptrdiff_t index() const noexcept { return index_; }
  int stage() const noexcept { return stage_; }

private:
  std::ptrdiff_t index_;
  int stage_;
};

/// A weighted integral that does not converge on the sampling shells.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& integral, const std::string& why)
      : std::runtime_error("quadrature failed for " + integral + ": " + why), integral_(integral) {}
  const std::string& integral() const noexcept { return integral_; }

private:
  std::string integral_;
};

/// Malformed input file (snapshot, table). `row` is 1-based, counting the header.
class ValidationError : public std::runtime_error {
public:
  ValidationError(const std::string& what, std::size_t row)
      : std::runtime_error("row " + std::to_string(row) + ": " + what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

private:
  std::size_t row_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ns1d
