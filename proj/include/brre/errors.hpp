#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace brre {

/// Precondition or dimension check failed.
class ContractViolation : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A dense iterative kernel did not converge.
class SolverFailure : public std::runtime_error {
public:
  SolverFailure(const std::string& what, std::size_t iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

private:
  std::size_t iterations_;
};

/// The orbit left the admissible region (non-finite or beyond the escape bound).
class OrbitEscape : public std::runtime_error {
public:
  OrbitEscape(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

/// Leading Chebyshev coefficient is numerically zero; the caller must trim the degree.
class DegreeDeflation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A filter product hit 1 - lambda = 0.
class DegenerateFrequency : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ValidationFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace brre
