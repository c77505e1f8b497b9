#pragma once

#include <stdexcept>
#include <string>

namespace omit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical parameter violates its domain (negative rate, zero mass, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input that is formally valid but makes the requested quantity singular,
/// e.g. an undamped oscillator driven exactly on resonance.
class DegenerateInputError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// A numerical procedure failed to reach its tolerance. Carries the residual
/// (or offending step) so callers can report it.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace omit
