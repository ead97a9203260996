#pragma once

#include <stdexcept>
#include <string>

namespace reilly {

// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mesh that parses but violates a TriMesh invariant. `invariant()` names it
// ("closed", "oriented", "connected", "nondegenerate", "indices").
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string invariant, const std::string& what)
      : std::runtime_error(what), invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation called on an input that does not satisfy its stated precondition
// (e.g. a mesh that has not been normalized).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

// Nonzero first eigenvalue collapsed to zero: the surface is disconnected.
class DisconnectedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reilly
