#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hjsc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric parameter lies outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the region an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Grid or domain could not be built (for example, no interior nodes).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil has no admissible neighbours.
class StencilError : public Error {
 public:
  using Error::Error;
};

/// Value iteration hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(double residual, std::size_t iterations)
      : Error("value iteration did not converge after " + std::to_string(iterations) +
              " iterations (residual " + std::to_string(residual) + ")"),
        residual_(residual),
        iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

/// The reference integration pushed u above f, i.e. the branch sign is wrong.
class BranchInvalidError : public Error {
 public:
  BranchInvalidError(const std::string& what, double x) : Error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// u' vanishes where a second derivative from the 1D equation was requested.
class SingularCurvatureError : public Error {
 public:
  using Error::Error;
};

/// A shooting trajectory left the bounding box.
class RunawayError : public Error {
 public:
  RunawayError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A competitor path leaves the closed domain.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace hjsc
