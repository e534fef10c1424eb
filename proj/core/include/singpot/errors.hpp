#ifndef SINGPOT_ERRORS_HPP
#define SINGPOT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace singpot {

// Base class for all library failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument sits on (or within machine tolerance of) a Gamma pole.
class PoleError : public Error {
 public:
  explicit PoleError(const std::string& msg) : Error(msg) {}
};

// Input violates a documented precondition.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Series did not meet the tail criterion within the term budget.
class NonConvergenceError : public Error {
 public:
  explicit NonConvergenceError(const std::string& msg) : Error(msg) {}
};

// Evaluation point coincides with the source point (r = 0).  Raised as a
// distinct type so quadrature code can apply singular handling instead of
// failing outright.
class DiagonalError : public Error {
 public:
  explicit DiagonalError(const std::string& msg) : Error(msg) {}
};

// Some reflected distance is zero: coincident points lying on a singular
// hyperplane, or a reflected pole at the origin.
class DegenerateGeometryError : public Error {
 public:
  explicit DegenerateGeometryError(const std::string& msg) : Error(msg) {}
};

// On-surface operation requested too close to a patch edge.
class EdgeProximityError : public Error {
 public:
  explicit EdgeProximityError(const std::string& msg) : Error(msg) {}
};

// Dense collocation matrix is numerically singular.
class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(const std::string& msg) : Error(msg) {}
};

// Run-configuration parse or validation failure.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace singpot

#endif  // SINGPOT_ERRORS_HPP
