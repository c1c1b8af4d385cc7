#pragma once

#include <stdexcept>
#include <string>

namespace wteleport {

/// Bad arguments: out-of-range parameters, mismatched registers, unnormalized states.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Measurement basis vectors are not orthonormal or do not span the target space.
class InvalidBasis : public std::invalid_argument {
 public:
  explicit InvalidBasis(const std::string& what) : std::invalid_argument(what) {}
};

/// Roundoff exceeded the documented tolerances, or an iteration failed to converge.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wteleport
