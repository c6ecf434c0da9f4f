#pragma once

#include <stdexcept>
#include <string>

namespace kqm {

/// Raised when wire types do not line up: sequential composition with
/// mismatched boundaries, a cap over a compound type, a bad trace selection.
class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by evaluation when the model lacks an assignment or a matrix has
/// the wrong shape.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kqm
