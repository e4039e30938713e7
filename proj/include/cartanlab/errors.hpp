#pragma once

#include <stdexcept>
#include <string>

namespace cartanlab {

/// Bad matrix/vector dimensions or an element that violates its tag invariant.
struct shape_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation
/// (e.g. an element that does not decompose in g + i*m, or a direction
/// outside the stabilizer span).
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A required precondition (certification, momentum-zero check, ...) not met.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Inconsistent configuration of a composite object.
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine failed to reach its tolerance.
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A rank/nullspace decision sits inside the numerical gray zone.
struct ambiguity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A linear solve was requested on a (near-)singular form.
struct degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cartanlab
