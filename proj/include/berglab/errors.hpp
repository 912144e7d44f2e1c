#pragma once

#include <stdexcept>
#include <string>

namespace berglab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative kernel failed to reach its tolerance within its cap.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Root or inverse target not enclosed by the supplied bracket.
class BracketError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Quadrature ran out of subdivisions; carries the best value reached
/// together with its error estimate.
class ToleranceNotMet : public std::runtime_error {
public:
  ToleranceNotMet(const std::string& what, double best, double estimate)
      : std::runtime_error(what), best_value(best), error_estimate(estimate) {}
  double best_value;
  double error_estimate;
};

/// Invalid parameter combination (constraint between arguments violated).
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A conjugated isometry was evaluated at (or stepped over) its pole.
class SingularityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Level too close to the maximum for a reliable derivative estimate.
class DegenerateLevel : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The rearrangements never cross (the extremizer itself was supplied).
class NoCrossing : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace berglab
