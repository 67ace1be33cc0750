#ifndef EPIBEHAVE_ERRORS_HPP
#define EPIBEHAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace epibehave {

// Base class for every numerical failure the library can signal.
// Validation problems are reported through ValidationReport instead.
struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteState : SimulationError {
  using SimulationError::SimulationError;
};

struct ConservationViolation : SimulationError {
  using SimulationError::SimulationError;
};

struct MultiplePeaks : SimulationError {
  using SimulationError::SimulationError;
};

struct NoTakeoff : SimulationError {
  using SimulationError::SimulationError;
};

struct NoThreshold : SimulationError {
  using SimulationError::SimulationError;
};

struct BracketFailure : SimulationError {
  using SimulationError::SimulationError;
};

struct DomainError : SimulationError {
  using SimulationError::SimulationError;
};

struct DivisionByZero : SimulationError {
  using SimulationError::SimulationError;
};

struct NoPeak : SimulationError {
  using SimulationError::SimulationError;
};

struct NoConvergence : SimulationError {
  using SimulationError::SimulationError;
};

struct ExposureOutOfRange : SimulationError {
  using SimulationError::SimulationError;
};

struct IdentityViolation : SimulationError {
  using SimulationError::SimulationError;
};

struct SandwichViolation : SimulationError {
  using SimulationError::SimulationError;
};

struct AssumptionViolated : SimulationError {
  using SimulationError::SimulationError;
};

struct EmptySeries : SimulationError {
  using SimulationError::SimulationError;
};

}  // namespace epibehave

#endif
