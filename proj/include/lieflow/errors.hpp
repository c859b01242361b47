#pragma once

#include <stdexcept>
#include <string>

namespace lieflow {

/// Base class for every failure this library reports by exception.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched or unsupported dimensions between operands.
struct DimensionError : Error {
  using Error::Error;
};

/// Invalid value passed to a constructor or function (bad mass, bad grid
/// size, unsupported metric order, non-orthogonal rotation, ...).
struct InvalidArgument : Error {
  using Error::Error;
};

/// Requested a canonical bilinear form where it is degenerate (n < 3).
struct DegenerateFormError : Error {
  using Error::Error;
};

/// Inertia operator cannot be inverted on the requested input.
struct SingularInertiaError : Error {
  using Error::Error;
};

/// A linear solve was rejected because the system is too ill-conditioned
/// to trust (near-duplicate sample points, rank deficiency).
struct ConditioningError : Error {
  using Error::Error;
};

/// Finite-dimensional integration produced non-finite state.
struct DivergenceError : Error {
  using Error::Error;
};

/// Spectral time stepping produced non-finite values.
struct BlowUpError : Error {
  BlowUpError(const std::string& what, long step) : Error(what), step(step) {}
  long step;
};

/// Evaluation was requested at or beyond the wave-breaking time.
struct ShockError : Error {
  ShockError(const std::string& what, double breaking_time)
      : Error(what), breaking_time(breaking_time) {}
  double breaking_time;
};

/// The evolving flow map stopped being an orientation-preserving
/// diffeomorphism (min phi_x dropped below threshold).
struct DiffeoLossError : Error {
  DiffeoLossError(const std::string& what, double time) : Error(what), time(time) {}
  double time;
};

/// A compound state violates its internal consistency relation.
struct ConsistencyError : Error {
  using Error::Error;
};

/// The requested point lies outside the domain of the map (e.g. the
/// geodesic leaves the group before reaching time one).
struct OutOfDomainError : Error {
  using Error::Error;
};

/// Scenario file or CLI configuration is invalid.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace lieflow
