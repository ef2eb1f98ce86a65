#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bgwcoal {

/// Base class for failures of the numerical machinery (ODE, quadrature,
/// series truncation, fixed-point iteration). Distinct from std::domain_error,
/// which is reserved for invalid caller inputs.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// ODE step-size underflow or step-count blowup; t_reached tells how far the
/// integration got.
struct SolverError : NumericalError {
  SolverError(const std::string& what, double t_reached_)
      : NumericalError(what), t_reached(t_reached_) {}
  double t_reached = 0.0;
};

/// Adaptive quadrature failed to meet its tolerance; carries the achieved
/// estimate and the error bound at the point of giving up.
struct QuadratureError : NumericalError {
  QuadratureError(const std::string& what, double estimate_, double error_bound_)
      : NumericalError(what), estimate(estimate_), error_bound(error_bound_) {}
  double estimate = 0.0;
  double error_bound = 0.0;
};

/// A truncated-series result cannot be trusted at the requested coefficient
/// (index too close to the truncation order, or too much mass past it).
struct TruncationError : NumericalError {
  using NumericalError::NumericalError;
};

/// Horizon-doubling iteration did not settle; carries the last iterate so the
/// caller can inspect how far it got.
struct ConvergenceError : NumericalError {
  ConvergenceError(const std::string& what, std::vector<double> last_iterate_,
                   double t_reached_)
      : NumericalError(what),
        last_iterate(std::move(last_iterate_)),
        t_reached(t_reached_) {}
  std::vector<double> last_iterate;
  double t_reached = 0.0;
};

/// Simulated population exceeded the configured cap.
struct PopulationCapError : NumericalError {
  PopulationCapError(const std::string& what, std::size_t population_)
      : NumericalError(what), population(population_) {}
  std::size_t population = 0;
};

/// Operation requires a subcritical reproduction measure.
struct NotSubcriticalError : std::domain_error {
  using std::domain_error::domain_error;
};

/// The quasi-stationary conditioning is empty (no limiting mass on two or
/// more survivors, i.e. 1 - g'(0) below threshold).
struct DegenerateQsdError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace bgwcoal
