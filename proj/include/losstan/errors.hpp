#pragma once

#include <stdexcept>
#include <string>

namespace losstan {

// Error taxonomy shared by the library and the CLI. The CLI maps each
// category onto a process exit code (see tools/losstan.cpp):
//   InvalidInputError        -> 2
//   NonDecayingTraceError    -> 3
//   BudgetInconsistencyError -> 4
//   ModelEvaluationError     -> 5
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed files, out-of-domain arguments, missing metadata or seeds.
struct InvalidInputError : Error {
    using Error::Error;
};

// Regression window has a non-negative slope: nothing is decaying there.
struct NonDecayingTraceError : Error {
    using Error::Error;
};

// Parasitic channels account for more loss than the measured loaded Q.
struct BudgetInconsistencyError : Error {
    using Error::Error;
};

// A model evaluation could not be completed.
struct ModelEvaluationError : Error {
    using Error::Error;
};

// 1-D search failed to bracket a minimum inside its domain.
struct OptimizationError : ModelEvaluationError {
    using ModelEvaluationError::ModelEvaluationError;
};

// Energy-balance integrator detected a step-size or state sanity violation.
struct IntegrationError : Error {
    using Error::Error;
};

} // namespace losstan
