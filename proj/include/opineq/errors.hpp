#pragma once

#include <stdexcept>
#include <string>

namespace opineq {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotPositiveDefinite : std::domain_error {
    using std::domain_error::domain_error;
};

// A checker or generator was handed inputs outside its stated hypotheses.
struct HypothesisViolation : std::domain_error {
    using std::domain_error::domain_error;
};

// An iterative routine failed to converge within its fixed budget.
struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad CLI flags, config files, or unknown checker ids.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace opineq
