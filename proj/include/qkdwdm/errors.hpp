#pragma once

#include <stdexcept>
#include <string>

namespace qkdwdm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid grid/parameter/scenario configuration.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed input file (Raman CSV, scenario document).
struct IngestError : Error {
    using Error::Error;
};

// Exhaustive search would exceed the candidate budget.
struct BudgetError : Error {
    BudgetError(const std::string& what, double candidates, double budget)
        : Error(what), candidates(candidates), budget(budget) {}
    double candidates;
    double budget;
};

// Requested constraint cannot be met even at zero crosstalk.
struct InfeasibleError : Error {
    using Error::Error;
};

// A modelling assumption (e.g. small-error endpoints) does not hold.
struct AssumptionError : Error {
    using Error::Error;
};

}  // namespace qkdwdm
