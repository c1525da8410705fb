#pragma once

#include <stdexcept>
#include <string>

namespace qmclab {

/// Invalid arguments or an ill-formed sequence description.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A truncated object (Laurent series, digit expansion) was asked for more
/// precision than it carries.
class TruncationInsufficient : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A computation would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A fixed-point carrier cannot represent the request to the promised accuracy.
class PrecisionBudgetExceeded : public BudgetExceeded {
public:
    using BudgetExceeded::BudgetExceeded;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

} // namespace detail
} // namespace qmclab
