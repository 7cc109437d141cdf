#pragma once

#include <stdexcept>
#include <string>

namespace xmod {

// Malformed or inconsistent input (bad tables, unresolved names, axioms violated).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A level or complex would exceed the configured size cap.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed; indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace xmod
