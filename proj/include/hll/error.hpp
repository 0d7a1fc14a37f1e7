#pragma once

#include <stdexcept>
#include <string>

namespace hll {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bad arguments or malformed input.
class InvalidInput : public Error {
  public:
    using Error::Error;
};

// Enumeration or rendering size limit exceeded.
class SizeGuard : public InvalidInput {
  public:
    using InvalidInput::InvalidInput;
};

// A structural invariant failed on a constructed object.
class InvariantViolation : public Error {
  public:
    using Error::Error;
};

// Exact search would exceed its evaluation budget.
class BudgetExceeded : public Error {
  public:
    using Error::Error;
};

} // namespace hll
