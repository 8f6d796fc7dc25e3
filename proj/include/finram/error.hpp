#pragma once

#include <stdexcept>

namespace finram {

// Thrown when an input violates a domain invariant or an operation's
// precondition (mode mismatch, broken block order, bad arity, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace finram
