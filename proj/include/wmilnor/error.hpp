#pragma once

#include <stdexcept>
#include <string>

namespace wmilnor {

/// Malformed text input. The message names the offending token.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands live in different ambient groups or rings.
class RankMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal certificate failed. Signals an implementation fault, never
/// bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wmilnor
