#pragma once

#include <stdexcept>
#include <string>

namespace matchbandit {

// Instance or matching has the wrong shape for the requested operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The request is well formed but the library declines to run it.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PolicyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal invariant failed; always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace matchbandit
