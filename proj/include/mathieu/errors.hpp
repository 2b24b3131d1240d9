#pragma once

#include <stdexcept>
#include <string>

namespace mathieu {

/// Input outside the mathematical domain of a routine.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative or truncated numerical procedure did not meet its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed series does not have the shape a formula requires.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A series was asked for a coefficient beyond its truncation order.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A long-running computation was stopped by its progress callback.
class Cancelled : public std::runtime_error {
 public:
  Cancelled() : std::runtime_error("computation cancelled") {}
};

}  // namespace mathieu
