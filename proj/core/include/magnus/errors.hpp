#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace magnus {

// Malformed textual input (word grammar, JSON documents).
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}
  explicit ParseError(const std::string& what) : std::invalid_argument(what), position_(0) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Well-formed input that violates a structural requirement
// (generator out of range, bad multiplication table, cyclic AGP graph, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Flows from different graph contexts were combined.
class ContextMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The oracle does not provide the requested capability (e.g. power problem).
class MissingCapability : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A brute-force enumeration would exceed its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace magnus
