#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace warpact {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by merge_nodes when the pair cannot be merged. Callers sampling
// candidate pairs treat this as "draw again", never as a fatal condition.
struct MergeRejected : Error {
  using Error::Error;
};

struct AdjacentPairError : MergeRejected {
  AdjacentPairError() : MergeRejected("cannot merge adjacent nodes (would create a self-edge)") {}
};

struct IdentityMergeError : MergeRejected {
  IdentityMergeError() : MergeRejected("cannot merge a node with itself") {}
};

struct InvalidSpecError : Error {
  using Error::Error;
};

struct NonTerminationError : Error {
  using Error::Error;
};

struct UndefinedCorrelationError : Error {
  using Error::Error;
};

struct DegenerateGraphError : Error {
  using Error::Error;
};

struct InsufficientDataError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct EmptyGraphError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace warpact
