#pragma once

#include <stdexcept>
#include <string>

namespace zf {

/// Malformed graph, decomposition, sequence or trace text.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A size guard or memory/time budget was hit. Never reported as a NO answer.
class ResourceExhausted : public std::runtime_error {
 public:
  explicit ResourceExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Input violates an operation's precondition (isolated vertices, bad rule, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace zf
