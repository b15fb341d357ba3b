#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hgr {

// Malformed input text (edge lists, metadata, serialized artifacts).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Invalid configuration or infeasible parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relation references a vertex type that was never declared.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition between two objects was violated (e.g. matching not of this graph).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hgr
