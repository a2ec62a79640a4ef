// Error types shared by all modules.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace aspa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourcePosition {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct ParseDiagnostic {
  SourcePosition pos;
  std::string message;
  std::string to_string() const {
    return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
  }
};

class ParseError : public Error {
 public:
  explicit ParseError(std::vector<ParseDiagnostic> d)
      : Error(d.empty() ? "parse error" : d.front().to_string()), diagnostics_(std::move(d)) {}
  const std::vector<ParseDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ParseDiagnostic> diagnostics_;
};

// A configured cap was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Ill-typed aggregate input, e.g. SUM over a symbolic constant.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its domain (non-ground input, aggregate heads where unsupported, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace aspa
