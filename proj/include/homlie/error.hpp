#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace homlie {

enum class ErrorCode {
  dimension_mismatch,
  not_an_ideal,
  precondition,
  hypothesis_rejected,
  decomposable,
  degenerate_metric,
  no_simple_quotient,
  factorization_limit,
  internal,
  parse,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::not_an_ideal: return "not_an_ideal";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::hypothesis_rejected: return "hypothesis_rejected";
    case ErrorCode::decomposable: return "decomposable";
    case ErrorCode::degenerate_metric: return "degenerate_metric";
    case ErrorCode::no_simple_quotient: return "no_simple_quotient";
    case ErrorCode::factorization_limit: return "factorization_limit";
    case ErrorCode::internal: return "internal";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the file parsers. `kind` is a stable machine-readable tag
/// ("zero_denominator", "bracket_order", ...) and `location` a JSON pointer.
class ParseError : public Error {
 public:
  ParseError(std::string kind, const std::string& message, std::string location = "")
      : Error(ErrorCode::parse, message), kind_(std::move(kind)), location_(std::move(location)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& location() const noexcept { return location_; }

 private:
  std::string kind_;
  std::string location_;
};

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": expected dimension " + std::to_string(a) + ", got " +
                    std::to_string(b));
  }
}

}  // namespace homlie
