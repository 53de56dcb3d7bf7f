#pragma once

#include <stdexcept>
#include <string>

namespace cfl {

// Base class for all library errors. Subclasses carry the failure site in
// their name; the message carries the specifics.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  size_t offset;
  ParseError(const std::string& msg, size_t off)
      : Error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

struct CaptureViolation : Error {
  explicit CaptureViolation(const std::string& msg) : Error(msg) {}
};

struct UnboundVariable : Error {
  explicit UnboundVariable(const std::string& msg) : Error(msg) {}
};

struct InfeasibleBound : Error {
  explicit InfeasibleBound(const std::string& msg) : Error(msg) {}
};

struct LinearDependence : Error {
  size_t index;  // 1-based position of the offending vector
  LinearDependence(const std::string& msg, size_t idx) : Error(msg), index(idx) {}
};

struct ContractionViolated : Error {
  explicit ContractionViolated(const std::string& msg) : Error(msg) {}
};

struct PresentationNotAtomless : Error {
  explicit PresentationNotAtomless(const std::string& msg) : Error(msg) {}
};

struct OracleError : Error {
  explicit OracleError(const std::string& msg) : Error(msg) {}
};

struct BudgetExhausted : Error {
  explicit BudgetExhausted(const std::string& msg) : Error(msg) {}
};

}  // namespace cfl
