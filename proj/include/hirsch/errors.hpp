#pragma once

#include <stdexcept>
#include <string>

namespace hirsch {

/// Failure categories surfaced by the library. Each maps onto one
/// documented error condition of the public operations.
enum class ErrorKind {
  SyntaxError,            // malformed expression text
  NegativeConstant,       // literal constant outside R+
  ParseError,             // malformed dataset / JSON input
  DomainGap,              // x lies in no domain interval
  NonFinite,              // evaluation diverged (inf/nan, negative pow base, ...)
  NegativeValue,          // value violates the R+ -> R+ range contract
  NotDifferentiable,      // finite-difference estimates disagree
  ZeroArgument,           // psi at x = 0
  MultipleIntersections,  // f(x) = theta*x has >= 2 admissible solutions
  NoSolution,             // no root and zero conventions do not apply
  BracketingExhausted,    // ceiling doublings ran out, asymptotics inconclusive
  NotInvertible,          // no injective part (Null / Rejected shape)
  NotHirschCandidate,     // reconstruction attempted on a Rejected shape
  InversionRangeGap,      // x outside the range of phi over its injective part
  EmptyDataset,
  DegenerateDomain,       // zero-width domain, h computation impossible
  InvalidArgument,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NegativeConstant: return "NegativeConstant";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DomainGap: return "DomainGap";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NegativeValue: return "NegativeValue";
    case ErrorKind::NotDifferentiable: return "NotDifferentiable";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::MultipleIntersections: return "MultipleIntersections";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::BracketingExhausted: return "BracketingExhausted";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotHirschCandidate: return "NotHirschCandidate";
    case ErrorKind::InversionRangeGap: return "InversionRangeGap";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::DegenerateDomain: return "DegenerateDomain";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hirsch
