#ifndef LCFN_ERROR_HPP
#define LCFN_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lcfn {

enum class ErrorCode {
  // generator
  NotNormal,
  PlateauAtOne,
  Symmetric,
  UnsortedKnots,
  InvalidMembership,
  AlphaOutOfRange,
  // arithmetic
  GeneratorMismatch,
  NonFinite,
  // expressions
  SyntaxError,
  UnknownFunction,
  DivisionByZero,
  DomainError,
  NonDifferentiable,
  // calculus / harnesses
  OutsideDomain,
  QuadratureNonConvergent,
  WindowOutsideDomain,
  ZeroCenterAtT0,
  CatalogBoundaryViolation,
  // configuration
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code drives CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<std::size_t> offset = std::nullopt)
      : std::runtime_error(what), code_(code), offset_(offset) {}

  ErrorCode code() const noexcept { return code_; }
  /// Byte offset into the source text, for syntax errors.
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::PlateauAtOne: return "PlateauAtOne";
    case ErrorCode::Symmetric: return "Symmetric";
    case ErrorCode::UnsortedKnots: return "UnsortedKnots";
    case ErrorCode::InvalidMembership: return "InvalidMembership";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::GeneratorMismatch: return "GeneratorMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonDifferentiable: return "NonDifferentiable";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::QuadratureNonConvergent: return "QuadratureNonConvergent";
    case ErrorCode::WindowOutsideDomain: return "WindowOutsideDomain";
    case ErrorCode::ZeroCenterAtT0: return "ZeroCenterAtT0";
    case ErrorCode::CatalogBoundaryViolation: return "CatalogBoundaryViolation";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace lcfn

#endif  // LCFN_ERROR_HPP
