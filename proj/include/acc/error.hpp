#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acc {

enum class ErrorCode {
  // core
  MalformedInput,
  NonSurjectiveMap,
  PositivityViolation,
  SameComponent,
  BezoutViolation,
  ZeroPairwiseIntersection,
  IrrationalDegree,
  TooFewComponents,
  // blowup
  InvalidPoint,
  InvalidPartition,
  SeparationViolation,
  CohabitationViolation,
  ExceptionalMultiplicityViolation,
  NotNormalCrossingAtEnd,
  BudgetExhausted,
  Unsolvable,
  // admissibility
  DimensionMismatch,
  FamilyMismatch,
  UnverifiedPencil,
  NotResolved,
  // spectra
  EmptyKeptSet,
  NotSymmetric,
  NegativeOffDiagonal,
  Reducible,
  ClassificationInconsistency,
  // pencil
  InvalidFiberPartition,
  NonPositiveMultiplicity,
  TooFewFibers,
  FiberDegreeMismatch,
  BasePointImbalance,
  ComponentSetMismatch,
  NonAffineBox,
  EmptyFiber,
  // io
  SyntaxError,
  SchemaError,
  UnsupportedVersion,
  DuplicateName,
  UnknownReference,
  NonIntegerMultiplicity,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::NonSurjectiveMap: return "NonSurjectiveMap";
    case ErrorCode::PositivityViolation: return "PositivityViolation";
    case ErrorCode::SameComponent: return "SameComponent";
    case ErrorCode::BezoutViolation: return "BezoutViolation";
    case ErrorCode::ZeroPairwiseIntersection: return "ZeroPairwiseIntersection";
    case ErrorCode::IrrationalDegree: return "IrrationalDegree";
    case ErrorCode::TooFewComponents: return "TooFewComponents";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::SeparationViolation: return "SeparationViolation";
    case ErrorCode::CohabitationViolation: return "CohabitationViolation";
    case ErrorCode::ExceptionalMultiplicityViolation: return "ExceptionalMultiplicityViolation";
    case ErrorCode::NotNormalCrossingAtEnd: return "NotNormalCrossingAtEnd";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::Unsolvable: return "Unsolvable";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::UnverifiedPencil: return "UnverifiedPencil";
    case ErrorCode::NotResolved: return "NotResolved";
    case ErrorCode::EmptyKeptSet: return "EmptyKeptSet";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NegativeOffDiagonal: return "NegativeOffDiagonal";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::ClassificationInconsistency: return "ClassificationInconsistency";
    case ErrorCode::InvalidFiberPartition: return "InvalidFiberPartition";
    case ErrorCode::NonPositiveMultiplicity: return "NonPositiveMultiplicity";
    case ErrorCode::TooFewFibers: return "TooFewFibers";
    case ErrorCode::FiberDegreeMismatch: return "FiberDegreeMismatch";
    case ErrorCode::BasePointImbalance: return "BasePointImbalance";
    case ErrorCode::ComponentSetMismatch: return "ComponentSetMismatch";
    case ErrorCode::NonAffineBox: return "NonAffineBox";
    case ErrorCode::EmptyFiber: return "EmptyFiber";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
  }
  return "Unknown";
}

/// Input-format errors; the CLI maps these to exit code 2.
constexpr bool is_parse_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::SchemaError:
    case ErrorCode::UnsupportedVersion:
    case ErrorCode::DuplicateName:
    case ErrorCode::UnknownReference:
    case ErrorCode::NonIntegerMultiplicity:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace acc
