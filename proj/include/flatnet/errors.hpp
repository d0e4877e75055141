#pragma once

#include <stdexcept>
#include <string>

namespace flatnet {

// Domain error codes. The CLI maps these to machine-readable records.
enum class ErrorCode {
  EdgeVectorMismatch,
  UnpairedEdge,
  NonPositiveArea,
  InvalidPolygon,
  LambdaOutOfRange,
  ZeroDirection,
  BudgetExceeded,
  RadiusTooSmall,
  EdgeTooLong,
  NetworkDisconnected,
  HitSingularity,
  IncompleteSection,
  VerticalGamma,
  TracingBudgetExceeded,
  DeltaUnachievable,
  PreconditionViolated,
  MeasureOverflow,
  MixedField,
  DegenerateComponents,
  GeometryBudget,
  ParseError,
  FieldMismatch,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::EdgeVectorMismatch: return "EdgeVectorMismatch";
    case ErrorCode::UnpairedEdge: return "UnpairedEdge";
    case ErrorCode::NonPositiveArea: return "NonPositiveArea";
    case ErrorCode::InvalidPolygon: return "InvalidPolygon";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::EdgeTooLong: return "EdgeTooLong";
    case ErrorCode::NetworkDisconnected: return "NetworkDisconnected";
    case ErrorCode::HitSingularity: return "HitSingularity";
    case ErrorCode::IncompleteSection: return "IncompleteSection";
    case ErrorCode::VerticalGamma: return "VerticalGamma";
    case ErrorCode::TracingBudgetExceeded: return "TracingBudgetExceeded";
    case ErrorCode::DeltaUnachievable: return "DeltaUnachievable";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::MeasureOverflow: return "MeasureOverflow";
    case ErrorCode::MixedField: return "MixedField";
    case ErrorCode::DegenerateComponents: return "DegenerateComponents";
    case ErrorCode::GeometryBudget: return "GeometryBudget";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
  }
  return "Unknown";
}

class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, std::string msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Thrown when a trajectory runs into a cone point (angle > 2*pi).  Carries
// the time along the trajectory at which the hit occurred.
class SingularityHit : public DomainError {
 public:
  explicit SingularityHit(double time, int vertex = -1)
      : DomainError(ErrorCode::HitSingularity,
                    "trajectory hit a cone point at t=" + std::to_string(time)),
        time_(time), vertex_(vertex) {}
  double time() const { return time_; }
  int vertex() const { return vertex_; }

 private:
  double time_;
  int vertex_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw DomainError(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace flatnet
