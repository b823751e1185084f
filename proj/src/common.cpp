#include "tmm/common.hpp"

namespace tmm {

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::NoRootOnBranch: return "NoRootOnBranch";
    case ErrorCode::DegenerateRoots: return "DegenerateRoots";
    case ErrorCode::PathOnCut: return "PathOnCut";
    case ErrorCode::OutsideSupport: return "OutsideSupport";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::ConditioningWarning: return "ConditioningWarning";
    case ErrorCode::BranchCutHit: return "BranchCutHit";
    case ErrorCode::DomainRestriction: return "DomainRestriction";
    case ErrorCode::SingularMinor: return "SingularMinor";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace tmm
