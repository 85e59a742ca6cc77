#include "laplaceqm/error.hpp"

namespace laplaceqm {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateLambda: return "DegenerateLambda";
    case ErrorCode::BranchPointEvaluation: return "BranchPointEvaluation";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::NotBoundProblem: return "NotBoundProblem";
    case ErrorCode::InvalidQuantumNumbers: return "InvalidQuantumNumbers";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SeriesDivergence: return "SeriesDivergence";
    case ErrorCode::InvalidB: return "InvalidB";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::PoleError: return "PoleError";
    case ErrorCode::NonIntegerOrder: return "NonIntegerOrder";
    case ErrorCode::MethodRegimeMismatch: return "MethodRegimeMismatch";
    case ErrorCode::NoCanonicalForm: return "NoCanonicalForm";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace laplaceqm
