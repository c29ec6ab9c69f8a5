#include "sheetlab/error.hpp"

namespace sheetlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::BadCount: return "BadCount";
    case ErrorCode::ModulusTooSmall: return "ModulusTooSmall";
    case ErrorCode::ExponentSumNotInteger: return "ExponentSumNotInteger";
    case ErrorCode::NotConjugateSymmetric: return "NotConjugateSymmetric";
    case ErrorCode::DuplicateBranchParameter: return "DuplicateBranchParameter";
    case ErrorCode::BadIntervalOrder: return "BadIntervalOrder";
    case ErrorCode::NonRealRequired: return "NonRealRequired";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::BranchInconsistency: return "BranchInconsistency";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::InsufficientGermLength: return "InsufficientGermLength";
    case ErrorCode::NumericallySingular: return "NumericallySingular";
    case ErrorCode::OrderShortfall: return "OrderShortfall";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OnCut: return "OnCut";
    case ErrorCode::PoleAtInfinity: return "PoleAtInfinity";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::NotGeneralPosition: return "NotGeneralPosition";
    case ErrorCode::TrajectoryEscaped: return "TrajectoryEscaped";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::SelfIntersection: return "SelfIntersection";
    case ErrorCode::PathCrossesCut: return "PathCrossesCut";
    case ErrorCode::OffsetTooLarge: return "OffsetTooLarge";
    case ErrorCode::InadmissibleCandidate: return "InadmissibleCandidate";
    case ErrorCode::GridTouchesCut: return "GridTouchesCut";
    case ErrorCode::DiagonalSingularity: return "DiagonalSingularity";
    case ErrorCode::DuplicateSupport: return "DuplicateSupport";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::NegativeWeightsPersist: return "NegativeWeightsPersist";
    case ErrorCode::NoCommonArc: return "NoCommonArc";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string module, const std::string& detail)
    : std::runtime_error(module + ": " + std::string(to_string(code)) +
                         (detail.empty() ? "" : " (" + detail + ")")),
      code_(code),
      module_(std::move(module)) {}

}  // namespace sheetlab
