#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sheetlab {

enum class ErrorCode {
  BadInput,
  BadCount,
  ModulusTooSmall,
  ExponentSumNotInteger,
  NotConjugateSymmetric,
  DuplicateBranchParameter,
  BadIntervalOrder,
  NonRealRequired,
  DegenerateInterval,
  ZeroConstantTerm,
  BranchInconsistency,
  RadiusTooSmall,
  InsufficientGermLength,
  NumericallySingular,
  OrderShortfall,
  NoConvergence,
  OnCut,
  PoleAtInfinity,
  NewtonDiverged,
  NotGeneralPosition,
  TrajectoryEscaped,
  EndpointMismatch,
  SelfIntersection,
  PathCrossesCut,
  OffsetTooLarge,
  InadmissibleCandidate,
  GridTouchesCut,
  DiagonalSingularity,
  DuplicateSupport,
  NotConverged,
  NegativeWeightsPersist,
  NoCommonArc,
};

std::string_view to_string(ErrorCode code);

/// Every failure carries the module that raised it and the violated contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace sheetlab
