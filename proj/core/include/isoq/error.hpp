#pragma once

#include <stdexcept>
#include <string>

namespace isoq {

enum class ErrorCode {
  NonSymmetric,
  RealPartNotPositiveDefinite,
  ANotPositiveDefinite,
  PathDegeneracy,
  BadNodeCount,
  InsufficientSamples,
  IllConditioned,
  ZeroValue,
  DimensionMismatch,
  NotLagrangian,
  NotIsotropic,
  OverlappingSubspaces,
  BranchPathInvalid,
  TangentialIntersection,
  OpenCurve,
  NotBohrSommerfeldAtLevelP,
  GeometryMismatch,
  PowerMismatch,
  DomainTooSmall,
  TangentCircles,
  NotInUpperHalfPlane,
  NotHyperbolic,
  NotElliptic,
  FlatnessViolation,
  NotInteger,
  WordLengthTooSmall,
  WeightTooSmall,
  TruncationNotConverged,
  GridTooCoarse,
  SameAxis,
  TruncationSuspect,
  PhaseAmbiguity,
  InvalidSpec,
  SchemaMismatch,
  ConfigError,
};

const char* to_string(ErrorCode code);

// true for errors that signal a failed convergence certificate
bool is_certificate_failure(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace isoq
