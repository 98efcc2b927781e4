#include "isoq/error.hpp"

namespace isoq {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::RealPartNotPositiveDefinite: return "RealPartNotPositiveDefinite";
    case ErrorCode::ANotPositiveDefinite: return "ANotPositiveDefinite";
    case ErrorCode::PathDegeneracy: return "PathDegeneracy";
    case ErrorCode::BadNodeCount: return "BadNodeCount";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::ZeroValue: return "ZeroValue";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotLagrangian: return "NotLagrangian";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::OverlappingSubspaces: return "OverlappingSubspaces";
    case ErrorCode::BranchPathInvalid: return "BranchPathInvalid";
    case ErrorCode::TangentialIntersection: return "TangentialIntersection";
    case ErrorCode::OpenCurve: return "OpenCurve";
    case ErrorCode::NotBohrSommerfeldAtLevelP: return "NotBohrSommerfeldAtLevelP";
    case ErrorCode::GeometryMismatch: return "GeometryMismatch";
    case ErrorCode::PowerMismatch: return "PowerMismatch";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::TangentCircles: return "TangentCircles";
    case ErrorCode::NotInUpperHalfPlane: return "NotInUpperHalfPlane";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::FlatnessViolation: return "FlatnessViolation";
    case ErrorCode::NotInteger: return "NotInteger";
    case ErrorCode::WordLengthTooSmall: return "WordLengthTooSmall";
    case ErrorCode::WeightTooSmall: return "WeightTooSmall";
    case ErrorCode::TruncationNotConverged: return "TruncationNotConverged";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::SameAxis: return "SameAxis";
    case ErrorCode::TruncationSuspect: return "TruncationSuspect";
    case ErrorCode::PhaseAmbiguity: return "PhaseAmbiguity";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool is_certificate_failure(ErrorCode code) {
  return code == ErrorCode::TruncationNotConverged || code == ErrorCode::GridTooCoarse ||
         code == ErrorCode::DomainTooSmall || code == ErrorCode::TruncationSuspect ||
         code == ErrorCode::FlatnessViolation;
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace isoq
