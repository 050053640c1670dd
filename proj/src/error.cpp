#include "freespec/error.hpp"

namespace freespec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NormNotOne: return "NormNotOne";
    case ErrorCode::NotInDisk: return "NotInDisk";
    case ErrorCode::BadLambda: return "BadLambda";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotAWalk: return "NotAWalk";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::LabelCollision: return "LabelCollision";
    case ErrorCode::AntiparallelPair: return "AntiparallelPair";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::BidiskCase: return "BidiskCase";
    case ErrorCode::DegenerateIntersection: return "DegenerateIntersection";
    case ErrorCode::SingularL: return "SingularL";
    case ErrorCode::Schema: return "Schema";
  }
  return "Unknown";
}

}  // namespace freespec
