#include "otoc/errors.hpp"

namespace otoc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::UnsupportedEnsemble: return "unsupported-ensemble";
    case ErrorCode::InvalidGeometry: return "invalid-geometry";
    case ErrorCode::TooSmall: return "too-small";
    case ErrorCode::BondOutOfRange: return "bond-out-of-range";
    case ErrorCode::FlavorMismatch: return "flavor-mismatch";
    case ErrorCode::TruncationCeiling: return "truncation-ceiling";
    case ErrorCode::SignalLost: return "signal-lost";
    case ErrorCode::NumericalIntegrity: return "numerical-integrity";
    case ErrorCode::DegenerateNormalization: return "degenerate-normalization";
    case ErrorCode::FitInsufficient: return "fit-insufficient";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Io: return "io";
    case ErrorCode::Usage: return "usage";
  }
  return "unknown";
}

}  // namespace otoc
