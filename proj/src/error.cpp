#include "mlob/error.hpp"

namespace mlob {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::BadHeader: return "BadHeader";
    case Errc::TruncatedFrame: return "TruncatedFrame";
    case Errc::FrameLength: return "FrameLength";
    case Errc::UnknownKind: return "UnknownKind";
    case Errc::FieldRange: return "FieldRange";
    case Errc::TimestampOrder: return "TimestampOrder";
    case Errc::UnknownOrder: return "UnknownOrder";
    case Errc::DuplicateOrder: return "DuplicateOrder";
    case Errc::OverExecution: return "OverExecution";
    case Errc::CrossedBook: return "CrossedBook";
    case Errc::SignMismatch: return "SignMismatch";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::BucketTooSmall: return "BucketTooSmall";
    case Errc::DegenerateVariance: return "DegenerateVariance";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::InsufficientDepth: return "InsufficientDepth";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::GrowthViolation: return "GrowthViolation";
    case Errc::IllPosedRegime: return "IllPosedRegime";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

int exit_status(Errc code) noexcept {
  switch (code) {
    case Errc::BadHeader:
    case Errc::TruncatedFrame:
    case Errc::FrameLength:
    case Errc::UnknownKind:
    case Errc::FieldRange:
    case Errc::TimestampOrder:
    case Errc::UnknownOrder:
    case Errc::DuplicateOrder:
    case Errc::OverExecution:
    case Errc::CrossedBook:
    case Errc::Io:
      return 2;
    case Errc::DegenerateDenominator:
    case Errc::InsufficientData:
    case Errc::BucketTooSmall:
    case Errc::DegenerateVariance:
    case Errc::ZeroVariance:
      return 3;
    case Errc::IllPosedRegime:
      return 4;
    default:
      return 1;
  }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace mlob
