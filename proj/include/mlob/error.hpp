#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlob {

enum class Errc {
  // tape format
  BadHeader,
  TruncatedFrame,
  FrameLength,
  UnknownKind,
  FieldRange,
  TimestampOrder,
  // book reconstruction
  UnknownOrder,
  DuplicateOrder,
  OverExecution,
  CrossedBook,
  // ledger / statistics
  SignMismatch,
  DegenerateDenominator,
  InsufficientData,
  BucketTooSmall,
  DegenerateVariance,
  ZeroVariance,
  InsufficientDepth,
  // simulation / numerics
  InvalidParams,
  InvalidConfig,
  GrowthViolation,
  IllPosedRegime,
  GridTooCoarse,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

/// Process exit status for a failure of this kind:
/// 2 input format, 3 statistical degeneracy, 4 ill-posed pricing regime, 1 otherwise.
int exit_status(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace mlob
