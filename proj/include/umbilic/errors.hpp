// Error types shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace umbilic {

enum class ErrorCode {
  TruncationInsufficient,
  NotAtOrigin,
  NonOriginPreserving,
  NoNonzeroMetricCoefficient,
  NotUmbilic,
  OddDimension,
  ZeroOneJet,
  DegenerateConfig,
  ZeroCubic,
  UnknownModel,
  UnsupportedCausalType,
  BranchInvalid,
  IllConditioned,
  SeedOutsideDomain,
  InvalidArgument,
  ParseError,
  Internal,
};

inline const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorCode::NotAtOrigin: return "NotAtOrigin";
    case ErrorCode::NonOriginPreserving: return "NonOriginPreserving";
    case ErrorCode::NoNonzeroMetricCoefficient: return "NoNonzeroMetricCoefficient";
    case ErrorCode::NotUmbilic: return "NotUmbilic";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::ZeroOneJet: return "ZeroOneJet";
    case ErrorCode::DegenerateConfig: return "DegenerateConfig";
    case ErrorCode::ZeroCubic: return "ZeroCubic";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::UnsupportedCausalType: return "UnsupportedCausalType";
    case ErrorCode::BranchInvalid: return "BranchInvalid";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::SeedOutsideDomain: return "SeedOutsideDomain";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a stable code; the message is
/// the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace umbilic
