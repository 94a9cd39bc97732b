#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acx {

enum class ErrorCode {
  DimensionMismatch,
  InvalidSpec,
  NotIntegrable,
  DegenerateGradient,
  Singular,
  ZeroSection,
  RankDeficientInput,
  SingularJacobian,
  NotPseudoconvex,
  FrameDegeneracy,
  NoConvergence,
  SmallnessViolated,
  NotTotallyReal,
  EdgeNotReal,
  NotStrictlyPsh,
  NoAdmissibleDisc,
  UnknownSeries,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::DegenerateGradient: return "DegenerateGradient";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::ZeroSection: return "ZeroSection";
    case ErrorCode::RankDeficientInput: return "RankDeficientInput";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::NotPseudoconvex: return "NotPseudoconvex";
    case ErrorCode::FrameDegeneracy: return "FrameDegeneracy";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SmallnessViolated: return "SmallnessViolated";
    case ErrorCode::NotTotallyReal: return "NotTotallyReal";
    case ErrorCode::EdgeNotReal: return "EdgeNotReal";
    case ErrorCode::NotStrictlyPsh: return "NotStrictlyPsh";
    case ErrorCode::NoAdmissibleDisc: return "NoAdmissibleDisc";
    case ErrorCode::UnknownSeries: return "UnknownSeries";
  }
  return "Unknown";
}

// throws Error(code, msg) unless cond holds
inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

}  // namespace acx
