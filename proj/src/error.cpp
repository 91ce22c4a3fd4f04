#include "vcbench/error.hpp"

namespace vcbench {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Decode: return "decode";
    case ErrorKind::EmptyVideo: return "empty-video";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::DegenerateWindow: return "degenerate-window";
    case ErrorKind::TooFewFrames: return "too-few-frames";
    case ErrorKind::Backend: return "backend";
    case ErrorKind::BackendContract: return "backend-contract";
    case ErrorKind::Manifest: return "manifest";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::DegenerateItem: return "degenerate-item";
    case ErrorKind::Policy: return "policy";
    case ErrorKind::Extraction: return "extraction";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::DegenerateVariance: return "degenerate-variance";
    case ErrorKind::UndefinedReliability: return "undefined-reliability";
    case ErrorKind::DegenerateAnova: return "degenerate-anova";
    case ErrorKind::InfeasibleSchedule: return "infeasible-schedule";
    case ErrorKind::UndefinedDirection: return "undefined-direction";
    case ErrorKind::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace vcbench
