#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vcbench {

enum class ErrorKind {
  Decode,
  EmptyVideo,
  Dimension,
  DegenerateWindow,
  TooFewFrames,
  Backend,
  BackendContract,
  Manifest,
  Numeric,
  DegenerateItem,
  Policy,
  Extraction,
  Configuration,
  DegenerateVariance,
  UndefinedReliability,
  DegenerateAnova,
  InfeasibleSchedule,
  UndefinedDirection,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

// Every failure the toolkit raises carries a kind so that reports can record
// which metric failed and why without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace vcbench
