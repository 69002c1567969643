#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mixtree {

enum class ErrorCode {
  Disconnected,
  HasCycle,
  SelfLoop,
  DuplicateEdge,
  InvalidVertex,
  NotAnEdge,
  TrivialTree,
  BadDistribution,
  BadParams,
  BadIndex,
  NotACaterpillar,
  NotALeaf,
  AlreadyAdjacent,
  NotOnPath,
  NoLeafAt,
  IndexOutOfRange,
  InsufficientLeaves,
  NotBroomLike,
  OrderTooLarge,
  BadDiameter,
  StepLimitExceeded,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-checkable code. Broken internal invariants throw std::logic_error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mixtree
