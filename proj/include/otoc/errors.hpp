#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace otoc {

enum class ErrorCode {
  InvalidParameter = 10,
  UnsupportedEnsemble = 11,
  InvalidGeometry = 12,
  TooSmall = 13,
  BondOutOfRange = 14,
  FlavorMismatch = 15,
  TruncationCeiling = 20,
  SignalLost = 21,
  NumericalIntegrity = 22,
  DegenerateNormalization = 23,
  FitInsufficient = 30,
  Unsupported = 31,
  Io = 40,
  Usage = 2,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// raised by the engines; carries the time step at which it happened
class DiagnosticsError : public Error {
 public:
  DiagnosticsError(ErrorCode code, const std::string& message, int time_step)
      : Error(code, message + " (t=" + std::to_string(time_step) + ")"),
        time_step_(time_step) {}
  int time_step() const noexcept { return time_step_; }

 private:
  int time_step_;
};

}  // namespace otoc
