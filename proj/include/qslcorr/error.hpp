#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qslcorr {

enum class ErrorCode {
  NonHermitian,
  NotPSD,
  BadDim,
  InvalidState,
  BadMixingParameter,
  NotBellDiagonal,
  DomainError,
  BadParams,
  BadGeometry,
  BadSteps,
  IntegrationDiverged,
  GridMismatch,
  NoDynamics,
  UnsupportedScenario,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported as an Error carrying a code.
/// what() is "<Code>: <message>" so it can be printed as a single line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace qslcorr
