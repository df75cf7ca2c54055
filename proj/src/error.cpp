#include "qslcorr/error.hpp"

namespace qslcorr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::BadDim: return "BadDim";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::BadMixingParameter: return "BadMixingParameter";
    case ErrorCode::NotBellDiagonal: return "NotBellDiagonal";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadGeometry: return "BadGeometry";
    case ErrorCode::BadSteps: return "BadSteps";
    case ErrorCode::IntegrationDiverged: return "IntegrationDiverged";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NoDynamics: return "NoDynamics";
    case ErrorCode::UnsupportedScenario: return "UnsupportedScenario";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(message) {}

}  // namespace qslcorr
