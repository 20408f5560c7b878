#include "nlfv/error.hpp"

namespace nlfv {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonPositiveWindow: return "NonPositiveWindow";
    case ErrorKind::InvalidMesh: return "InvalidMesh";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DegenerateSupport: return "DegenerateSupport";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::EmptyBox: return "EmptyBox";
    case ErrorKind::InvalidDomain: return "InvalidDomain";
    case ErrorKind::InvalidCellCount: return "InvalidCellCount";
    case ErrorKind::NegativeDatum: return "NegativeDatum";
    case ErrorKind::CFLViolation: return "CFLViolation";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::MissingNorm: return "MissingNorm";
    case ErrorKind::StateMismatch: return "StateMismatch";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::ConfigSyntax: return "ConfigSyntax";
    case ErrorKind::ConfigSemantic: return "ConfigSemantic";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {
std::string decorate(ErrorKind kind, const std::string& message, std::optional<long> step) {
  std::string out(to_string(kind));
  if (step) out += " at step " + std::to_string(*step);
  out += ": " + message;
  return out;
}
}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<long> step)
    : std::runtime_error(decorate(kind, message, step)),
      kind_(kind),
      step_(step),
      bare_message_(message) {}

Error Error::at_step(long step) const {
  if (step_) return *this;
  return Error(kind_, bare_message_, step);
}

}  // namespace nlfv
