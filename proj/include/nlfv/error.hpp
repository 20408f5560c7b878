#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nlfv {

enum class ErrorKind {
  InvalidArgument,
  // kernel
  NonPositiveWindow,
  InvalidMesh,
  LengthMismatch,
  DegenerateSupport,
  // flux
  NonFiniteValue,
  EmptyBox,
  // grid
  InvalidDomain,
  InvalidCellCount,
  NegativeDatum,
  // solver
  CFLViolation,
  NonFiniteState,
  // bounds / diagnostics
  MissingNorm,
  StateMismatch,
  BoundViolation,
  // config
  ConfigSyntax,
  ConfigSemantic,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library. `step` is set when the failure
/// happened inside the time loop.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::optional<long> step = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<long> step() const noexcept { return step_; }

  /// Copy of this error tagged with a time-step index.
  Error at_step(long step) const;

 private:
  ErrorKind kind_;
  std::optional<long> step_;
  std::string bare_message_;
};

}  // namespace nlfv
