#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace euler {

enum class ErrorCode {
  InvalidLabel,
  MalformedDiagram,
  InvalidPath,
  WrongNodeKind,
  VocabularyMismatch,
  ImplicationNodePresent,
  MalformedGoal,
  ContourAbsent,
  ZoneNotShaded,
  ContourAlreadyPresent,
  ZoneNotMissing,
  BackgroundZoneProtected,
  ZoneSetMismatch,
  ContourNotCopyable,
  NotForcedEmpty,
  ConjunctsDiffer,
  BadArguments,
  BadIndex,
  ConsequentTargeted,
  NotTrivial,
  UnknownTactic,
  TacticFailed,
  SyntaxError,
  SemanticError,
  ReplayError,
};

/// Stable kebab-case identifier, used on the wire and in CLI diagnostics.
std::string_view error_code_name(ErrorCode code) noexcept;

class EulerError : public std::runtime_error {
 public:
  EulerError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace euler
