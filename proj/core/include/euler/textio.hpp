#pragma once

// Plain-text diagram, theorem and proof-script language.
//
//   theorem := diagram "|-" diagram
//   diagram := unitary | "(" diagram "&" diagram ")"
//   unitary := "{" "contours:" ident* ";" "zones:" zone* ";" "shaded:" zone* "}"
//   zone    := "(" ident* ")"
//
//   script    := "theorem" ident ":" theorem statement*
//   statement := "apply" rule "at" number path args
//              | "discharge" number
//              | "tactic" ident "at" number [ "{" statement* "}" ]
//   path      := "-" | side ("/" side)*        side := "L" | "R"
//
// `#` starts a comment that runs to the end of the line. Printing is
// canonical: labels and zones sorted, single spaces.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "euler/engine.hpp"
#include "euler/error.hpp"

namespace euler {

struct SourceSpan {
  std::size_t start = 0;  ///< byte offset
  std::size_t end = 0;    ///< byte offset, exclusive
  std::size_t line = 1;
  std::size_t column = 1;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Syntax or semantic error in a text input, with the offending span.
class ParseError : public EulerError {
 public:
  ParseError(ErrorCode code, SourceSpan span, const std::string& message);
  const SourceSpan& span() const noexcept { return span_; }

 private:
  SourceSpan span_;
};

/// A script step that the engine rejected. `step_number` is 1-based over the
/// rule applications and discharges of the whole script.
class ReplayFailure : public EulerError {
 public:
  ReplayFailure(std::size_t step_number, SourceSpan span, ErrorCode cause, const std::string& message);
  std::size_t step_number() const noexcept { return step_number_; }
  const SourceSpan& span() const noexcept { return span_; }
  ErrorCode cause() const noexcept { return cause_; }

 private:
  std::size_t step_number_;
  SourceSpan span_;
  ErrorCode cause_;
};

namespace textio {

Diagram parse_diagram(std::string_view text);
Subgoal parse_theorem(std::string_view text);
Path parse_path(std::string_view text);

std::string print_diagram(const Diagram& d);
std::string print_theorem(const Subgoal& goal);
/// One statement line, without indentation or newline.
std::string print_step(const StepRecord& step);

struct ScriptStep {
  StepRecord step;
  SourceSpan span;
};

/// A tactic invocation, optionally followed by the steps it expanded to.
struct ScriptTactic {
  std::string name;
  std::size_t goal_index = 0;
  SourceSpan span;
  std::optional<std::vector<ScriptStep>> expansion;
};

using ScriptEntry = std::variant<ScriptStep, ScriptTactic>;

struct ProofScript {
  std::string name;
  Subgoal theorem;
  std::vector<ScriptEntry> entries;
};

ProofScript parse_script(std::string_view text);
/// Steps produced by a tactic invocation are written as a tactic block.
std::string save_script(const Proof& proof, std::string_view name);

enum class ScriptAuthority {
  Steps,    ///< replay recorded rule steps; run tactics only when unexpanded
  Tactics,  ///< re-run every tactic invocation
};

struct ReplayOptions {
  ScriptAuthority authority = ScriptAuthority::Steps;
  /// Re-run each expanded tactic and require it to produce the recorded steps.
  bool strict = false;
};

/// Throws ReplayFailure on the first step the engine rejects.
Proof replay_script(const ProofScript& script, const ReplayOptions& options = {});
Proof load_script(std::string_view text, const ReplayOptions& options = {});

}  // namespace textio
}  // namespace euler
