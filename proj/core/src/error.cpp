#include "euler/error.hpp"

namespace euler {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidLabel: return "invalid-label";
    case ErrorCode::MalformedDiagram: return "malformed-diagram";
    case ErrorCode::InvalidPath: return "invalid-path";
    case ErrorCode::WrongNodeKind: return "wrong-node-kind";
    case ErrorCode::VocabularyMismatch: return "vocabulary-mismatch";
    case ErrorCode::ImplicationNodePresent: return "implication-node-present";
    case ErrorCode::MalformedGoal: return "malformed-goal";
    case ErrorCode::ContourAbsent: return "contour-absent";
    case ErrorCode::ZoneNotShaded: return "zone-not-shaded";
    case ErrorCode::ContourAlreadyPresent: return "contour-already-present";
    case ErrorCode::ZoneNotMissing: return "zone-not-missing";
    case ErrorCode::BackgroundZoneProtected: return "background-zone-protected";
    case ErrorCode::ZoneSetMismatch: return "zone-set-mismatch";
    case ErrorCode::ContourNotCopyable: return "contour-not-copyable";
    case ErrorCode::NotForcedEmpty: return "not-forced-empty";
    case ErrorCode::ConjunctsDiffer: return "conjuncts-differ";
    case ErrorCode::BadArguments: return "bad-arguments";
    case ErrorCode::BadIndex: return "bad-index";
    case ErrorCode::ConsequentTargeted: return "consequent-targeted";
    case ErrorCode::NotTrivial: return "not-trivial";
    case ErrorCode::UnknownTactic: return "unknown-tactic";
    case ErrorCode::TacticFailed: return "tactic-failed";
    case ErrorCode::SyntaxError: return "syntax-error";
    case ErrorCode::SemanticError: return "semantic-error";
    case ErrorCode::ReplayError: return "replay-error";
  }
  return "unknown";
}

}  // namespace euler
