#pragma once

// Backward proof machinery: subgoals, proof states, and proofs as the list of
// states produced by successive rule applications and discharges.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "euler/diagram.hpp"
#include "euler/rules.hpp"

namespace euler {

/// An implication `antecedent -> consequent` between conjunctive diagrams.
class Subgoal {
 public:
  /// Throws MalformedGoal unless `goal` is an implication.
  explicit Subgoal(Diagram goal);
  Subgoal(Diagram antecedent, Diagram consequent);

  const Diagram& goal() const noexcept { return goal_; }
  const Diagram& antecedent() const { return goal_.left(); }
  const Diagram& consequent() const { return goal_.right(); }

  /// The shape tactics accept: the consequent is one unitary diagram.
  bool in_tactic_form() const { return consequent().is_unitary(); }
  /// A unitary antecedent structurally equal to the consequent.
  bool is_trivial() const;

  friend bool operator==(const Subgoal&, const Subgoal&) = default;

 private:
  Diagram goal_;
};

struct ProofState {
  std::vector<Subgoal> subgoals;
  friend bool operator==(const ProofState&, const ProofState&) = default;
};

/// Removal of a trivial subgoal `A -> A`.
struct Discharge {
  std::size_t goal_index = 0;
  friend bool operator==(const Discharge&, const Discharge&) = default;
};

/// Which tactic invocation produced a step. `invocation` is the index of the
/// proof state the invocation started from, unique within one proof.
struct TacticTag {
  std::string name;
  std::size_t goal_index = 0;
  std::size_t invocation = 0;
  friend bool operator==(const TacticTag&, const TacticTag&) = default;
};

struct StepRecord {
  std::variant<RuleApplication, Discharge> kind;
  std::optional<TacticTag> provenance;

  std::size_t goal_index() const;
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// Applies one step to a state. Throws EulerError, leaving nothing modified.
ProofState apply_step(const ProofState& state, const StepRecord& step);

/// Invariant: steps()[i] turns states()[i] into states()[i + 1].
class Proof {
 public:
  explicit Proof(Subgoal theorem);

  const std::vector<ProofState>& states() const noexcept { return states_; }
  const std::vector<StepRecord>& steps() const noexcept { return steps_; }
  const ProofState& current() const noexcept { return states_.back(); }
  const Subgoal& theorem() const noexcept { return states_.front().subgoals.front(); }

  /// Returns a proof extended by `step`; this proof is untouched on error.
  Proof extended(const StepRecord& step) const;
  /// Appends a step whose resulting state is already known.
  Proof extended(StepRecord step, ProofState next) const;
  Proof truncated(std::size_t state_index) const;

 private:
  std::vector<ProofState> states_;
  std::vector<StepRecord> steps_;
};

Proof new_proof(Subgoal theorem);
Proof apply_rule(const Proof& p, const RuleApplication& app);
Proof discharge_trivial(const Proof& p, std::size_t goal_index);
Proof undo_to(const Proof& p, std::size_t state_index);
bool is_finished(const Proof& p) noexcept;

/// Rebuilds a proof by applying `steps` to `theorem` in order.
Proof replay(const Subgoal& theorem, const std::vector<StepRecord>& steps);

}  // namespace euler
