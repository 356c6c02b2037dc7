#include "euler/engine.hpp"

#include <string>

#include "euler/error.hpp"

namespace euler {

namespace {

Diagram checked_goal(Diagram goal) {
  if (!goal.is_implication()) {
    throw EulerError(ErrorCode::MalformedGoal, "a subgoal must be an implication");
  }
  return goal;
}

void check_index(const ProofState& state, std::size_t index) {
  if (index >= state.subgoals.size()) {
    throw EulerError(ErrorCode::BadIndex, "subgoal index " + std::to_string(index) +
                                              " is out of range (" +
                                              std::to_string(state.subgoals.size()) + " subgoals)");
  }
}

}  // namespace

Subgoal::Subgoal(Diagram goal) : goal_(checked_goal(std::move(goal))) {}

Subgoal::Subgoal(Diagram antecedent, Diagram consequent)
    : goal_(Diagram::implication(std::move(antecedent), std::move(consequent))) {}

bool Subgoal::is_trivial() const {
  return antecedent().is_unitary() && diagram_equal(antecedent(), consequent());
}

std::size_t StepRecord::goal_index() const {
  return std::visit(
      [](const auto& k) -> std::size_t { return k.goal_index; }, kind);
}

ProofState apply_step(const ProofState& state, const StepRecord& step) {
  ProofState next = state;
  if (const auto* d = std::get_if<Discharge>(&step.kind)) {
    check_index(state, d->goal_index);
    if (!state.subgoals[d->goal_index].is_trivial()) {
      throw EulerError(ErrorCode::NotTrivial, "subgoal " + std::to_string(d->goal_index) +
                                                  " is not a trivial implication");
    }
    next.subgoals.erase(next.subgoals.begin() + static_cast<std::ptrdiff_t>(d->goal_index));
    return next;
  }

  const auto& app = std::get<RuleApplication>(step.kind);
  check_index(state, app.goal_index);
  if (app.path.empty() || app.path.front() != Side::Left) {
    throw EulerError(ErrorCode::ConsequentTargeted,
                     "rules apply inside the antecedent; path " + path_to_string(app.path) +
                         " does not start with L");
  }
  const Diagram& goal = state.subgoals[app.goal_index].goal();
  const Diagram& target = subdiagram_at(goal, app.path);
  Diagram rewritten = rules::apply(target, app.rule, app.args);
  next.subgoals[app.goal_index] = Subgoal(replace_at(goal, app.path, std::move(rewritten)));
  return next;
}

Proof::Proof(Subgoal theorem) : states_{ProofState{{std::move(theorem)}}} {}

Proof Proof::extended(const StepRecord& step) const {
  return extended(step, apply_step(current(), step));
}

Proof Proof::extended(StepRecord step, ProofState next) const {
  Proof out = *this;
  out.steps_.push_back(std::move(step));
  out.states_.push_back(std::move(next));
  return out;
}

Proof Proof::truncated(std::size_t state_index) const {
  if (state_index >= states_.size()) {
    throw EulerError(ErrorCode::BadIndex, "state index " + std::to_string(state_index) +
                                              " is out of range (" +
                                              std::to_string(states_.size()) + " states)");
  }
  Proof out = *this;
  out.states_.erase(out.states_.begin() + static_cast<std::ptrdiff_t>(state_index) + 1, out.states_.end());
  out.steps_.erase(out.steps_.begin() + static_cast<std::ptrdiff_t>(state_index), out.steps_.end());
  return out;
}

Proof new_proof(Subgoal theorem) { return Proof(std::move(theorem)); }

Proof apply_rule(const Proof& p, const RuleApplication& app) { return p.extended(StepRecord{app, {}}); }

Proof discharge_trivial(const Proof& p, std::size_t goal_index) {
  return p.extended(StepRecord{Discharge{goal_index}, {}});
}

Proof undo_to(const Proof& p, std::size_t state_index) { return p.truncated(state_index); }

bool is_finished(const Proof& p) noexcept { return p.current().subgoals.empty(); }

Proof replay(const Subgoal& theorem, const std::vector<StepRecord>& steps) {
  Proof p(theorem);
  for (const auto& step : steps) p = p.extended(step);
  return p;
}

}  // namespace euler
