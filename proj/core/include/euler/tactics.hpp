#pragma once

// Tactics and tacticals.
//
// A tactic maps (proof state, subgoal index, accumulated result) to an
// optional new accumulated result. Only rule-level tactics add steps; every
// other tactic is built from them, so soundness rests on the rules alone.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "euler/engine.hpp"

namespace euler {

/// Shared by every step of one top-level invocation. Rule-level tactics fail
/// once the stop token fires or the step budget is spent.
struct TacticLimits {
  std::stop_token stop;
  std::size_t max_steps = 20000;
};

struct TacticResult {
  std::vector<StepRecord> applied;
  ProofState state;
  std::shared_ptr<const TacticLimits> limits;

  /// A fresh accumulator for an invocation starting at `state`.
  static TacticResult start(ProofState state, std::shared_ptr<const TacticLimits> limits = nullptr);
};

bool operator==(const TacticResult& a, const TacticResult& b);

using Tactic =
    std::function<std::optional<TacticResult>(const ProofState&, std::size_t, const TacticResult&)>;
using DiagramPredicate = std::function<bool(const Diagram&)>;
using Chooser = std::function<std::optional<RuleArgs>(const Diagram&)>;
using GoalPredicate = std::function<bool(const ProofState&, std::size_t)>;

namespace tactics {

/// Walks the subgoal's antecedent in pre-order to the first subtree accepted
/// by `pred`, picks arguments with `choose`, and applies `rule` there.
Tactic rule_tactic(Rule rule, DiagramPredicate pred, Chooser choose);
/// As rule_tactic, searching only below `base` (relative to the antecedent).
Tactic rule_tactic_at(Path base, Rule rule, DiagramPredicate pred, Chooser choose);

Tactic then(Tactic first, Tactic second);
Tactic orelse(Tactic first, Tactic second);
/// Applies the tactic until it fails or stops making progress; never fails.
Tactic repeat(Tactic t);
Tactic cond(GoalPredicate p, Tactic if_true, Tactic if_false);
/// Applies `t` until `p` holds; fails if `t` fails (or stalls) first.
Tactic depth_first(GoalPredicate p, Tactic t);
Tactic id();
Tactic fail();

/// Removes the subgoal when it is a trivial implication.
Tactic discharge();

GoalPredicate antecedent_is_unitary();

// Low-level tactics.
Tactic intro_all_shaded_zones();           // 1
Tactic intro_all_shaded_zones_deepest();   // 2
Tactic intro_all_contours();               // 3
Tactic intro_all_contours_deepest();       // 4
Tactic combine_all();                      // 5
Tactic prepare_copy_shading();             // 6
Tactic prepare_copy_contours();            // 7
Tactic match_conclusion();                 // 8

// High-level tactics.
Tactic copy_contours();                    // 9
Tactic propagate_shading();                // 10
Tactic venn_breadth();                     // 11
Tactic venn_depth();                       // 12
Tactic copy_shading_and_contours();        // 13

/// Path (relative to the antecedent) of the leftmost conjunction whose two
/// children are unitary diagrams.
std::optional<Path> deepest_unitary_pair(const Diagram& antecedent);

enum class TacticLevel { Low, High };

struct TacticInfo {
  std::string name;
  std::string title;
  TacticLevel level;
  Tactic tactic;
};

const std::vector<TacticInfo>& registry();
/// Throws UnknownTactic.
const TacticInfo& find_tactic(std::string_view name);

/// Runs a registered tactic on subgoal `goal_index` of the current state and
/// returns the extended proof, with every step tagged by the invocation.
/// Empty on failure.
std::optional<Proof> run_tactic(const Proof& proof, std::string_view name, std::size_t goal_index,
                                std::stop_token stop = {});

}  // namespace tactics
}  // namespace euler
