#include "euler/tactics.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "euler/error.hpp"
#include "euler/rules.hpp"
#include "euler/semantics.hpp"

namespace euler {

TacticResult TacticResult::start(ProofState state, std::shared_ptr<const TacticLimits> limits) {
  return TacticResult{{}, std::move(state), std::move(limits)};
}

bool operator==(const TacticResult& a, const TacticResult& b) {
  return a.applied == b.applied && a.state == b.state;
}

namespace tactics {

namespace {

bool out_of_budget(const TacticResult& acc) {
  if (!acc.limits) return false;
  return acc.limits->stop.stop_requested() || acc.applied.size() >= acc.limits->max_steps;
}

// The only place a tactic adds a step.
std::optional<TacticResult> primitive_step(const ProofState& goals, const TacticResult& acc,
                                           StepRecord step) {
  if (out_of_budget(acc)) return std::nullopt;
  ProofState next;
  try {
    next = apply_step(goals, step);
  } catch (const EulerError&) {
    return std::nullopt;
  }
  TacticResult out = acc;
  out.applied.push_back(std::move(step));
  out.state = std::move(next);
  return out;
}

bool in_tactic_form(const ProofState& goals, std::size_t index) {
  return index < goals.subgoals.size() && goals.subgoals[index].in_tactic_form();
}

Tactic guarded(Tactic t) {
  return [t = std::move(t)](const ProofState& goals, std::size_t index,
                            const TacticResult& acc) -> std::optional<TacticResult> {
    if (!in_tactic_form(goals, index)) return std::nullopt;
    return t(goals, index, acc);
  };
}

Path concat(Path a, const Path& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Path child_path(const Path& base, Side side) {
  Path p = base;
  p.push_back(side);
  return p;
}

bool is_unitary_pair(const Diagram& d) {
  return d.is_conjunction() && d.left().is_unitary() && d.right().is_unitary();
}

std::vector<Path> unitary_pairs(const Diagram& antecedent) {
  std::vector<Path> out;
  for (Path& p : preorder_paths(antecedent)) {
    if (is_unitary_pair(subdiagram_at(antecedent, p))) out.push_back(std::move(p));
  }
  return out;
}

// Sequences rule applications on one subgoal inside a hand-written tactic.
// Any failed step aborts the whole tactic.
class Run {
 public:
  Run(const ProofState& goals, std::size_t index, const TacticResult& acc)
      : index_(index), result_(acc), start_(acc.applied.size()) {
    result_.state = goals;
  }

  const Subgoal& subgoal() const { return result_.state.subgoals[index_]; }
  const Diagram& antecedent() const { return subgoal().antecedent(); }
  const Diagram& at(const Path& rel) const { return subdiagram_at(antecedent(), rel); }
  const UnitaryDiagram& unitary_at(const Path& rel) const { return at(rel).unitary(); }

  bool apply(Rule rule, const Path& rel, RuleArgs args) {
    auto next = primitive_step(result_.state, result_,
                               StepRecord{RuleApplication{rule, index_, concat({Side::Left}, rel),
                                                          std::move(args)},
                                          {}});
    if (!next) return false;
    result_ = std::move(*next);
    return true;
  }

  bool exhausted() const { return out_of_budget(result_); }
  std::size_t added() const { return result_.applied.size() - start_; }
  TacticResult take() { return std::move(result_); }

 private:
  std::size_t index_;
  TacticResult result_;
  std::size_t start_;
};

ContourSet difference(const ContourSet& a, const ContourSet& b) {
  ContourSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

ContourSet intersection(const ContourSet& a, const ContourSet& b) {
  ContourSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

DiagramPredicate non_venn_unitary() {
  return [](const Diagram& d) { return d.is_unitary() && !is_venn_form(d.unitary()); };
}

Chooser first_missing_zone() {
  return [](const Diagram& d) -> std::optional<RuleArgs> {
    const ZoneSet missing = missing_zones(d.unitary());
    if (missing.empty()) return std::nullopt;
    return RuleArgs{*missing.begin()};
  };
}

DiagramPredicate unitary_lacking_any(ContourSet wanted) {
  return [wanted = std::move(wanted)](const Diagram& d) {
    return d.is_unitary() && !difference(wanted, d.unitary().contours()).empty();
  };
}

Chooser first_lacking(ContourSet wanted) {
  return [wanted = std::move(wanted)](const Diagram& d) -> std::optional<RuleArgs> {
    const ContourSet lacking = difference(wanted, d.unitary().contours());
    if (lacking.empty()) return std::nullopt;
    return RuleArgs{*lacking.begin()};
  };
}

// Missing zones of `dst`, grouped by their in-set on the contours shared with
// `src`, keeping the groups whose source region is visibly shaded: at least
// one present source zone with that footprint, and all such zones shaded.
// Ordered smallest group first, then by footprint.
std::vector<ZoneSet> enabling_groups(const UnitaryDiagram& src, const UnitaryDiagram& dst) {
  const ContourSet shared = intersection(src.contours(), dst.contours());
  std::map<Zone, ZoneSet> groups;
  for (const Zone& z : missing_zones(dst)) groups[z.restricted_to(shared)].insert(z);

  std::vector<std::pair<Zone, ZoneSet>> enabling;
  for (auto& [key, group] : groups) {
    bool any = false;
    bool all_shaded = true;
    for (const Zone& w : src.zones()) {
      if (w.restricted_to(shared) != key) continue;
      any = true;
      all_shaded = all_shaded && src.is_shaded(w);
    }
    if (any && all_shaded) enabling.emplace_back(key, std::move(group));
  }
  std::stable_sort(enabling.begin(), enabling.end(), [](const auto& a, const auto& b) {
    return a.second.size() < b.second.size();
  });
  std::vector<ZoneSet> out;
  for (auto& e : enabling) out.push_back(std::move(e.second));
  return out;
}

struct Direction {
  CopyDirection copy;
  Side source;
  Side target;
};

constexpr Direction kDirections[] = {
    {CopyDirection::LeftToRight, Side::Left, Side::Right},
    {CopyDirection::RightToLeft, Side::Right, Side::Left},
};

// Introduces the first enabling group into the pair at `pair`. Returns
// whether anything was introduced; false with `run.exhausted()` on abort.
bool prepare_shading_at(Run& run, const Path& pair) {
  for (const Direction& dir : kDirections) {
    const auto groups = enabling_groups(run.unitary_at(child_path(pair, dir.source)),
                                        run.unitary_at(child_path(pair, dir.target)));
    if (groups.empty()) continue;
    for (const Zone& z : groups.front()) {
      if (!run.apply(Rule::IntroduceShadedZone, child_path(pair, dir.target), z)) return false;
    }
    return true;
  }
  return false;
}

bool admits_shading_copy(const Diagram& pair) {
  const UnitaryDiagram& l = pair.left().unitary();
  const UnitaryDiagram& r = pair.right().unitary();
  return !rules::copyable_shading(l, r).empty() || !rules::copyable_shading(r, l).empty() ||
         !enabling_groups(l, r).empty() || !enabling_groups(r, l).empty();
}

bool admits_contour_copy(const Diagram& pair) {
  return pair.left().unitary().contours() != pair.right().unitary().contours();
}

std::optional<Path> first_pair(const Diagram& antecedent, bool (*admits)(const Diagram&)) {
  for (const Path& p : unitary_pairs(antecedent)) {
    if (admits(subdiagram_at(antecedent, p))) return p;
  }
  return std::nullopt;
}

// Turns shaded zones of both conjuncts into missing zones. False on abort.
bool remove_shaded_zones_at(Run& run, const Path& pair) {
  for (Side side : {Side::Left, Side::Right}) {
    const Path target = child_path(pair, side);
    const ZoneSet shaded = run.unitary_at(target).shaded();
    for (const Zone& z : shaded) {
      if (z.is_background()) continue;
      if (!run.apply(Rule::RemoveShadedZone, target, z)) return false;
    }
  }
  return true;
}

bool idempotency_if_identical(Run& run, const Path& pair) {
  const Diagram& d = run.at(pair);
  if (!diagram_equal(d.left(), d.right())) return true;
  return run.apply(Rule::Idempotency, pair, std::monostate{});
}

}  // namespace

Tactic rule_tactic(Rule rule, DiagramPredicate pred, Chooser choose) {
  return rule_tactic_at({}, rule, std::move(pred), std::move(choose));
}

Tactic rule_tactic_at(Path base, Rule rule, DiagramPredicate pred, Chooser choose) {
  return [base = std::move(base), rule, pred = std::move(pred), choose = std::move(choose)](
             const ProofState& goals, std::size_t index,
             const TacticResult& acc) -> std::optional<TacticResult> {
    if (index >= goals.subgoals.size()) return std::nullopt;
    const Diagram& antecedent = goals.subgoals[index].antecedent();
    if (!is_valid_path(antecedent, base)) return std::nullopt;
    const Diagram& root = subdiagram_at(antecedent, base);
    for (const Path& rel : preorder_paths(root)) {
      const Diagram& sub = subdiagram_at(root, rel);
      if (!pred(sub)) continue;
      std::optional<RuleArgs> args = choose(sub);
      if (!args) return std::nullopt;
      Path full = concat(concat({Side::Left}, base), rel);
      return primitive_step(goals, acc,
                            StepRecord{RuleApplication{rule, index, std::move(full), std::move(*args)}, {}});
    }
    return std::nullopt;
  };
}

Tactic then(Tactic first, Tactic second) {
  return [first = std::move(first), second = std::move(second)](
             const ProofState& goals, std::size_t index,
             const TacticResult& acc) -> std::optional<TacticResult> {
    auto r = first(goals, index, acc);
    if (!r) return std::nullopt;
    return second(r->state, index, *r);
  };
}

Tactic orelse(Tactic first, Tactic second) {
  return [first = std::move(first), second = std::move(second)](
             const ProofState& goals, std::size_t index,
             const TacticResult& acc) -> std::optional<TacticResult> {
    if (auto r = first(goals, index, acc)) return r;
    return second(goals, index, acc);
  };
}

Tactic repeat(Tactic t) {
  return [t = std::move(t)](const ProofState& goals, std::size_t index,
                            const TacticResult& acc) -> std::optional<TacticResult> {
    TacticResult current = acc;
    current.state = goals;
    while (true) {
      auto r = t(current.state, index, current);
      if (!r || r->applied.size() == current.applied.size()) break;
      current = std::move(*r);
    }
    return current;
  };
}

Tactic cond(GoalPredicate p, Tactic if_true, Tactic if_false) {
  return [p = std::move(p), if_true = std::move(if_true), if_false = std::move(if_false)](
             const ProofState& goals, std::size_t index, const TacticResult& acc) {
    return p(goals, index) ? if_true(goals, index, acc) : if_false(goals, index, acc);
  };
}

Tactic depth_first(GoalPredicate p, Tactic t) {
  return [p = std::move(p), t = std::move(t)](const ProofState& goals, std::size_t index,
                                              const TacticResult& acc) -> std::optional<TacticResult> {
    TacticResult current = acc;
    current.state = goals;
    while (!p(current.state, index)) {
      auto r = t(current.state, index, current);
      if (!r || r->applied.size() == current.applied.size()) return std::nullopt;
      current = std::move(*r);
    }
    return current;
  };
}

Tactic id() {
  return [](const ProofState&, std::size_t, const TacticResult& acc) -> std::optional<TacticResult> {
    return acc;
  };
}

Tactic fail() {
  return [](const ProofState&, std::size_t, const TacticResult&) -> std::optional<TacticResult> {
    return std::nullopt;
  };
}

Tactic discharge() {
  return [](const ProofState& goals, std::size_t index,
            const TacticResult& acc) -> std::optional<TacticResult> {
    if (index >= goals.subgoals.size() || !goals.subgoals[index].is_trivial()) return std::nullopt;
    return primitive_step(goals, acc, StepRecord{Discharge{index}, {}});
  };
}

GoalPredicate antecedent_is_unitary() {
  return [](const ProofState& goals, std::size_t index) {
    return index < goals.subgoals.size() && goals.subgoals[index].antecedent().is_unitary();
  };
}

std::optional<Path> deepest_unitary_pair(const Diagram& antecedent) {
  auto pairs = unitary_pairs(antecedent);
  if (pairs.empty()) return std::nullopt;
  return pairs.front();
}

Tactic intro_all_shaded_zones() {
  return guarded(repeat(rule_tactic(Rule::IntroduceShadedZone, non_venn_unitary(), first_missing_zone())));
}

Tactic intro_all_shaded_zones_deepest() {
  return guarded([](const ProofState& goals, std::size_t index,
                    const TacticResult& acc) -> std::optional<TacticResult> {
    auto pair = deepest_unitary_pair(goals.subgoals[index].antecedent());
    if (!pair) return std::nullopt;
    return repeat(rule_tactic_at(*pair, Rule::IntroduceShadedZone, non_venn_unitary(),
                                 first_missing_zone()))(goals, index, acc);
  });
}

Tactic intro_all_contours() {
  return guarded([](const ProofState& goals, std::size_t index,
                    const TacticResult& acc) -> std::optional<TacticResult> {
    const ContourSet all = contour_union(goals.subgoals[index].antecedent());
    return repeat(rule_tactic(Rule::IntroduceContour, unitary_lacking_any(all), first_lacking(all)))(
        goals, index, acc);
  });
}

Tactic intro_all_contours_deepest() {
  return guarded([](const ProofState& goals, std::size_t index,
                    const TacticResult& acc) -> std::optional<TacticResult> {
    const Diagram& antecedent = goals.subgoals[index].antecedent();
    auto pair = deepest_unitary_pair(antecedent);
    if (!pair) return std::nullopt;
    const ContourSet all = contour_union(subdiagram_at(antecedent, *pair));
    return repeat(rule_tactic_at(*pair, Rule::IntroduceContour, unitary_lacking_any(all),
                                 first_lacking(all)))(goals, index, acc);
  });
}

Tactic combine_all() {
  Tactic once = rule_tactic(
      Rule::Combine,
      [](const Diagram& d) {
        return is_unitary_pair(d) && d.left().unitary().contours() == d.right().unitary().contours() &&
               d.left().unitary().zones() == d.right().unitary().zones();
      },
      [](const Diagram&) -> std::optional<RuleArgs> { return RuleArgs{std::monostate{}}; });
  return guarded(then(once, repeat(once)));
}

Tactic prepare_copy_shading() {
  return guarded([](const ProofState& goals, std::size_t index,
                    const TacticResult& acc) -> std::optional<TacticResult> {
    Run run(goals, index, acc);
    for (const Path& pair : unitary_pairs(run.antecedent())) {
      if (prepare_shading_at(run, pair)) return run.take();
      if (run.exhausted()) return std::nullopt;
    }
    return std::nullopt;
  });
}

Tactic prepare_copy_contours() {
  return guarded([](const ProofState& goals, std::size_t index,
                    const TacticResult& acc) -> std::optional<TacticResult> {
    Run run(goals, index, acc);
    auto pair = first_pair(run.antecedent(), admits_contour_copy);
    if (!pair || !remove_shaded_zones_at(run, *pair)) return std::nullopt;
    return run.take();
  });
}

Tactic match_conclusion() {
  return guarded([](const ProofState& goals, std::size_t index,
                    const TacticResult& acc) -> std::optional<TacticResult> {
    Run run(goals, index, acc);
    if (!run.antecedent().is_unitary()) return std::nullopt;
    const UnitaryDiagram target = run.subgoal().consequent().unitary();
    const Path root;

    for (const Contour& c : difference(target.contours(), run.unitary_at(root).contours())) {
      if (!run.apply(Rule::IntroduceContour, root, c)) return std::nullopt;
    }
    for (const Contour& c : difference(run.unitary_at(root).contours(), target.contours())) {
      if (!run.apply(Rule::EraseContour, root, c)) return std::nullopt;
    }
    for (const Zone& z : target.zones()) {
      if (run.unitary_at(root).has_zone(z)) continue;
      if (!run.apply(Rule::IntroduceShadedZone, root, z)) return std::nullopt;
    }
    for (const Zone& z : ZoneSet(run.unitary_at(root).shaded())) {
      if (target.has_zone(z) && !target.is_shaded(z)) {
        if (!run.apply(Rule::EraseShading, root, z)) return std::nullopt;
      }
    }
    for (const Zone& z : ZoneSet(run.unitary_at(root).shaded())) {
      if (!target.has_zone(z)) {
        if (!run.apply(Rule::RemoveShadedZone, root, z)) return std::nullopt;
      }
    }
    if (!(run.unitary_at(root) == target)) return std::nullopt;
    return run.take();
  });
}

Tactic copy_contours() {
  return guarded([](const ProofState& goals, std::size_t index,
                    const TacticResult& acc) -> std::optional<TacticResult> {
    Run run(goals, index, acc);
    auto pair = first_pair(run.antecedent(), admits_contour_copy);
    if (!pair || !remove_shaded_zones_at(run, *pair)) return std::nullopt;

    // Alternate directions, one contour at a time, in label order.
    ContourSet rejected;
    bool copied_any = true;
    while (copied_any) {
      copied_any = false;
      for (const Direction& dir : kDirections) {
        const ContourSet candidates =
            difference(difference(run.unitary_at(child_path(*pair, dir.source)).contours(),
                                  run.unitary_at(child_path(*pair, dir.target)).contours()),
                       rejected);
        if (candidates.empty()) continue;
        const Contour c = *candidates.begin();
        if (run.apply(Rule::CopyContour, *pair, CopyContourArgs{dir.copy, c})) {
          copied_any = true;
        } else if (run.exhausted()) {
          return std::nullopt;
        } else {
          rejected.insert(c);
          copied_any = true;
        }
      }
    }
    if (!idempotency_if_identical(run, *pair)) return std::nullopt;
    if (run.added() == 0) return std::nullopt;
    return run.take();
  });
}

Tactic propagate_shading() {
  return guarded([](const ProofState& goals, std::size_t index,
                    const TacticResult& acc) -> std::optional<TacticResult> {
    Run run(goals, index, acc);
    auto pair = first_pair(run.antecedent(), admits_shading_copy);
    if (!pair) return std::nullopt;

    prepare_shading_at(run, *pair);
    if (run.exhausted()) return std::nullopt;
    for (const Direction& dir : kDirections) {
      const ZoneSet targets =
          rules::copyable_shading(run.unitary_at(child_path(*pair, dir.source)),
                                  run.unitary_at(child_path(*pair, dir.target)));
      if (targets.empty()) continue;
      if (!run.apply(Rule::CopyShading, *pair, CopyShadingArgs{dir.copy, targets})) return std::nullopt;
    }
    if (!idempotency_if_identical(run, *pair)) return std::nullopt;
    if (run.added() == 0) return std::nullopt;
    return run.take();
  });
}

Tactic venn_breadth() {
  return guarded(then(intro_all_shaded_zones(),
                      then(intro_all_contours(),
                           then(repeat(combine_all()), then(match_conclusion(), discharge())))));
}

Tactic venn_depth() {
  return guarded(then(depth_first(antecedent_is_unitary(),
                                  then(intro_all_shaded_zones_deepest(),
                                       then(intro_all_contours_deepest(), combine_all()))),
                      then(match_conclusion(), discharge())));
}

Tactic copy_shading_and_contours() {
  return guarded(then(depth_first(antecedent_is_unitary(), orelse(propagate_shading(), copy_contours())),
                      then(match_conclusion(), discharge())));
}

const std::vector<TacticInfo>& registry() {
  static const std::vector<TacticInfo> tactics = {
      {"intro_all_shaded_zones", "Introduce All Shaded Zones", TacticLevel::Low, intro_all_shaded_zones()},
      {"intro_all_shaded_zones_deepest", "Introduce All Shaded Zones (Deepest)", TacticLevel::Low,
       intro_all_shaded_zones_deepest()},
      {"intro_all_contours", "Introduce All Contours", TacticLevel::Low, intro_all_contours()},
      {"intro_all_contours_deepest", "Introduce All Contours (Deepest)", TacticLevel::Low,
       intro_all_contours_deepest()},
      {"combine_all", "Combine All Diagrams", TacticLevel::Low, combine_all()},
      {"prepare_copy_shading", "Prepare for Copy Shading", TacticLevel::Low, prepare_copy_shading()},
      {"prepare_copy_contours", "Prepare for Copy Contours", TacticLevel::Low, prepare_copy_contours()},
      {"match_conclusion", "Match Conclusion", TacticLevel::Low, match_conclusion()},
      {"copy_contours", "Copy Contours", TacticLevel::High, copy_contours()},
      {"propagate_shading", "Propagate Shading", TacticLevel::High, propagate_shading()},
      {"venn_breadth", "Venn (Breadth)", TacticLevel::High, venn_breadth()},
      {"venn_depth", "Venn (Depth)", TacticLevel::High, venn_depth()},
      {"copy_shading_and_contours", "Copy Shading And Contours", TacticLevel::High,
       copy_shading_and_contours()},
  };
  return tactics;
}

const TacticInfo& find_tactic(std::string_view name) {
  for (const auto& info : registry()) {
    if (info.name == name) return info;
  }
  throw EulerError(ErrorCode::UnknownTactic, "unknown tactic '" + std::string(name) + "'");
}

std::optional<Proof> run_tactic(const Proof& proof, std::string_view name, std::size_t goal_index,
                                std::stop_token stop) {
  const TacticInfo& info = find_tactic(name);
  auto limits = std::make_shared<TacticLimits>();
  limits->stop = std::move(stop);
  auto result = info.tactic(proof.current(), goal_index, TacticResult::start(proof.current(), limits));
  if (!result) return std::nullopt;

  const TacticTag tag{info.name, goal_index, proof.states().size() - 1};
  Proof out = proof;
  for (StepRecord step : result->applied) {
    step.provenance = tag;
    out = out.extended(step);
  }
  return out;
}

}  // namespace tactics
}  // namespace euler
