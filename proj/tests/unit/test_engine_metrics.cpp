#include "doctest.h"
#include "euler/engine.hpp"
#include "euler/error.hpp"
#include "euler/metrics.hpp"
#include "testkit.hpp"

using namespace euler;
using testkit::And;
using testkit::U;
using testkit::Z;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const EulerError& e) {
    return e.code();
  }
  FAIL("expected an EulerError");
  return ErrorCode::BadArguments;
}

StepRecord rule_step(Rule r, std::size_t goal, Path path, RuleArgs args) {
  return StepRecord{RuleApplication{r, goal, std::move(path), std::move(args)}, {}};
}

// {A: (), (A) shaded} |- {A: ()}
Subgoal shaded_to_missing() { return Subgoal(U("A", {"", "A"}, {"A"}), U("A", {""})); }

}  // namespace

TEST_CASE("subgoals are implications") {
  const Diagram a = U("A", {"", "A"});
  CHECK(code_of([&] { Subgoal{a}; }) == ErrorCode::MalformedGoal);
  const Subgoal g(a, a);
  CHECK(g.is_trivial());
  CHECK(g.in_tactic_form());
  CHECK_FALSE(Subgoal(And(a, a), a).is_trivial());
  CHECK_FALSE(Subgoal(a, And(a, a)).in_tactic_form());
}

TEST_CASE("rules apply inside the antecedent only") {
  const Proof p(shaded_to_missing());
  CHECK(code_of([&] { apply_step(p.current(), rule_step(Rule::RemoveShadedZone, 0, {Side::Right}, Z("A"))); }) ==
        ErrorCode::ConsequentTargeted);
  CHECK(code_of([&] { apply_step(p.current(), rule_step(Rule::RemoveShadedZone, 0, {}, Z("A"))); }) ==
        ErrorCode::ConsequentTargeted);
  CHECK(code_of([&] { apply_step(p.current(), rule_step(Rule::RemoveShadedZone, 1, {Side::Left}, Z("A"))); }) ==
        ErrorCode::BadIndex);
  CHECK(code_of([&] {
          apply_step(p.current(), rule_step(Rule::RemoveShadedZone, 0, {Side::Left, Side::Left}, Z("A")));
        }) == ErrorCode::InvalidPath);
  CHECK(code_of([&] { apply_step(p.current(), StepRecord{Discharge{0}, {}}); }) == ErrorCode::NotTrivial);
}

TEST_CASE("a proof is the list of its states") {
  const Proof p0 = new_proof(shaded_to_missing());
  const Proof p1 = apply_rule(p0, RuleApplication{Rule::RemoveShadedZone, 0, {Side::Left}, Z("A")});
  CHECK(p1.current().subgoals.front().is_trivial());
  const Proof p2 = discharge_trivial(p1, 0);
  CHECK(is_finished(p2));
  CHECK(p2.states().size() == 3);
  CHECK(p2.steps().size() == 2);
  CHECK(p0.steps().empty());  // earlier proofs are untouched

  const Proof back = undo_to(p2, 1);
  CHECK(back.states().size() == 2);
  CHECK(back.current() == p1.current());
  CHECK(undo_to(p2, 0).steps().empty());
  CHECK(code_of([&] { undo_to(p2, 3); }) == ErrorCode::BadIndex);

  const Proof again = replay(p2.theorem(), p2.steps());
  CHECK(again.states() == p2.states());
}

TEST_CASE("a failed step leaves the proof unchanged") {
  const Proof p(shaded_to_missing());
  CHECK_THROWS_AS(p.extended(rule_step(Rule::EraseShading, 0, {Side::Left}, Z(""))), EulerError);
  CHECK(p.steps().empty());
  CHECK(p.states().size() == 1);
}

TEST_CASE("discharge removes a subgoal and shifts the rest") {
  const Diagram a = U("A", {"", "A"});
  const Diagram b = U("B", {"", "B"});
  ProofState s{{Subgoal(a, a), Subgoal(And(a, b), b)}};
  const ProofState next = apply_step(s, StepRecord{Discharge{0}, {}});
  REQUIRE(next.subgoals.size() == 1);
  CHECK(next.subgoals[0] == Subgoal(And(a, b), b));
}

TEST_CASE("clutter counts zones and shaded zones") {
  CHECK(metrics::clutter(testkit::fig1_d1()) == 5);
  CHECK(metrics::clutter(U("", {""})) == 1);
  const Diagram pair = And(testkit::fig1_d1(), U("A", {"", "A"}, {"", "A"}));
  CHECK(metrics::clutter(pair) == 9);
  const ProofState s{{shaded_to_missing()}};
  CHECK(metrics::clutter(s) == 4);
  CHECK(metrics::clutter(s, ClutterScope::AntecedentOnly) == 3);
}

TEST_CASE("rationals are kept in lowest terms") {
  CHECK(Rational::of(6, 4) == Rational{3, 2});
  CHECK(Rational::of(0, 5) == Rational{0, 1});
}

TEST_CASE("proof metrics of a two-step proof") {
  Proof p(shaded_to_missing());
  p = p.extended(rule_step(Rule::RemoveShadedZone, 0, {Side::Left}, Z("A")));
  p = p.extended(StepRecord{Discharge{0}, {}});
  // State clutter: 3 + 1, then 1 + 1, then nothing.
  const auto m = metrics::proof_metrics(p);
  CHECK(m.length == 2);
  CHECK(m.total_clutter == 6);
  CHECK(m.average_clutter == Rational{2, 1});
  CHECK(m.max_velocity == 2);
  CHECK(m.max_clutter == 4);

  const auto a = metrics::proof_metrics(p, ClutterScope::AntecedentOnly);
  CHECK(a.total_clutter == 4);
  CHECK(a.average_clutter == Rational{4, 3});
  CHECK(a.max_velocity == 2);
  CHECK(a.max_clutter == 3);

  const auto empty = metrics::proof_metrics(Proof(shaded_to_missing()));
  CHECK(empty.length == 0);
  CHECK(empty.total_clutter == 4);
  CHECK(empty.max_velocity == 0);
}
