#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "checks.hpp"
#include "doctest.h"
#include "euler/error.hpp"
#include "euler/metrics.hpp"
#include "euler/semantics.hpp"
#include "euler/tactics.hpp"
#include "euler/textio.hpp"
#include "testkit.hpp"

using namespace euler;
using testkit::And;
using testkit::C;
using testkit::U;
using testkit::Z;

namespace {

Subgoal transitivity() {
  return Subgoal(And(testkit::subset("A", "B"), testkit::subset("B", "C")), testkit::subset("A", "C"));
}

std::optional<TacticResult> run(const Tactic& t, const Subgoal& g) {
  const ProofState s{{g}};
  return t(s, 0, TacticResult::start(s));
}

std::vector<Rule> rules_of(const TacticResult& r) {
  std::vector<Rule> out;
  for (const auto& s : r.applied) {
    if (const auto* app = std::get_if<RuleApplication>(&s.kind)) out.push_back(app->rule);
  }
  return out;
}

std::vector<Subgoal> corpus(const std::string& kind) {
  std::vector<Subgoal> out;
  for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(EULER_DATA_DIR) / "theorems" / kind)) {
    std::ifstream in(e.path());
    std::ostringstream text;
    text << in.rdbuf();
    out.push_back(textio::parse_theorem(text.str()));
  }
  return out;
}

}  // namespace

TEST_CASE("registry lists thirteen tactics") {
  const auto& reg = tactics::registry();
  CHECK(reg.size() == 13);
  std::set<std::string> names;
  std::size_t high = 0;
  for (const auto& t : reg) {
    names.insert(t.name);
    if (t.level == tactics::TacticLevel::High) ++high;
  }
  CHECK(names.size() == 13);
  CHECK(high == 5);
  CHECK(tactics::find_tactic("venn_depth").title == "Venn (Depth)");
  CHECK_THROWS_AS(tactics::find_tactic("auto"), EulerError);
}

TEST_CASE("basic tacticals") {
  const Subgoal g = transitivity();
  const ProofState s{{g}};
  const auto acc = TacticResult::start(s);
  CHECK(tactics::id()(s, 0, acc) == acc);
  CHECK_FALSE(tactics::fail()(s, 0, acc).has_value());

  const Tactic shade = tactics::rule_tactic(
      Rule::IntroduceShadedZone, [](const Diagram& d) { return d.is_unitary() && !missing_zones(d.unitary()).empty(); },
      [](const Diagram& d) { return std::optional<RuleArgs>(*missing_zones(d.unitary()).begin()); });
  const auto once = shade(s, 0, acc);
  REQUIRE(once.has_value());
  CHECK(once->applied.size() == 1);
  CHECK(std::get<RuleApplication>(once->applied[0].kind).path == Path{Side::Left, Side::Left});

  const auto twice = tactics::then(shade, shade)(s, 0, acc);
  REQUIRE(twice.has_value());
  CHECK(twice->applied.size() == 2);

  const auto all = tactics::repeat(shade)(s, 0, acc);
  REQUIRE(all.has_value());
  CHECK(all->applied.size() == 2);
  CHECK(tactics::orelse(tactics::fail(), shade)(s, 0, acc) == once);
  CHECK(tactics::cond([](const ProofState&, std::size_t) { return false; }, tactics::fail(), shade)(s, 0, acc) == once);

  // Out-of-range subgoals make rule-level tactics fail.
  CHECK_FALSE(shade(s, 1, acc).has_value());
}

TEST_CASE("repeat stops on a cycle once the step budget is spent") {
  const Subgoal g(U("A", {"", "A"}), U("A", {"", "A"}));
  const Tactic erase = tactics::rule_tactic(Rule::EraseContour, [](const Diagram& d) { return d.is_unitary(); },
                                            [](const Diagram& d) -> std::optional<RuleArgs> {
                                              if (d.unitary().contours().empty()) return std::nullopt;
                                              return RuleArgs{*d.unitary().contours().begin()};
                                            });
  const Tactic intro = tactics::rule_tactic(Rule::IntroduceContour, [](const Diagram& d) { return d.is_unitary(); },
                                            [](const Diagram& d) -> std::optional<RuleArgs> {
                                              if (!d.unitary().contours().empty()) return std::nullopt;
                                              return RuleArgs{Contour("A")};
                                            });
  const ProofState s{{g}};
  auto limits = std::make_shared<TacticLimits>();
  limits->max_steps = 10;
  const auto r = tactics::repeat(tactics::orelse(erase, intro))(s, 0, TacticResult::start(s, limits));
  REQUIRE(r.has_value());
  CHECK(r->applied.size() == 10);
}

TEST_CASE("depth_first fails when the tactic stalls") {
  const Subgoal g = transitivity();
  const ProofState s{{g}};
  const auto acc = TacticResult::start(s);
  CHECK_FALSE(tactics::depth_first(tactics::antecedent_is_unitary(), tactics::id())(s, 0, acc).has_value());
  CHECK(tactics::depth_first([](const ProofState&, std::size_t) { return true; }, tactics::fail())(s, 0, acc) == acc);
}

TEST_CASE("low-level tactics on transitivity") {
  const Subgoal g = transitivity();
  const auto shaded = run(tactics::intro_all_shaded_zones(), g);
  REQUIRE(shaded.has_value());
  CHECK(rules_of(*shaded) == std::vector<Rule>(2, Rule::IntroduceShadedZone));

  const auto contours = run(tactics::intro_all_contours(), g);
  REQUIRE(contours.has_value());
  CHECK(rules_of(*contours) == std::vector<Rule>(2, Rule::IntroduceContour));
  const auto& ante = contours->state.subgoals[0].antecedent();
  CHECK(ante.left().unitary().contours() == C("A B C"));
  CHECK(ante.right().unitary().contours() == C("A B C"));

  CHECK_FALSE(run(tactics::combine_all(), g).has_value());
  CHECK_FALSE(run(tactics::match_conclusion(), g).has_value());
}

TEST_CASE("match conclusion rewrites a unitary antecedent into the consequent") {
  const Subgoal g(U("A B", {"", "A", "B"}, {"B"}), U("B", {""}));
  const auto r = run(tactics::match_conclusion(), g);
  REQUIRE(r.has_value());
  CHECK(r->state.subgoals[0].is_trivial());
  CHECK(rules_of(*r) == std::vector<Rule>{Rule::EraseContour, Rule::RemoveShadedZone});
}

TEST_CASE("deepest unitary pair is the leftmost innermost") {
  CHECK(tactics::deepest_unitary_pair(testkit::t_flat().antecedent()) == Path{Side::Left});
  CHECK(tactics::deepest_unitary_pair(testkit::t_deep().antecedent()) == Path{Side::Left, Side::Right});
  CHECK_FALSE(tactics::deepest_unitary_pair(U("A", {""})).has_value());
}

TEST_CASE("venn_depth proves transitivity step by step") {
  const auto p = tactics::run_tactic(Proof(transitivity()), "venn_depth", 0);
  REQUIRE(p.has_value());
  CHECK(is_finished(*p));
  std::vector<std::string> lines;
  for (const auto& s : p->steps()) lines.push_back(textio::print_step(s));
  CHECK(lines == std::vector<std::string>{
                     "apply introduce_shaded_zone at 0 L/L (A)",
                     "apply introduce_shaded_zone at 0 L/R (B)",
                     "apply introduce_contour at 0 L/L C",
                     "apply introduce_contour at 0 L/R A",
                     "apply combine at 0 L",
                     "apply erase_contour at 0 L B",
                     "apply remove_shaded_zone at 0 L (A)",
                     "discharge 0",
                 });
  for (const auto& s : p->steps()) {
    REQUIRE(s.provenance.has_value());
    CHECK(s.provenance->name == "venn_depth");
    CHECK(s.provenance->invocation == 0);
  }
}

TEST_CASE("tactics require a unitary consequent") {
  const Diagram a = U("A", {"", "A"});
  const Subgoal g(And(a, a), And(a, a));
  for (const auto& info : tactics::registry()) {
    CAPTURE(info.name);
    CHECK_FALSE(run(info.tactic, g).has_value());
  }
}

TEST_CASE("run_tactic honours cancellation") {
  std::stop_source stop;
  stop.request_stop();
  CHECK_FALSE(tactics::run_tactic(Proof(testkit::t_flat()), "venn_depth", 0, stop.get_token()).has_value());
  CHECK_THROWS_AS(tactics::run_tactic(Proof(testkit::t_flat()), "nope", 0), EulerError);
}

TEST_CASE("high-level tactics on the benchmark theorems") {
  const auto flat = Proof(testkit::t_flat());
  const auto deep = Proof(testkit::t_deep());
  for (const char* name : {"venn_breadth", "venn_depth", "copy_shading_and_contours"}) {
    CAPTURE(name);
    const auto pf = tactics::run_tactic(flat, name, 0);
    const auto pd = tactics::run_tactic(deep, name, 0);
    REQUIRE(pf.has_value());
    REQUIRE(pd.has_value());
    CHECK(is_finished(*pf));
    CHECK(is_finished(*pd));
  }
  const auto breadth = metrics::proof_metrics(*tactics::run_tactic(flat, "venn_breadth", 0));
  const auto depth = metrics::proof_metrics(*tactics::run_tactic(flat, "venn_depth", 0));
  CHECK(depth.length < breadth.length);
  CHECK(depth.total_clutter < breadth.total_clutter);
  const auto t13_flat = metrics::proof_metrics(*tactics::run_tactic(flat, "copy_shading_and_contours", 0));
  const auto t13_deep = metrics::proof_metrics(*tactics::run_tactic(deep, "copy_shading_and_contours", 0));
  CHECK(t13_flat.length < t13_deep.length);
  CHECK(t13_flat.max_clutter < t13_deep.max_clutter);
}

TEST_CASE("copy_contours and propagate_shading preserve meaning") {
  const Subgoal g = testkit::t_flat();
  for (const Tactic& t : {tactics::copy_contours(), tactics::propagate_shading(), tactics::prepare_copy_shading(),
                          tactics::prepare_copy_contours()}) {
    const auto r = run(t, g);
    if (!r) continue;
    CHECK(equivalent(g.antecedent(), r->state.subgoals[0].antecedent()));
  }
  const auto copied = run(tactics::copy_contours(), g);
  REQUIRE(copied.has_value());
  for (Rule r : rules_of(*copied)) CHECK((r == Rule::CopyContour || r == Rule::Idempotency || r == Rule::RemoveShadedZone));
}

TEST_CASE("high-level tactics finish exactly the valid theorems of the corpus") {
  const auto valid = corpus("valid");
  const auto invalid = corpus("invalid");
  REQUIRE(valid.size() >= 10);
  REQUIRE(invalid.size() >= 5);
  for (const char* name : {"venn_breadth", "venn_depth", "copy_shading_and_contours"}) {
    CAPTURE(name);
    for (const auto& g : valid) {
      const auto p = tactics::run_tactic(Proof(g), name, 0);
      CAPTURE(textio::print_theorem(g));
      REQUIRE(p.has_value());
      CHECK(is_finished(*p));
    }
    for (const auto& g : invalid) {
      const auto p = tactics::run_tactic(Proof(g), name, 0);
      CHECK_FALSE((p.has_value() && is_finished(*p)));
    }
  }
}

TEST_CASE("tactical laws over random pairs") {
  const auto r = testkit::tactical_laws(3, 300);
  INFO((r.samples.empty() ? std::string() : r.samples.front()));
  CHECK(r.failures == 0);
  CHECK(r.positives > 0);
}
