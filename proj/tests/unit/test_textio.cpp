#include "checks.hpp"
#include "doctest.h"
#include "euler/error.hpp"
#include "euler/metrics.hpp"
#include "euler/tactics.hpp"
#include "euler/textio.hpp"
#include "testkit.hpp"

using namespace euler;
using testkit::And;
using testkit::U;
using testkit::Z;

namespace {

template <typename E>
E caught(auto&& f) {
  try {
    f();
  } catch (const E& e) {
    return e;
  }
  FAIL("expected an exception");
  throw std::logic_error("unreachable");
}

const char* kTransitivity =
    "({contours: A B; zones: () (B) (A B); shaded:} & {contours: B C; zones: () (C) (B C); shaded:})\n"
    "|- {contours: A C; zones: () (C) (A C); shaded:}";

}  // namespace

TEST_CASE("parse a unitary diagram") {
  const Diagram d = textio::parse_diagram("{contours: A B; zones: () (A) (A B); shaded: (A)}");
  CHECK(d == Diagram(U("A B", {"", "A", "A B"}, {"A"})));
  CHECK(textio::parse_diagram("{contours:; zones: (); shaded:}") == Diagram(U("", {""})));
  // Whitespace, comments and label order do not matter.
  CHECK(textio::parse_diagram("# d\n{ contours: B A ;zones:(B A)() ; shaded: }") ==
        Diagram(U("A B", {"", "A B"})));
}

TEST_CASE("parse conjunctions and theorems") {
  const Diagram d = textio::parse_diagram("({contours: A; zones: (); shaded:} & {contours: B; zones: () (B); shaded:})");
  CHECK(d == And(U("A", {""}), U("B", {"", "B"})));
  const Subgoal g = textio::parse_theorem(kTransitivity);
  CHECK(g.consequent() == Diagram(testkit::subset("A", "C")));
  CHECK(textio::parse_path("L/R/R") == Path{Side::Left, Side::Right, Side::Right});
  CHECK(textio::parse_path("-").empty());
}

TEST_CASE("semantic errors carry the span of the offending zone") {
  const std::string text = "{contours: A; zones: () (B); shaded:}";
  const auto e = caught<ParseError>([&] { textio::parse_diagram(text); });
  CHECK(e.code() == ErrorCode::SemanticError);
  CHECK(text.substr(e.span().start, e.span().end - e.span().start) == "(B)");
  CHECK(e.span().line == 1);
  CHECK(e.span().column == 25);

  CHECK(caught<ParseError>([] { textio::parse_diagram("{contours: A; zones: (A); shaded:}"); }).code() ==
        ErrorCode::SemanticError);
  CHECK(caught<ParseError>([] { textio::parse_diagram("{contours: A; zones: (); shaded: (A)}"); }).code() ==
        ErrorCode::SemanticError);
}

TEST_CASE("syntax errors point at the unexpected token") {
  const auto e = caught<ParseError>([] { textio::parse_diagram("{contours: A;\n  zones () ; shaded:}"); });
  CHECK(e.code() == ErrorCode::SyntaxError);
  CHECK(e.span().line == 2);
  CHECK(e.span().column == 9);
  CHECK(caught<ParseError>([] { textio::parse_diagram("{contours: A; zones: (); shaded:} extra"); }).code() ==
        ErrorCode::SyntaxError);
  CHECK(caught<ParseError>([] { textio::parse_diagram("({contours:; zones: (); shaded:})"); }).code() ==
        ErrorCode::SyntaxError);
  CHECK(caught<ParseError>([] { textio::parse_diagram("{contours: A$; zones: (); shaded:}"); }).span().column == 13);
  CHECK(caught<ParseError>([] { textio::parse_path("L/X"); }).code() == ErrorCode::SyntaxError);
}

TEST_CASE("printing is canonical") {
  const Diagram d = And(U("B A", {"A B", "", "B"}, {"B"}), U("", {""}, {""}));
  CHECK(textio::print_diagram(d) ==
        "({contours: A B; zones: () (B) (A B); shaded: (B)} & {contours:; zones: (); shaded: ()})");
  const Subgoal g = textio::parse_theorem(kTransitivity);
  CHECK(textio::parse_theorem(textio::print_theorem(g)) == g);
}

TEST_CASE("every step kind has a surface form") {
  const std::vector<StepRecord> steps{
      {RuleApplication{Rule::EraseContour, 0, {Side::Left}, Contour("A")}, {}},
      {RuleApplication{Rule::EraseShading, 1, {Side::Left, Side::Right}, Z("A B")}, {}},
      {RuleApplication{Rule::IntroduceContour, 0, {Side::Left}, Contour("Q")}, {}},
      {RuleApplication{Rule::IntroduceShadedZone, 0, {Side::Left}, Z("")}, {}},
      {RuleApplication{Rule::RemoveShadedZone, 0, {Side::Left}, Z("A")}, {}},
      {RuleApplication{Rule::Combine, 0, {Side::Left}, std::monostate{}}, {}},
      {RuleApplication{Rule::CopyContour, 0, {Side::Left}, CopyContourArgs{CopyDirection::RightToLeft, Contour("C")}},
       {}},
      {RuleApplication{Rule::CopyShading, 0, {Side::Left},
                       CopyShadingArgs{CopyDirection::LeftToRight, {Z("A"), Z("A B")}}},
       {}},
      {RuleApplication{Rule::Idempotency, 0, {Side::Left}, std::monostate{}}, {}},
      {Discharge{2}, {}},
  };
  std::string text = std::string("theorem t : ") + kTransitivity + "\n";
  for (const auto& s : steps) text += textio::print_step(s) + "\n";
  const auto script = textio::parse_script(text);
  REQUIRE(script.entries.size() == steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    CHECK(std::get<textio::ScriptStep>(script.entries[i]).step == steps[i]);
  }
  CHECK(textio::print_step(steps[7]) == "apply copy_shading at 0 L ltr (A) (A B)");
}

TEST_CASE("save and load a tactic proof") {
  const auto proof = tactics::run_tactic(Proof(testkit::t_flat()), "venn_depth", 0);
  REQUIRE(proof.has_value());
  const std::string text = textio::save_script(*proof, "t_flat");
  CHECK(text.rfind("theorem t_flat : ", 0) == 0);
  CHECK(text.find("tactic venn_depth at 0 {") != std::string::npos);

  const Proof loaded = textio::load_script(text);
  CHECK(loaded.steps() == proof->steps());
  CHECK(metrics::proof_metrics(loaded) == metrics::proof_metrics(*proof));
  CHECK(is_finished(loaded));

  const Proof strict = textio::load_script(text, {textio::ScriptAuthority::Steps, true});
  CHECK(strict.steps() == proof->steps());
  const Proof rerun = textio::load_script(text, {textio::ScriptAuthority::Tactics, false});
  CHECK(rerun.steps() == proof->steps());
}

TEST_CASE("tactic invocations without recorded steps are re-run") {
  const std::string text = std::string("theorem t : ") + kTransitivity + "\ntactic venn_depth at 0\n";
  const Proof p = textio::load_script(text);
  CHECK(is_finished(p));
  CHECK(p.steps().size() == 8);
}

TEST_CASE("an empty script is a fresh proof") {
  const Proof p = textio::load_script(std::string("theorem t : ") + kTransitivity);
  CHECK(p.steps().empty());
  CHECK(p.current().subgoals.size() == 1);
}

TEST_CASE("replay reports the first rejected step") {
  const std::string text = std::string("theorem t : ") + kTransitivity +
                           "\napply introduce_shaded_zone at 0 L/L (A)\n"
                           "apply introduce_shaded_zone at 3 L/R (B)\n";
  const auto e = caught<ReplayFailure>([&] { textio::load_script(text); });
  CHECK(e.step_number() == 2);
  CHECK(e.cause() == ErrorCode::BadIndex);
  CHECK(e.span().line == 4);
  CHECK(e.span().column == 1);
}

TEST_CASE("strict replay rejects a tampered tactic block") {
  const std::string text = std::string("theorem t : ") + kTransitivity +
                           "\ntactic venn_depth at 0 {\n"
                           "  apply introduce_shaded_zone at 0 L/R (B)\n"
                           "  apply introduce_shaded_zone at 0 L/L (A)\n"
                           "}\n";
  // The recorded steps are valid on their own.
  CHECK(textio::load_script(text).steps().size() == 2);
  const auto e = caught<ReplayFailure>([&] { textio::load_script(text, {textio::ScriptAuthority::Steps, true}); });
  CHECK(e.step_number() == 1);
  CHECK(e.cause() == ErrorCode::ReplayError);
}

TEST_CASE("scripts with syntax errors are rejected before replay") {
  CHECK(caught<ParseError>([] { textio::parse_script("theorem : x"); }).code() == ErrorCode::SyntaxError);
  CHECK(caught<ParseError>([] {
          textio::parse_script(std::string("theorem t : ") + kTransitivity + "\napply fly at 0 L");
        }).code() == ErrorCode::SyntaxError);
}

TEST_CASE("round-trips over generated diagrams") {
  const auto r = testkit::diagram_roundtrip(5, 300);
  INFO((r.samples.empty() ? std::string() : r.samples.front()));
  CHECK(r.failures == 0);
  CHECK(r.checked == 368);
}
