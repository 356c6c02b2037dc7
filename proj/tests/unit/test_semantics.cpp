#include "checks.hpp"
#include "doctest.h"
#include "euler/error.hpp"
#include "euler/semantics.hpp"
#include "testkit.hpp"

using namespace euler;
using testkit::And;
using testkit::C;
using testkit::U;
using testkit::Z;

TEST_CASE("vocabulary indexes labels in sorted order") {
  const Vocabulary v(C("C A B"));
  CHECK(v.size() == 3);
  CHECK(v.cell_count() == 8);
  CHECK(v.index_of(Contour("A")) == 0u);
  CHECK(v.index_of(Contour("C")) == 2u);
  CHECK_FALSE(v.index_of(Contour("D")).has_value());
  CHECK(v.mask_of(C("A C")) == 0b101u);
  CHECK(v.labels_of(0b110) == C("B C"));
  CHECK_THROWS_AS(v.mask_of(C("D")), EulerError);

  ContourSet many;
  for (int i = 0; i < 21; ++i) many.insert(Contour("L" + std::to_string(i)));
  CHECK_THROWS_AS(Vocabulary{many}, EulerError);
}

TEST_CASE("a zone covers every cell that projects onto it") {
  const Vocabulary v(C("A B C"));
  const auto cells = cells_of_zone(Z("A"), C("A B"), v);
  // (A) over {A, B} spreads to (A) and (A C) over {A, B, C}.
  REQUIRE(cells.size() == 2);
  CHECK(v.labels_of(cells[0].mask) == C("A"));
  CHECK(v.labels_of(cells[1].mask) == C("A C"));
}

TEST_CASE("missing and shaded zones are forced empty") {
  const Vocabulary v(C("A B"));
  const auto empty = empty_cells(U("A B", {"", "A", "B"}, {"B"}), v);
  CHECK(empty.count() == 2);
  CHECK(empty.contains(Cell{v.mask_of(C("A B"))}));
  CHECK(empty.contains(Cell{v.mask_of(C("B"))}));
  CHECK_FALSE(empty.contains(Cell{v.mask_of(C("A"))}));
  CHECK_THROWS_AS(empty_cells(Diagram::implication(U("A", {""}), U("A", {""})), v), EulerError);
}

TEST_CASE("entailment examples") {
  const Diagram a_in_b = testkit::subset("A", "B");
  const Diagram b_in_c = testkit::subset("B", "C");
  const Diagram a_in_c = testkit::subset("A", "C");
  CHECK(entails(And(a_in_b, b_in_c), a_in_c));
  CHECK_FALSE(entails(a_in_b, a_in_c));
  CHECK(entails(a_in_b, U("", {""})));
  CHECK(equivalent(U("A", {"", "A"}, {"A"}), U("A", {""})));
  CHECK_FALSE(equivalent(U("A", {"", "A"}), U("A", {""})));
  CHECK(goal_valid(testkit::t_flat().goal()));
  CHECK(goal_valid(testkit::t_deep().goal()));
  CHECK_THROWS_AS(goal_valid(a_in_b), EulerError);
}

TEST_CASE("witness cells name a counterexample region") {
  const Diagram unshaded = U("A", {"", "A"});
  const Diagram shaded = U("A", {"", "A"}, {"A"});
  CHECK(entailment_witness(unshaded, shaded) == C("A"));
  CHECK_FALSE(entailment_witness(shaded, unshaded).has_value());

  // (A) in the conclusion is empty; the premise leaves A outside B possible.
  const auto w = entailment_witness(testkit::subset("B", "A"), testkit::subset("A", "B"));
  REQUIRE(w.has_value());
  CHECK(*w == C("A"));
}

TEST_CASE("the cell oracle agrees with model enumeration") {
  const auto a_in_b = testkit::subset("A", "B");
  CHECK(testkit::brute_force_entails(a_in_b, U("A B", {"", "A", "B", "A B"}, {"A"})));
  CHECK_FALSE(testkit::brute_force_entails(U("A", {"", "A"}), U("A", {""})));

  const auto r = testkit::entailment_agreement(7, 2000);
  INFO((r.samples.empty() ? std::string() : r.samples.front()));
  CHECK(r.failures == 0);
  CHECK(r.positives > 100);
  CHECK(r.positives < r.checked - 100);
}

TEST_CASE("semantics scales to a wide vocabulary") {
  ContourSet labels;
  ZoneSet zones{Zone{}};
  for (int i = 0; i < 12; ++i) {
    const Contour c("X" + std::to_string(i));
    labels.insert(c);
    zones.insert(Zone({c}));
  }
  const UnitaryDiagram wide(labels, zones);
  CHECK(entails(wide, U("X0 X1", {"", "X0", "X1"})));
}
