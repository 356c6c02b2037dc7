#pragma once

// Builders, generators and reference oracles shared by the unit tests, the
// acceptance suite and the benchmarks.
//
// The oracles do not use the semantics module. A model assigns emptiness to
// every cell of a vocabulary; it satisfies a unitary diagram when each
// non-empty cell projects onto a present, unshaded zone.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "euler/diagram.hpp"
#include "euler/engine.hpp"

namespace testkit {

using euler::ContourSet;
using euler::Diagram;
using euler::UnitaryDiagram;
using euler::Zone;
using euler::ZoneSet;

/// Zone from space-separated labels; "" is the background.
Zone Z(const std::string& labels);
ContourSet C(const std::string& labels);
/// U("A B", {"", "A", "A B"}, {"A"})
UnitaryDiagram U(const std::string& contours, const std::vector<std::string>& zones,
                 const std::vector<std::string>& shaded = {});
Diagram And(Diagram l, Diagram r);

// Fixed theorems.
UnitaryDiagram subset(const std::string& inner, const std::string& outer);
UnitaryDiagram disjoint(const std::string& a, const std::string& b);
UnitaryDiagram benchmark_conclusion();
euler::Subgoal t_flat();
euler::Subgoal t_deep();
/// Three contours, four of eight zones present, one shaded.
UnitaryDiagram fig1_d1();

// Generators.
/// Every unitary diagram whose contours are a subset of `labels` (at most 3).
std::vector<UnitaryDiagram> all_unitaries(const ContourSet& labels);
UnitaryDiagram random_unitary(std::mt19937_64& rng, const ContourSet& contours);
/// Random unitary with exactly `n` contours drawn from `pool`.
UnitaryDiagram random_unitary(std::mt19937_64& rng, const ContourSet& pool, std::size_t n);
/// Random conjunction tree with up to `max_leaves` leaves over subsets of `pool`.
Diagram random_compound(std::mt19937_64& rng, const ContourSet& pool, std::size_t max_leaves);

// Oracles.
/// Vocabulary of both diagrams, sorted.
std::vector<euler::Contour> joint_vocabulary(const Diagram& a, const Diagram& b);
/// Bit i set iff cell i (mask over `vocab`) may be non-empty.
std::uint64_t allowed_cells(const Diagram& d, const std::vector<euler::Contour>& vocab);
/// Model-by-model check over every emptiness assignment; vocabulary of at most 3 labels.
bool brute_force_entails(const Diagram& premise, const Diagram& conclusion);
/// Inclusion of allowed cells; equivalent to brute force, usable for up to 6 labels.
bool cell_entails(const Diagram& premise, const Diagram& conclusion);
bool cell_equivalent(const Diagram& a, const Diagram& b);

}  // namespace testkit
