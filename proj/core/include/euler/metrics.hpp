#pragma once

// Readability metrics for proofs. Clutter of a unitary diagram is its number
// of present zones plus its number of shaded zones.

#include <cstdint>

#include "euler/diagram.hpp"
#include "euler/engine.hpp"

namespace euler {

/// Exact non-negative fraction in lowest terms.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational of(std::uint64_t num, std::uint64_t den);
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class ClutterScope {
  WholeGoal,       ///< antecedents and consequents
  AntecedentOnly,
};

struct ProofMetrics {
  std::size_t length = 0;
  std::uint64_t total_clutter = 0;
  Rational average_clutter;
  std::uint64_t max_velocity = 0;
  /// Largest single-state clutter.
  std::uint64_t max_clutter = 0;

  friend bool operator==(const ProofMetrics&, const ProofMetrics&) = default;
};

namespace metrics {

std::uint64_t clutter(const UnitaryDiagram& d);
std::uint64_t clutter(const Diagram& d);
std::uint64_t clutter(const ProofState& s, ClutterScope scope = ClutterScope::WholeGoal);
ProofMetrics proof_metrics(const Proof& p, ClutterScope scope = ClutterScope::WholeGoal);

}  // namespace metrics
}  // namespace euler
