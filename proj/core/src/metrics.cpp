#include "euler/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "euler/error.hpp"

namespace euler {

Rational Rational::of(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw EulerError(ErrorCode::BadArguments, "zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

namespace metrics {

std::uint64_t clutter(const UnitaryDiagram& d) { return d.zones().size() + d.shaded().size(); }

std::uint64_t clutter(const Diagram& d) {
  if (d.is_unitary()) return clutter(d.unitary());
  return clutter(d.left()) + clutter(d.right());
}

std::uint64_t clutter(const ProofState& s, ClutterScope scope) {
  std::uint64_t total = 0;
  for (const auto& g : s.subgoals) {
    total += clutter(g.antecedent());
    if (scope == ClutterScope::WholeGoal) total += clutter(g.consequent());
  }
  return total;
}

ProofMetrics proof_metrics(const Proof& p, ClutterScope scope) {
  ProofMetrics m;
  m.length = p.steps().size();
  std::uint64_t previous = 0;
  bool first = true;
  for (const auto& state : p.states()) {
    const std::uint64_t c = clutter(state, scope);
    m.total_clutter += c;
    m.max_clutter = std::max(m.max_clutter, c);
    if (!first) m.max_velocity = std::max(m.max_velocity, c > previous ? c - previous : previous - c);
    previous = c;
    first = false;
  }
  m.average_clutter = Rational::of(m.total_clutter, p.states().size());
  return m;
}

}  // namespace metrics
}  // namespace euler
