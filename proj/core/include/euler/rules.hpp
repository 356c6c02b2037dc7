#pragma once

// The diagrammatic inference rules plus idempotency.
//
// Each rule is a total function with explicit preconditions; violations throw
// EulerError with the rule's error code. Rules are applied backwards to the
// antecedent of a goal, so every rule's result must be entailed by its input.

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>

#include "euler/diagram.hpp"

namespace euler {

enum class Rule : std::uint8_t {
  EraseContour,
  EraseShading,
  IntroduceContour,
  IntroduceShadedZone,
  RemoveShadedZone,
  Combine,
  CopyContour,
  CopyShading,
  Idempotency,
};

inline constexpr Rule kAllRules[] = {
    Rule::EraseContour,     Rule::EraseShading, Rule::IntroduceContour,
    Rule::IntroduceShadedZone, Rule::RemoveShadedZone, Rule::Combine,
    Rule::CopyContour,      Rule::CopyShading,  Rule::Idempotency,
};

std::string_view rule_name(Rule rule) noexcept;
std::optional<Rule> rule_from_name(std::string_view name) noexcept;

/// Rules 1-5 rewrite a unitary leaf; the rest rewrite a conjunction.
bool rule_targets_unitary(Rule rule) noexcept;
/// Rules 3-9 preserve meaning exactly; 1-2 drop information.
bool is_equivalence_rule(Rule rule) noexcept;

enum class CopyDirection : std::uint8_t { LeftToRight, RightToLeft };

struct CopyContourArgs {
  CopyDirection direction;
  Contour contour;
  friend bool operator==(const CopyContourArgs&, const CopyContourArgs&) = default;
};

struct CopyShadingArgs {
  CopyDirection direction;
  ZoneSet targets;
  friend bool operator==(const CopyShadingArgs&, const CopyShadingArgs&) = default;
};

/// monostate for Combine/Idempotency, Contour for rules 1 and 3, Zone for
/// rules 2, 4 and 5.
using RuleArgs = std::variant<std::monostate, Contour, Zone, CopyContourArgs, CopyShadingArgs>;

/// One backward rule step: which rule, which subgoal, and where inside it.
/// `path` is relative to the goal, so it must start with Left (antecedent).
struct RuleApplication {
  Rule rule;
  std::size_t goal_index = 0;
  Path path;
  RuleArgs args;
  friend bool operator==(const RuleApplication&, const RuleApplication&) = default;
};

namespace rules {

UnitaryDiagram erase_contour(const UnitaryDiagram& d, const Contour& c);
UnitaryDiagram erase_shading(const UnitaryDiagram& d, const Zone& z);
UnitaryDiagram introduce_contour(const UnitaryDiagram& d, const Contour& c);
UnitaryDiagram introduce_shaded_zone(const UnitaryDiagram& d, const Zone& z);
UnitaryDiagram remove_shaded_zone(const UnitaryDiagram& d, const Zone& z);
UnitaryDiagram combine(const UnitaryDiagram& left, const UnitaryDiagram& right);

/// Places `c` from `src` into `dst` following the zones of `src` that share
/// `dst`'s contours. Rejected with ContourNotCopyable unless the conjunction
/// keeps its meaning.
UnitaryDiagram copy_contour(const UnitaryDiagram& src, const UnitaryDiagram& dst, const Contour& c);

/// Shades `targets` in `dst`; every target must be forced empty by the
/// conjunction of `src` and `dst`.
UnitaryDiagram copy_shading(const UnitaryDiagram& src, const UnitaryDiagram& dst,
                            const ZoneSet& targets);

/// The largest target set copy_shading accepts for this pair.
ZoneSet copyable_shading(const UnitaryDiagram& src, const UnitaryDiagram& dst);

Diagram idempotency(const Diagram& conjunction);

/// Applies `rule` to the node it targets and returns the replacement subtree.
Diagram apply(const Diagram& target, Rule rule, const RuleArgs& args);

}  // namespace rules
}  // namespace euler
