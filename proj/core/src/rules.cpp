#include "euler/rules.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "euler/error.hpp"
#include "euler/semantics.hpp"

namespace euler {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 9> kRuleNames{{
    {Rule::EraseContour, "erase_contour"},
    {Rule::EraseShading, "erase_shading"},
    {Rule::IntroduceContour, "introduce_contour"},
    {Rule::IntroduceShadedZone, "introduce_shaded_zone"},
    {Rule::RemoveShadedZone, "remove_shaded_zone"},
    {Rule::Combine, "combine"},
    {Rule::CopyContour, "copy_contour"},
    {Rule::CopyShading, "copy_shading"},
    {Rule::Idempotency, "idempotency"},
}};

}  // namespace

std::string_view rule_name(Rule rule) noexcept {
  for (const auto& [r, name] : kRuleNames) {
    if (r == rule) return name;
  }
  return "unknown";
}

std::optional<Rule> rule_from_name(std::string_view name) noexcept {
  for (const auto& [r, n] : kRuleNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

bool rule_targets_unitary(Rule rule) noexcept {
  switch (rule) {
    case Rule::EraseContour:
    case Rule::EraseShading:
    case Rule::IntroduceContour:
    case Rule::IntroduceShadedZone:
    case Rule::RemoveShadedZone: return true;
    default: return false;
  }
}

bool is_equivalence_rule(Rule rule) noexcept {
  return rule != Rule::EraseContour && rule != Rule::EraseShading;
}

namespace rules {

UnitaryDiagram erase_contour(const UnitaryDiagram& d, const Contour& c) {
  if (!d.has_contour(c)) {
    throw EulerError(ErrorCode::ContourAbsent, "contour " + c.name() + " is not in the diagram");
  }
  ContourSet contours = d.contours();
  contours.erase(c);
  ZoneSet zones;
  ZoneSet shaded;
  for (const Zone& outside : venn_zones(contours)) {
    const Zone inside = outside.with(c);
    const bool has_out = d.has_zone(outside);
    const bool has_in = d.has_zone(inside);
    if (!has_out && !has_in) continue;
    zones.insert(outside);
    // Missing and shaded both denote emptiness, so the merged zone keeps its
    // shading only when neither half can hold elements.
    if ((!has_out || d.is_shaded(outside)) && (!has_in || d.is_shaded(inside))) {
      shaded.insert(outside);
    }
  }
  return UnitaryDiagram(std::move(contours), std::move(zones), std::move(shaded));
}

UnitaryDiagram erase_shading(const UnitaryDiagram& d, const Zone& z) {
  if (!d.is_shaded(z)) {
    throw EulerError(ErrorCode::ZoneNotShaded, "zone " + zone_to_string(z) + " is not shaded");
  }
  ZoneSet shaded = d.shaded();
  shaded.erase(z);
  return UnitaryDiagram(d.contours(), d.zones(), std::move(shaded));
}

UnitaryDiagram introduce_contour(const UnitaryDiagram& d, const Contour& c) {
  if (d.has_contour(c)) {
    throw EulerError(ErrorCode::ContourAlreadyPresent,
                     "contour " + c.name() + " is already in the diagram");
  }
  ContourSet contours = d.contours();
  contours.insert(c);
  ZoneSet zones;
  ZoneSet shaded;
  for (const Zone& z : d.zones()) {
    const Zone split = z.with(c);
    zones.insert(z);
    zones.insert(split);
    if (d.is_shaded(z)) {
      shaded.insert(z);
      shaded.insert(split);
    }
  }
  return UnitaryDiagram(std::move(contours), std::move(zones), std::move(shaded));
}

UnitaryDiagram introduce_shaded_zone(const UnitaryDiagram& d, const Zone& z) {
  if (!z.subset_of(d.contours()) || d.has_zone(z)) {
    throw EulerError(ErrorCode::ZoneNotMissing, "zone " + zone_to_string(z) + " is not missing");
  }
  ZoneSet zones = d.zones();
  ZoneSet shaded = d.shaded();
  zones.insert(z);
  shaded.insert(z);
  return UnitaryDiagram(d.contours(), std::move(zones), std::move(shaded));
}

UnitaryDiagram remove_shaded_zone(const UnitaryDiagram& d, const Zone& z) {
  if (!d.is_shaded(z)) {
    throw EulerError(ErrorCode::ZoneNotShaded, "zone " + zone_to_string(z) + " is not shaded");
  }
  if (z.is_background()) {
    throw EulerError(ErrorCode::BackgroundZoneProtected, "the background zone cannot be removed");
  }
  ZoneSet zones = d.zones();
  ZoneSet shaded = d.shaded();
  zones.erase(z);
  shaded.erase(z);
  return UnitaryDiagram(d.contours(), std::move(zones), std::move(shaded));
}

UnitaryDiagram combine(const UnitaryDiagram& left, const UnitaryDiagram& right) {
  if (left.contours() != right.contours() || left.zones() != right.zones()) {
    throw EulerError(ErrorCode::ZoneSetMismatch, "combined diagrams must have the same zones");
  }
  ZoneSet shaded = left.shaded();
  shaded.insert(right.shaded().begin(), right.shaded().end());
  return UnitaryDiagram(left.contours(), left.zones(), std::move(shaded));
}

UnitaryDiagram copy_contour(const UnitaryDiagram& src, const UnitaryDiagram& dst, const Contour& c) {
  if (!src.has_contour(c) || dst.has_contour(c)) {
    throw EulerError(ErrorCode::ContourNotCopyable,
                     "contour " + c.name() + " must be in the source and absent from the target");
  }
  ContourSet shared;
  std::set_intersection(src.contours().begin(), src.contours().end(), dst.contours().begin(),
                        dst.contours().end(), std::inserter(shared, shared.end()));

  // For each footprint on the shared contours: does some present source zone
  // with that footprint lie inside c (covers), or outside c (avoids)?
  std::set<Zone> covers;
  std::set<Zone> avoids;
  for (const Zone& z : src.zones()) {
    (z.contains(c) ? covers : avoids).insert(z.restricted_to(shared));
  }

  ZoneSet zones;
  ZoneSet shaded;
  auto keep = [&](const Zone& z, bool is_shaded) {
    zones.insert(z);
    if (is_shaded) shaded.insert(z);
  };
  for (const Zone& z : dst.zones()) {
    const Zone footprint = z.restricted_to(shared);
    const bool in = covers.count(footprint) != 0;
    const bool out = avoids.count(footprint) != 0;
    const bool is_shaded = dst.is_shaded(z);
    if (in || !out) keep(z.with(c), is_shaded);
    if (out || !in) keep(z, is_shaded);
  }
  ContourSet contours = dst.contours();
  contours.insert(c);
  if (zones.count(Zone{}) == 0) {
    throw EulerError(ErrorCode::ContourNotCopyable,
                     "copying " + c.name() + " would remove the background zone");
  }
  UnitaryDiagram result(std::move(contours), std::move(zones), std::move(shaded));

  if (!equivalent(Diagram::conjunction(src, dst), Diagram::conjunction(src, result))) {
    throw EulerError(ErrorCode::ContourNotCopyable,
                     "copying " + c.name() + " would change the meaning of the conjunction");
  }
  return result;
}

namespace {

struct ShadingContext {
  Vocabulary vocabulary;
  CellSet forced;
};

ShadingContext shading_context(const UnitaryDiagram& src, const UnitaryDiagram& dst) {
  ContourSet labels = src.contours();
  labels.insert(dst.contours().begin(), dst.contours().end());
  Vocabulary v(std::move(labels));
  CellSet forced = empty_cells(src, v);
  forced |= empty_cells(dst, v);
  return {std::move(v), std::move(forced)};
}

bool forced_empty(const ShadingContext& ctx, const Zone& z, const ContourSet& contours) {
  const auto cells = cells_of_zone(z, contours, ctx.vocabulary);
  return std::all_of(cells.begin(), cells.end(), [&](Cell cell) { return ctx.forced.contains(cell); });
}

}  // namespace

UnitaryDiagram copy_shading(const UnitaryDiagram& src, const UnitaryDiagram& dst,
                            const ZoneSet& targets) {
  const ShadingContext ctx = shading_context(src, dst);
  for (const Zone& z : targets) {
    if (!dst.has_zone(z) || dst.is_shaded(z)) {
      throw EulerError(ErrorCode::BadArguments,
                       "zone " + zone_to_string(z) + " is not an unshaded zone of the target");
    }
    if (!forced_empty(ctx, z, dst.contours())) {
      throw EulerError(ErrorCode::NotForcedEmpty,
                       "zone " + zone_to_string(z) + " is not forced empty by the conjunction");
    }
  }
  ZoneSet shaded = dst.shaded();
  shaded.insert(targets.begin(), targets.end());
  return UnitaryDiagram(dst.contours(), dst.zones(), std::move(shaded));
}

ZoneSet copyable_shading(const UnitaryDiagram& src, const UnitaryDiagram& dst) {
  const ShadingContext ctx = shading_context(src, dst);
  ZoneSet out;
  for (const Zone& z : dst.zones()) {
    if (!dst.is_shaded(z) && forced_empty(ctx, z, dst.contours())) out.insert(z);
  }
  return out;
}

Diagram idempotency(const Diagram& conjunction) {
  if (!conjunction.is_conjunction()) {
    throw EulerError(ErrorCode::WrongNodeKind, "idempotency applies to a conjunction");
  }
  if (!diagram_equal(conjunction.left(), conjunction.right())) {
    throw EulerError(ErrorCode::ConjunctsDiffer, "the conjuncts are not identical");
  }
  return conjunction.left();
}

namespace {

template <typename T>
const T& expect_args(const RuleArgs& args, Rule rule) {
  if (const T* value = std::get_if<T>(&args)) return *value;
  throw EulerError(ErrorCode::BadArguments,
                   "wrong argument kind for " + std::string(rule_name(rule)));
}

std::pair<const UnitaryDiagram&, const UnitaryDiagram&> unitary_pair(const Diagram& target, Rule rule) {
  if (!target.is_conjunction() || !target.left().is_unitary() || !target.right().is_unitary()) {
    throw EulerError(ErrorCode::WrongNodeKind,
                     std::string(rule_name(rule)) + " applies to a conjunction of two unitary diagrams");
  }
  return {target.left().unitary(), target.right().unitary()};
}

}  // namespace

Diagram apply(const Diagram& target, Rule rule, const RuleArgs& args) {
  if (rule_targets_unitary(rule) && !target.is_unitary()) {
    throw EulerError(ErrorCode::WrongNodeKind,
                     std::string(rule_name(rule)) + " applies to a unitary diagram");
  }
  switch (rule) {
    case Rule::EraseContour: return erase_contour(target.unitary(), expect_args<Contour>(args, rule));
    case Rule::EraseShading: return erase_shading(target.unitary(), expect_args<Zone>(args, rule));
    case Rule::IntroduceContour:
      return introduce_contour(target.unitary(), expect_args<Contour>(args, rule));
    case Rule::IntroduceShadedZone:
      return introduce_shaded_zone(target.unitary(), expect_args<Zone>(args, rule));
    case Rule::RemoveShadedZone:
      return remove_shaded_zone(target.unitary(), expect_args<Zone>(args, rule));
    case Rule::Combine: {
      expect_args<std::monostate>(args, rule);
      auto [left, right] = unitary_pair(target, rule);
      return combine(left, right);
    }
    case Rule::CopyContour: {
      const auto& a = expect_args<CopyContourArgs>(args, rule);
      auto [left, right] = unitary_pair(target, rule);
      if (a.direction == CopyDirection::LeftToRight) {
        return Diagram::conjunction(left, copy_contour(left, right, a.contour));
      }
      return Diagram::conjunction(copy_contour(right, left, a.contour), right);
    }
    case Rule::CopyShading: {
      const auto& a = expect_args<CopyShadingArgs>(args, rule);
      auto [left, right] = unitary_pair(target, rule);
      if (a.direction == CopyDirection::LeftToRight) {
        return Diagram::conjunction(left, copy_shading(left, right, a.targets));
      }
      return Diagram::conjunction(copy_shading(right, left, a.targets), right);
    }
    case Rule::Idempotency:
      expect_args<std::monostate>(args, rule);
      return idempotency(target);
  }
  throw EulerError(ErrorCode::BadArguments, "unknown rule");
}

}  // namespace rules
}  // namespace euler
