#pragma once

// Abstract syntax of conjunctive Euler diagrams.
//
// Zones are identified by their in-set. A unitary diagram stores its contours,
// its present zones and the shaded subset of those; missing zones are derived.
// Compound diagrams are immutable binary trees that share structure.

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace euler {

/// A contour label matching `[A-Za-z][A-Za-z0-9_]*`.
class Contour {
 public:
  explicit Contour(std::string name);

  const std::string& name() const noexcept { return name_; }

  static bool is_valid_name(std::string_view name) noexcept;

  friend auto operator<=>(const Contour&, const Contour&) = default;
  friend bool operator==(const Contour&, const Contour&) = default;

 private:
  std::string name_;
};

using ContourSet = std::set<Contour>;

/// A zone, named by the contours it lies inside. The default zone is the
/// background. Zones order by cardinality first, then lexicographically.
class Zone {
 public:
  Zone() = default;
  explicit Zone(ContourSet in_set) : in_set_(std::move(in_set)) {}

  const ContourSet& in_set() const noexcept { return in_set_; }
  std::size_t size() const noexcept { return in_set_.size(); }
  bool is_background() const noexcept { return in_set_.empty(); }
  bool contains(const Contour& c) const { return in_set_.count(c) != 0; }

  Zone with(const Contour& c) const;
  Zone without(const Contour& c) const;
  /// The part of this zone's in-set that lies in `contours`.
  Zone restricted_to(const ContourSet& contours) const;
  bool subset_of(const ContourSet& contours) const;

  friend std::strong_ordering operator<=>(const Zone& a, const Zone& b);
  friend bool operator==(const Zone&, const Zone&) = default;

 private:
  ContourSet in_set_;
};

using ZoneSet = std::set<Zone>;

/// A single Euler diagram. Construction validates well-formedness: every zone
/// lies within the contours, shaded zones are present, and the background
/// zone is present.
class UnitaryDiagram {
 public:
  UnitaryDiagram(ContourSet contours, ZoneSet zones, ZoneSet shaded = {});

  const ContourSet& contours() const noexcept { return contours_; }
  const ZoneSet& zones() const noexcept { return zones_; }
  const ZoneSet& shaded() const noexcept { return shaded_; }

  bool has_contour(const Contour& c) const { return contours_.count(c) != 0; }
  bool has_zone(const Zone& z) const { return zones_.count(z) != 0; }
  bool is_shaded(const Zone& z) const { return shaded_.count(z) != 0; }

  friend bool operator==(const UnitaryDiagram&, const UnitaryDiagram&) = default;

 private:
  ContourSet contours_;
  ZoneSet zones_;
  ZoneSet shaded_;
};

enum class NodeKind : std::uint8_t { Unitary, Conjunction, Implication };

enum class Side : std::uint8_t { Left, Right };

/// Address of a subtree. For an implication, Left is the antecedent and Right
/// the consequent. The empty path is the whole diagram.
using Path = std::vector<Side>;

std::string path_to_string(const Path& path);
/// Canonical text of a zone, e.g. `(A B)`.
std::string zone_to_string(const Zone& z);

/// A compound diagram: a unitary leaf, a conjunction, or a top-level
/// implication. Implications never nest inside other nodes.
class Diagram {
 public:
  Diagram(UnitaryDiagram unitary);  // NOLINT(google-explicit-constructor)

  static Diagram conjunction(Diagram left, Diagram right);
  static Diagram implication(Diagram antecedent, Diagram consequent);

  NodeKind kind() const noexcept;
  bool is_unitary() const noexcept { return kind() == NodeKind::Unitary; }
  bool is_conjunction() const noexcept { return kind() == NodeKind::Conjunction; }
  bool is_implication() const noexcept { return kind() == NodeKind::Implication; }

  /// Throws WrongNodeKind unless this is a unitary leaf.
  const UnitaryDiagram& unitary() const;
  /// Throws WrongNodeKind on a unitary leaf.
  const Diagram& left() const;
  const Diagram& right() const;
  const Diagram& child(Side side) const { return side == Side::Left ? left() : right(); }

  /// True when no implication occurs anywhere in the tree.
  bool is_conjunctive() const noexcept;

  friend bool operator==(const Diagram& a, const Diagram& b);

 private:
  struct Node;
  explicit Diagram(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

ZoneSet venn_zones(const ContourSet& contours);
ZoneSet missing_zones(const UnitaryDiagram& d);
bool is_venn_form(const UnitaryDiagram& d);

/// Canonical form. Unitary diagrams already keep their collections in the
/// fixed label/zone order, so this rebuilds the tree without changing shape.
Diagram normalize(const Diagram& d);
bool diagram_equal(const Diagram& a, const Diagram& b);

const Diagram& subdiagram_at(const Diagram& d, const Path& path);
Diagram replace_at(const Diagram& d, const Path& path, Diagram replacement);
bool is_valid_path(const Diagram& d, const Path& path);

/// Unitary leaves in left-to-right order.
std::vector<UnitaryDiagram> unitaries(const Diagram& d);
ContourSet contour_union(const Diagram& d);

/// Every node path in pre-order (node before children, left before right).
std::vector<Path> preorder_paths(const Diagram& d);

}  // namespace euler
