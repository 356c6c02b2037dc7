#include "euler/semantics.hpp"

#include <algorithm>
#include <string>

#include "euler/error.hpp"

namespace euler {

Vocabulary::Vocabulary(ContourSet labels)
    : labels_(std::move(labels)), ordered_(labels_.begin(), labels_.end()) {
  if (ordered_.size() > kMaxLabels) {
    throw EulerError(ErrorCode::VocabularyMismatch,
                     "vocabulary of " + std::to_string(ordered_.size()) + " labels exceeds the limit of " +
                         std::to_string(kMaxLabels));
  }
}

std::optional<std::size_t> Vocabulary::index_of(const Contour& c) const {
  auto it = std::lower_bound(ordered_.begin(), ordered_.end(), c);
  if (it == ordered_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - ordered_.begin());
}

std::uint32_t Vocabulary::mask_of(const ContourSet& contours) const {
  std::uint32_t mask = 0;
  for (const auto& c : contours) {
    auto idx = index_of(c);
    if (!idx) {
      throw EulerError(ErrorCode::VocabularyMismatch,
                       "contour " + c.name() + " is not in the vocabulary");
    }
    mask |= 1u << *idx;
  }
  return mask;
}

ContourSet Vocabulary::labels_of(std::uint32_t mask) const {
  ContourSet out;
  for (std::size_t i = 0; i < ordered_.size(); ++i) {
    if (mask & (1u << i)) out.insert(ordered_[i]);
  }
  return out;
}

bool CellSet::subset_of(const CellSet& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

std::size_t CellSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<Cell> CellSet::cells() const {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(Cell{static_cast<std::uint32_t>(i)});
  }
  return out;
}

CellSet& CellSet::operator|=(const CellSet& other) {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (other.bits_[i]) bits_[i] = true;
  }
  return *this;
}

std::vector<Cell> cells_of_zone(const Zone& z, const ContourSet& diagram_contours,
                                const Vocabulary& v) {
  if (!z.subset_of(diagram_contours)) {
    throw EulerError(ErrorCode::VocabularyMismatch, "zone lies outside the diagram's contours");
  }
  const std::uint32_t fixed = v.mask_of(diagram_contours);
  const std::uint32_t inside = v.mask_of(z.in_set());
  const std::uint32_t free = static_cast<std::uint32_t>(v.cell_count() - 1) & ~fixed;

  // Enumerate every subset of the free labels.
  std::vector<Cell> out;
  std::uint32_t sub = 0;
  do {
    out.push_back(Cell{inside | sub});
    sub = (sub - free) & free;
  } while (sub != 0);
  std::sort(out.begin(), out.end());
  return out;
}

CellSet empty_cells(const UnitaryDiagram& d, const Vocabulary& v) {
  CellSet out(v);
  for (const auto& z : venn_zones(d.contours())) {
    if (d.has_zone(z) && !d.is_shaded(z)) continue;
    for (Cell c : cells_of_zone(z, d.contours(), v)) out.insert(c);
  }
  return out;
}

CellSet empty_cells(const Diagram& d, const Vocabulary& v) {
  switch (d.kind()) {
    case NodeKind::Unitary: return empty_cells(d.unitary(), v);
    case NodeKind::Conjunction: {
      CellSet out = empty_cells(d.left(), v);
      out |= empty_cells(d.right(), v);
      return out;
    }
    case NodeKind::Implication: break;
  }
  throw EulerError(ErrorCode::ImplicationNodePresent,
                   "forced-empty cells are undefined for an implication");
}

namespace {

Vocabulary union_vocabulary(const Diagram& a, const Diagram& b) {
  ContourSet labels = contour_union(a);
  const ContourSet more = contour_union(b);
  labels.insert(more.begin(), more.end());
  return Vocabulary(std::move(labels));
}

void require_conjunctive(const Diagram& d) {
  if (!d.is_conjunctive()) {
    throw EulerError(ErrorCode::ImplicationNodePresent, "entailment is defined on conjunctive diagrams");
  }
}

}  // namespace

bool entails(const Diagram& premise, const Diagram& conclusion) {
  return !entailment_witness(premise, conclusion).has_value();
}

std::optional<ContourSet> entailment_witness(const Diagram& premise, const Diagram& conclusion) {
  require_conjunctive(premise);
  require_conjunctive(conclusion);
  const Vocabulary v = union_vocabulary(premise, conclusion);
  const CellSet forced = empty_cells(premise, v);
  for (Cell c : empty_cells(conclusion, v).cells()) {
    if (!forced.contains(c)) return v.labels_of(c.mask);
  }
  return std::nullopt;
}

bool equivalent(const Diagram& a, const Diagram& b) { return entails(a, b) && entails(b, a); }

bool goal_valid(const Diagram& goal) {
  if (!goal.is_implication() || !goal.left().is_conjunctive() || !goal.right().is_conjunctive()) {
    throw EulerError(ErrorCode::MalformedGoal, "a goal must be a single implication between conjunctive diagrams");
  }
  return entails(goal.left(), goal.right());
}

}  // namespace euler
