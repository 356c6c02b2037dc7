#pragma once

// Decision procedure for the conjunctive Euler fragment.
//
// Every constraint such a diagram can express is "this atomic region is
// empty", so a diagram denotes the set of cells (atomic Venn regions over a
// shared vocabulary) it forces empty. Entailment is inclusion of those sets.

#include <cstdint>
#include <optional>
#include <vector>

#include "euler/diagram.hpp"

namespace euler {

/// Shared naming context. Labels are indexed in their sorted order.
class Vocabulary {
 public:
  static constexpr std::size_t kMaxLabels = 20;

  explicit Vocabulary(ContourSet labels);

  const ContourSet& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return ordered_.size(); }
  std::size_t cell_count() const noexcept { return std::size_t{1} << ordered_.size(); }

  std::optional<std::size_t> index_of(const Contour& c) const;
  /// Bit mask of `contours`; throws VocabularyMismatch for unknown labels.
  std::uint32_t mask_of(const ContourSet& contours) const;
  ContourSet labels_of(std::uint32_t mask) const;

 private:
  ContourSet labels_;
  std::vector<Contour> ordered_;
};

/// An atomic region: the set of vocabulary labels it lies inside, as a mask.
struct Cell {
  std::uint32_t mask = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

class CellSet {
 public:
  explicit CellSet(const Vocabulary& v) : bits_(v.cell_count(), false) {}

  void insert(Cell c) { bits_[c.mask] = true; }
  bool contains(Cell c) const { return bits_[c.mask]; }
  bool subset_of(const CellSet& other) const;
  std::size_t count() const;
  std::vector<Cell> cells() const;

  CellSet& operator|=(const CellSet& other);
  friend bool operator==(const CellSet&, const CellSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// Cells of `v` whose intersection with `diagram_contours` is the zone's in-set.
std::vector<Cell> cells_of_zone(const Zone& z, const ContourSet& diagram_contours,
                                const Vocabulary& v);

CellSet empty_cells(const UnitaryDiagram& d, const Vocabulary& v);
/// Union over every unitary component; rejects implication nodes.
CellSet empty_cells(const Diagram& d, const Vocabulary& v);

bool entails(const Diagram& premise, const Diagram& conclusion);
bool equivalent(const Diagram& a, const Diagram& b);

/// A cell the conclusion forces empty but the premise does not, over the
/// union vocabulary, rendered as its in-set. Empty optional iff entails holds.
std::optional<ContourSet> entailment_witness(const Diagram& premise, const Diagram& conclusion);

/// Validity of an implication goal `antecedent -> consequent`.
bool goal_valid(const Diagram& goal);

}  // namespace euler
