#include "euler/diagram.hpp"

#include <algorithm>
#include <utility>
#include <variant>

#include "euler/error.hpp"

namespace euler {

Contour::Contour(std::string name) : name_(std::move(name)) {
  if (!is_valid_name(name_)) {
    throw EulerError(ErrorCode::InvalidLabel, "invalid contour label '" + name_ + "'");
  }
}

bool Contour::is_valid_name(std::string_view name) noexcept {
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (name.empty() || !alpha(name.front())) return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

Zone Zone::with(const Contour& c) const {
  ContourSet s = in_set_;
  s.insert(c);
  return Zone(std::move(s));
}

Zone Zone::without(const Contour& c) const {
  ContourSet s = in_set_;
  s.erase(c);
  return Zone(std::move(s));
}

Zone Zone::restricted_to(const ContourSet& contours) const {
  ContourSet s;
  std::set_intersection(in_set_.begin(), in_set_.end(), contours.begin(), contours.end(),
                        std::inserter(s, s.end()));
  return Zone(std::move(s));
}

bool Zone::subset_of(const ContourSet& contours) const {
  return std::includes(contours.begin(), contours.end(), in_set_.begin(), in_set_.end());
}

std::strong_ordering operator<=>(const Zone& a, const Zone& b) {
  if (auto c = a.in_set_.size() <=> b.in_set_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.in_set_.begin(), a.in_set_.end(),
                                                b.in_set_.begin(), b.in_set_.end());
}

std::string zone_to_string(const Zone& z) {
  std::string out = "(";
  bool first = true;
  for (const auto& c : z.in_set()) {
    if (!first) out += ' ';
    out += c.name();
    first = false;
  }
  return out + ")";
}

UnitaryDiagram::UnitaryDiagram(ContourSet contours, ZoneSet zones, ZoneSet shaded)
    : contours_(std::move(contours)), zones_(std::move(zones)), shaded_(std::move(shaded)) {
  for (const auto& z : zones_) {
    if (!z.subset_of(contours_)) {
      throw EulerError(ErrorCode::MalformedDiagram,
                       "zone " + zone_to_string(z) + " uses a contour the diagram does not declare");
    }
  }
  for (const auto& z : shaded_) {
    if (zones_.count(z) == 0) {
      throw EulerError(ErrorCode::MalformedDiagram,
                       "shaded zone " + zone_to_string(z) + " is not a present zone");
    }
  }
  if (zones_.count(Zone{}) == 0) {
    throw EulerError(ErrorCode::MalformedDiagram, "the background zone () must be present");
  }
}

struct Diagram::Node {
  NodeKind kind;
  std::variant<UnitaryDiagram, std::pair<Diagram, Diagram>> payload;
};

Diagram::Diagram(UnitaryDiagram unitary)
    : node_(std::make_shared<const Node>(Node{NodeKind::Unitary, std::move(unitary)})) {}

Diagram Diagram::conjunction(Diagram left, Diagram right) {
  if (left.is_implication() || right.is_implication()) {
    throw EulerError(ErrorCode::MalformedDiagram, "implications cannot occur inside a conjunction");
  }
  return Diagram(std::make_shared<const Node>(
      Node{NodeKind::Conjunction, std::pair<Diagram, Diagram>(std::move(left), std::move(right))}));
}

Diagram Diagram::implication(Diagram antecedent, Diagram consequent) {
  if (!antecedent.is_conjunctive() || !consequent.is_conjunctive()) {
    throw EulerError(ErrorCode::MalformedDiagram, "implications cannot be nested");
  }
  return Diagram(std::make_shared<const Node>(
      Node{NodeKind::Implication,
           std::pair<Diagram, Diagram>(std::move(antecedent), std::move(consequent))}));
}

NodeKind Diagram::kind() const noexcept { return node_->kind; }

const UnitaryDiagram& Diagram::unitary() const {
  if (!is_unitary()) throw EulerError(ErrorCode::WrongNodeKind, "expected a unitary diagram");
  return std::get<UnitaryDiagram>(node_->payload);
}

const Diagram& Diagram::left() const {
  if (is_unitary()) throw EulerError(ErrorCode::WrongNodeKind, "a unitary diagram has no children");
  return std::get<1>(node_->payload).first;
}

const Diagram& Diagram::right() const {
  if (is_unitary()) throw EulerError(ErrorCode::WrongNodeKind, "a unitary diagram has no children");
  return std::get<1>(node_->payload).second;
}

bool Diagram::is_conjunctive() const noexcept {
  switch (kind()) {
    case NodeKind::Unitary: return true;
    case NodeKind::Implication: return false;
    case NodeKind::Conjunction: return left().is_conjunctive() && right().is_conjunctive();
  }
  return false;
}

bool operator==(const Diagram& a, const Diagram& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_unitary()) return a.unitary() == b.unitary();
  return a.left() == b.left() && a.right() == b.right();
}

std::string path_to_string(const Path& path) {
  if (path.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '/';
    out += path[i] == Side::Left ? 'L' : 'R';
  }
  return out;
}

ZoneSet venn_zones(const ContourSet& contours) {
  const std::vector<Contour> labels(contours.begin(), contours.end());
  if (labels.size() >= 31) {
    throw EulerError(ErrorCode::MalformedDiagram, "too many contours for a Venn expansion");
  }
  ZoneSet out;
  const std::uint32_t count = 1u << labels.size();
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    ContourSet in;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (mask & (1u << i)) in.insert(labels[i]);
    }
    out.insert(Zone(std::move(in)));
  }
  return out;
}

ZoneSet missing_zones(const UnitaryDiagram& d) {
  ZoneSet out;
  for (auto& z : venn_zones(d.contours())) {
    if (!d.has_zone(z)) out.insert(z);
  }
  return out;
}

bool is_venn_form(const UnitaryDiagram& d) {
  return d.zones().size() == (std::size_t{1} << d.contours().size());
}

Diagram normalize(const Diagram& d) {
  switch (d.kind()) {
    case NodeKind::Unitary: {
      const auto& u = d.unitary();
      return UnitaryDiagram(u.contours(), u.zones(), u.shaded());
    }
    case NodeKind::Conjunction: return Diagram::conjunction(normalize(d.left()), normalize(d.right()));
    case NodeKind::Implication: return Diagram::implication(normalize(d.left()), normalize(d.right()));
  }
  return d;
}

bool diagram_equal(const Diagram& a, const Diagram& b) { return normalize(a) == normalize(b); }

const Diagram& subdiagram_at(const Diagram& d, const Path& path) {
  const Diagram* cur = &d;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (cur->is_unitary()) {
      throw EulerError(ErrorCode::InvalidPath,
                       "path " + path_to_string(path) + " walks past a unitary diagram");
    }
    cur = &cur->child(path[i]);
  }
  return *cur;
}

bool is_valid_path(const Diagram& d, const Path& path) {
  const Diagram* cur = &d;
  for (Side s : path) {
    if (cur->is_unitary()) return false;
    cur = &cur->child(s);
  }
  return true;
}

namespace {

Diagram replace_from(const Diagram& d, const Path& path, std::size_t depth, Diagram replacement) {
  if (depth == path.size()) return replacement;
  if (d.is_unitary()) {
    throw EulerError(ErrorCode::InvalidPath,
                     "path " + path_to_string(path) + " walks past a unitary diagram");
  }
  Diagram left = d.left();
  Diagram right = d.right();
  if (path[depth] == Side::Left) {
    left = replace_from(left, path, depth + 1, std::move(replacement));
  } else {
    right = replace_from(right, path, depth + 1, std::move(replacement));
  }
  return d.is_conjunction() ? Diagram::conjunction(std::move(left), std::move(right))
                            : Diagram::implication(std::move(left), std::move(right));
}

void collect_unitaries(const Diagram& d, std::vector<UnitaryDiagram>& out) {
  if (d.is_unitary()) {
    out.push_back(d.unitary());
    return;
  }
  collect_unitaries(d.left(), out);
  collect_unitaries(d.right(), out);
}

void collect_paths(const Diagram& d, Path& prefix, std::vector<Path>& out) {
  out.push_back(prefix);
  if (d.is_unitary()) return;
  prefix.push_back(Side::Left);
  collect_paths(d.left(), prefix, out);
  prefix.back() = Side::Right;
  collect_paths(d.right(), prefix, out);
  prefix.pop_back();
}

}  // namespace

Diagram replace_at(const Diagram& d, const Path& path, Diagram replacement) {
  return replace_from(d, path, 0, std::move(replacement));
}

std::vector<UnitaryDiagram> unitaries(const Diagram& d) {
  std::vector<UnitaryDiagram> out;
  collect_unitaries(d, out);
  return out;
}

ContourSet contour_union(const Diagram& d) {
  ContourSet out;
  for (const auto& u : unitaries(d)) out.insert(u.contours().begin(), u.contours().end());
  return out;
}

std::vector<Path> preorder_paths(const Diagram& d) {
  std::vector<Path> out;
  Path prefix;
  collect_paths(d, prefix, out);
  return out;
}

}  // namespace euler
