#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gassoc/graph.hpp"

namespace gassoc {

/// A failed axiom check together with the sets that witness it.
struct Violation {
  std::string axiom;  // "B1", "B2", "N1", "N2", "membership", "ground"
  std::vector<VertexSet> witness;
  std::string message() const;
};

class AxiomError : public InputError {
 public:
  explicit AxiomError(Violation v) : InputError(v.message()), violation_(std::move(v)) {}
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

/// Family of subsets of a ground set, closed under unions of intersecting
/// members and containing every singleton. Graphical building sets keep the
/// graph and answer membership by a connectivity test.
class BuildingSet {
 public:
  BuildingSet() = default;

  static BuildingSet graphical(const Graph& g);
  /// Throws AxiomError when (B1) or (B2) fails.
  static BuildingSet validated(VertexSet ground, std::vector<VertexSet> members);
  static std::optional<Violation> check(VertexSet ground, const std::vector<VertexSet>& members);

  VertexSet ground() const { return ground_; }
  bool is_graphical() const { return graph_ != nullptr; }
  /// Only meaningful when is_graphical().
  const Graph& graph() const { return *graph_; }

  bool contains(VertexSet s) const;
  /// All members ordered by size then lexicographically. Computed on first use for graphical sets.
  const std::vector<VertexSet>& members() const;
  /// Inclusion-maximal members; they partition the ground set.
  const std::vector<VertexSet>& maximal() const { return maximal_; }
  bool is_maximal_member(VertexSet s) const;
  bool connected() const { return maximal_.size() == 1; }

  /// The coarsest partition of `s` into members, ordered by smallest element.
  std::vector<VertexSet> partition(VertexSet s) const;
  /// Block of partition(s) containing v.
  VertexSet block_of(VertexSet s, Vertex v) const;

  /// Members contained in `s` (restriction to a subset of the ground set).
  BuildingSet restricted(VertexSet s) const;

 private:
  struct Cache;
  VertexSet ground_;
  std::shared_ptr<const Graph> graph_;
  std::shared_ptr<Cache> cache_;
  std::vector<VertexSet> maximal_;
};

/// True iff {s, t} is a nested set: nested, or disjoint with s ∪ t not a member.
bool compatible(const BuildingSet& b, VertexSet s, VertexSet t);

/// A nested set stored in loaded form: sorted members including every maximal member.
class NestedSet {
 public:
  NestedSet() = default;
  /// Trusts the caller; use validate_nested for unchecked input.
  NestedSet(std::shared_ptr<const BuildingSet> b, std::vector<VertexSet> loaded_members);

  const BuildingSet& building() const { return *building_; }
  std::shared_ptr<const BuildingSet> building_ptr() const { return building_; }
  const std::vector<VertexSet>& members() const { return members_; }
  std::vector<VertexSet> proper_members() const;
  bool contains(VertexSet s) const;
  int size() const { return static_cast<int>(members_.size()); }
  bool is_maximal() const;

  /// Proper form: sorted list of sorted vertex lists, e.g. [[0],[0,1]].
  std::string serialize() const;

  friend bool operator==(const NestedSet& a, const NestedSet& b) { return a.members_ == b.members_; }
  friend bool operator<(const NestedSet& a, const NestedSet& b) { return a.members_ < b.members_; }

 private:
  std::shared_ptr<const BuildingSet> building_;
  std::vector<VertexSet> members_;
};

/// Checks membership, (N1) and (N2) for a family given in proper or loaded form.
std::optional<Violation> check_nested(const BuildingSet& b, const std::vector<VertexSet>& members);
/// Throws AxiomError on failure; the result is loaded.
NestedSet validate_nested(std::shared_ptr<const BuildingSet> b, const std::vector<VertexSet>& members);
/// Parses the serialization format; accepts proper or loaded input.
NestedSet parse_nested(std::shared_ptr<const BuildingSet> b, const std::string& text);

/// Hasse diagram of a loaded nested set, with labels.
struct Spine {
  std::vector<VertexSet> nodes;  // sorted by decreasing size
  std::vector<int> parent;       // -1 for roots
  std::vector<VertexSet> labels;
  std::vector<std::vector<int>> children;

  int find(VertexSet node) const;
  std::vector<int> roots() const;
  bool all_labels_singletons() const;
  /// Every node set except the node itself that lies under it (descendant set).
  VertexSet descendants(int node) const;
};

Spine spine_of(const std::vector<VertexSet>& loaded_members);
Spine spine_of(const NestedSet& n);
std::vector<VertexSet> nested_of(const Spine& s);
/// Labels in the order of `loaded_members`.
std::vector<VertexSet> labels_of(const std::vector<VertexSet>& loaded_members);

/// Adds members until every label is a singleton. Input must be loaded and nested.
std::vector<VertexSet> complete_maximal(const BuildingSet& b, std::vector<VertexSet> loaded_members);
NestedSet complete_maximal(const NestedSet& n);

/// True iff `coarse` is obtained from `fine` by contracting spine edges,
/// i.e. the node sets of `coarse` are a subset of those of `fine` (same ground).
bool refines_by_contraction(const Spine& fine, const Spine& coarse);

/// All nested sets (loaded) by brute force over members; for small tests only.
std::vector<std::vector<VertexSet>> all_nested_sets(const BuildingSet& b);

/// Building sets on {0..elements-1}, one per isomorphism class (elements <= 5).
std::vector<BuildingSet> building_sets_up_to_isomorphism(int elements);

std::string serialize_sets(const std::vector<VertexSet>& sets);

}  // namespace gassoc
