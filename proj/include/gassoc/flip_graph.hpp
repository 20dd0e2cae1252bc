#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "gassoc/nested.hpp"

namespace gassoc {

struct FlipResult {
  std::vector<VertexSet> members;  // loaded, sorted
  VertexSet replacement;
};

/// Exchanges `member` of a maximal loaded nested set for the unique other
/// element keeping it maximal. Throws InputError for maximal (non-proper) members.
FlipResult flip(const BuildingSet& b, const std::vector<VertexSet>& maximal_loaded, VertexSet member);
std::pair<NestedSet, VertexSet> flip(const NestedSet& n, VertexSet member);

/// A maximal loaded nested set to start enumeration from. Graphical sets use
/// prefix chains of a connected traversal of each component.
std::vector<VertexSet> seed_maximal(const BuildingSet& b);

/// Enumerated flip graph: vertices are maximal loaded nested sets with ids in
/// BFS discovery order from the seed.
class FlipGraph {
 public:
  FlipGraph() = default;
  static FlipGraph build(std::shared_ptr<const BuildingSet> b);
  static FlipGraph build(const Graph& g) { return build(std::make_shared<const BuildingSet>(BuildingSet::graphical(g))); }

  const BuildingSet& building() const { return *building_; }
  std::shared_ptr<const BuildingSet> building_ptr() const { return building_; }
  int size() const { return static_cast<int>(offsets_.size()) - 1; }
  /// Members per vertex (the ground set size).
  int stride() const { return stride_; }
  std::vector<VertexSet> members(int id) const;
  NestedSet nested(int id) const { return NestedSet(building_, members(id)); }
  /// Sorted neighbor ids.
  std::vector<int> neighbors(int id) const;
  int degree(int id) const { return offsets_[id + 1] - offsets_[id]; }
  bool adjacent(int a, int b) const;
  std::int64_t edge_count() const { return static_cast<std::int64_t>(targets_.size()) / 2; }
  /// -1 if the set is not a vertex. Accepts proper or loaded form.
  int find(const std::vector<VertexSet>& members) const;
  int find(const NestedSet& n) const { return find(n.members()); }

  std::vector<int> bfs(int source) const;
  /// Distances from `source` avoiding vertices with allowed[v] == false.
  std::vector<int> bfs_within(int source, const std::vector<char>& allowed) const;
  int distance(int a, int b) const;
  /// All-sources BFS; stops early once the value reaches `cap` (if cap >= 0).
  int diameter(int threads = 1, int cap = -1) const;

  struct Geodesics {
    std::vector<std::vector<int>> paths;  // vertex sequences a..b
    bool truncated = false;
  };
  Geodesics geodesics(int a, int b, std::size_t limit = 1000000) const;

  /// Induced subgraph on the vertices in `keep` (ids renumbered in increasing old id).
  FlipGraph induced(const std::vector<int>& keep) const;
  /// Vertices whose spine root is labeled {v}; requires a connected building set.
  FlipGraph fixed_root_subgraph(Vertex v, std::vector<int>* old_ids = nullptr) const;

  std::string to_json() const;
  /// Edges between consecutive entries of `cycle` (with wraparound) get a color attribute.
  std::string to_dot(const std::vector<int>& cycle = {}) const;

 private:
  std::shared_ptr<const BuildingSet> building_;
  int stride_ = 0;
  std::vector<std::uint64_t> flat_;  // stride_ sorted members per vertex
  std::vector<int> offsets_{0};
  std::vector<int> targets_;
  std::vector<int> sorted_ids_;  // ids ordered by member list, for find()
};

/// Root label of a maximal nested set of a connected building set.
Vertex root_label(const std::vector<VertexSet>& maximal_loaded);

/// True iff the two graphs are equal after mapping vertex i of `a` to map[i] of `b`.
bool is_isomorphism(const FlipGraph& a, const FlipGraph& b, const std::vector<int>& map);

/// Maps F_v(G) onto F(G[v̂]) by dropping the root tube; returns the vertex map
/// or an empty vector if that map is not an isomorphism.
std::vector<int> fixed_root_isomorphism(const FlipGraph& fixed_root, const FlipGraph& subgraph_flips);

}  // namespace gassoc
