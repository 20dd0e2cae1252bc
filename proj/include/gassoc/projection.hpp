#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "gassoc/flip_graph.hpp"

namespace gassoc {

/// A building set together with a coarser one on the same ground set.
struct ProjectionContext {
  std::shared_ptr<const BuildingSet> fine;
  std::shared_ptr<const BuildingSet> coarse;
  /// Set when fine = B(G) and coarse = B(G minus one edge).
  std::optional<Edge> deleted_edge;

  /// Throws InputError unless coarse ⊆ fine on the same ground set.
  static ProjectionContext make(std::shared_ptr<const BuildingSet> fine, std::shared_ptr<const BuildingSet> coarse);
  /// B(g) projected onto B(g minus edge {u, v}).
  static ProjectionContext edge_deletion(const Graph& g, Vertex u, Vertex v);
};

/// Union of the coarsest coarse-partitions of the members; loaded and sorted.
std::vector<VertexSet> sigma(const BuildingSet& coarse, const std::vector<VertexSet>& members);
NestedSet sigma(const ProjectionContext& ctx, const NestedSet& n);

/// Every maximal nested set on ctx.fine mapping to `coarse_maximal`. For an edge
/// deletion this lists one preimage per shuffle of the two chains of members
/// containing exactly one endpoint; otherwise a single repaired witness.
std::vector<std::vector<VertexSet>> preimages(const ProjectionContext& ctx, const std::vector<VertexSet>& coarse_maximal);

/// One maximal nested set on `fine` whose image is `coarse_maximal`, built by
/// merging (N2)-violating families into their union until none remain.
std::vector<VertexSet> repair_preimage(const BuildingSet& fine, const std::vector<VertexSet>& coarse_maximal);

struct MonotonicityReport {
  int smaller_diameter = 0;  // diameter of F(g)
  int larger_diameter = 0;   // diameter of F(g_prime)
  bool holds = false;
};

/// Diameters of F(g) and F(g_prime); requires g ⊆ g_prime on the same ground set.
MonotonicityReport check_monotonicity(const Graph& g, const Graph& g_prime, int threads = 1);

}  // namespace gassoc
