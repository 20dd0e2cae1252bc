#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gassoc/flip_graph.hpp"

namespace gassoc {

/// A maximal loaded nested set, members sorted.
using Tubing = std::vector<VertexSet>;

/// A loaded nested set with exactly one doubleton label: the common part of
/// two adjacent maximal tubings.
struct Ridge {
  Tubing members;  // sorted

  /// Common members of two adjacent maximal tubings.
  static Ridge between(const Tubing& a, const Tubing& b);
  /// The two maximal tubings containing the ridge, in a fixed order.
  std::pair<Tubing, Tubing> completions(const BuildingSet& b) const;
  /// Drops the member `top` (the ground set of a fixed-root subgraph).
  Ridge without(VertexSet top) const;
  /// Adds `top` (lifts into a fixed-root subgraph).
  Ridge with(VertexSet top) const;
  std::string serialize(const BuildingSet& b) const;

  friend bool operator==(const Ridge&, const Ridge&) = default;
  friend auto operator<=>(const Ridge&, const Ridge&) = default;
};

Ridge parse_ridge(const BuildingSet& b, const std::string& text);

enum class FlipKind { Short, Long, Other };

/// Labels of the ridge spine around the doubleton node. For short flips the
/// short root and short child are labels: singletons, or the leaf itself when
/// the leaf is a root or a child of the root.
struct FlipClass {
  FlipKind kind = FlipKind::Other;
  VertexSet pair;
  VertexSet short_leaf;
  VertexSet short_root;
  VertexSet short_child;
  VertexSet long_root;
};

FlipClass classify_ridge(const BuildingSet& b, const Ridge& r);

/// All short flips of F(G), ordered.
std::vector<Ridge> short_flips(const Graph& g);
/// All long flips of F(G) whose long root is `root_pair`.
std::vector<Ridge> long_flips_with_root(const Graph& g, VertexSet root_pair);

/// Square face of F(G) for connected G: root label {r, r2}, leaf label {s, s2},
/// every other label a singleton.
struct Bridge {
  Tubing members;  // loaded, sorted
  Vertex r = 0, r2 = 0, s = 0, s2 = 0;

  /// Maximal tubing where `root` is the root and `leaf` a leaf (B[rs]).
  Tubing corner(const Graph& g, Vertex root, Vertex leaf) const;
  /// Short flip of the bridge where `root` is the root (B[r]).
  Ridge short_flip(const Graph& g, Vertex root) const;
  /// Long flip of the bridge where `leaf` is a leaf (B[s]).
  Ridge long_flip(const Graph& g, Vertex leaf) const;
  std::string serialize() const { return serialize_sets(members); }
};

struct BridgeConstraints {
  /// Short leaf must contain all of these vertices.
  VertexSet leaf_contains;
  /// Short flip B[root] must not have this short child label.
  std::optional<std::pair<Vertex, VertexSet>> forbidden_short_child;
  /// {v} may be a child of `root` in B[root] only if v is isolated in G minus the root pair.
  std::optional<std::pair<Vertex, Vertex>> child_only_if_isolated;
};

/// Bridges with root label {a, b}, ordered by serialization. G must be connected.
std::vector<Bridge> enumerate_bridges(const Graph& g, Vertex a, Vertex b, const BridgeConstraints& c = {});

/// Conditions (A), (B), (C) for vertex w against a short flip of connected G.
bool in_conflict(const Graph& g, Vertex w, const Ridge& f);

/// Pairs whose removal leaves no edge, sorted.
std::vector<Edge> totally_disconnecting_pairs(const Graph& g);
/// Number of vertices outside the largest component of G minus v.
int disconnected_count(const Graph& g, Vertex v);
/// Vertices other than first/last disconnecting at most one vertex; those
/// disconnecting none come first, then by id.
std::vector<Vertex> almost_leaves(const Graph& g, Vertex first, Vertex last);

/// An ordering starting at the root of f and ending at the root of f2 where
/// v2 and v_n avoid the conflicts of f and f2 and no consecutive pair is
/// totally disconnecting. Empty if none exists.
std::vector<Vertex> order_vertices(const Graph& g, const Ridge& f, const Ridge& f2);
/// Every such ordering (up to `limit`), in lexicographic order.
std::vector<std::vector<Vertex>> valid_orderings(const Graph& g, const Ridge& f, const Ridge& f2, std::size_t limit);
bool ordering_valid(const Graph& g, const Ridge& f, const Ridge& f2, const std::vector<Vertex>& order);

/// Bridge selection for the chain of fixed-root subgraphs.
/// First mode: root {v1, v2}, forced short flip f at v1, next vertex v3.
std::optional<Bridge> select_bridge_first(const Graph& g, Vertex v1, Vertex v2, Vertex v3, const Ridge& f);
/// Middle mode: root {v, w}, adjacent forced short flips g at v and h at w.
/// Throws InputError naming the first hypothesis (i)-(iv) that fails.
Bridge select_bridge_middle(const Graph& g, Vertex v, Vertex w, const Ridge& gf, const Ridge& hf);

/// Whether two short flips of F_v(G) can both be forced in a cycle of F_v(G):
/// F_v a single flip; a square with distinct flips; otherwise distinct short children.
bool fixed_root_pair_ok(const Graph& g, Vertex v, const Ridge& a, const Ridge& b);

/// Cyclic sequence of maximal tubings.
struct CycleWitness {
  std::vector<Tubing> tubings;
};

/// Cycle as flip-graph ids; throws if a tubing is not a vertex.
std::vector<int> cycle_ids(const FlipGraph& idx, const CycleWitness& c);

/// Every vertex exactly once, consecutive (and wraparound) adjacent, each
/// required ridge realized by a consecutive pair.
bool verify_cycle(const FlipGraph& idx, const std::vector<int>& cycle, const std::vector<Ridge>& required);
bool verify_cycle(const FlipGraph& idx, const CycleWitness& c, const std::vector<Ridge>& required);

/// Exhaustive backtracking search for a Hamiltonian cycle through the forced
/// edges. Returns nullopt if none exists or the node budget runs out
/// (`exhausted` tells which).
std::optional<std::vector<int>> search_hamiltonian_cycle(const std::vector<std::vector<int>>& adj,
                                                         const std::vector<std::pair<int, int>>& forced,
                                                         std::uint64_t node_budget = 0, bool* exhausted = nullptr);

/// Products of cycles and paths on explicit coordinates. Vertices of C_m × C_k are pairs
/// (i, j); edges are given by their two endpoints. Returns the cycle as a
/// vertex sequence. Throws InputError when the pair is not supported.
using GridVertex = std::pair<int, int>;
using GridEdge = std::pair<GridVertex, GridVertex>;
std::vector<GridVertex> product_cycle_cycle(int m, int k, const std::vector<GridEdge>& forced);
/// C_m × K2, second coordinate in {0, 1}.
std::vector<GridVertex> product_cycle_edge(int m, const std::vector<GridEdge>& forced);

struct HamiltonianOptions {
  /// Connected non-star graphs with at most this many vertices use exhaustive search.
  int base_threshold = 6;
  /// Fall back to exhaustive search when the construction fails on a small graph.
  bool allow_fallback = true;
  /// Largest flip graph searched exhaustively as a fallback.
  int fallback_limit = 6000;
};

struct HamiltonianStats {
  std::uint64_t generic = 0;      // constructive gluing of fixed-root cycles
  std::uint64_t base = 0;         // exhaustive search (threshold)
  std::uint64_t fallback = 0;     // exhaustive search after a failed construction
  std::uint64_t stars = 0;
  std::uint64_t products = 0;
  std::uint64_t bridge_backtracks = 0;  // bridge choices beyond the preferred one
  std::string top_method;         // method used for the outermost graph
};

/// Hamiltonian cycle of F(G) through the forced short flips (distinct short
/// roots). Missing flips are chosen automatically. G needs at least 2 edges.
CycleWitness hamiltonian(const Graph& g, const std::optional<Ridge>& f = std::nullopt,
                         const std::optional<Ridge>& f2 = std::nullopt, const HamiltonianOptions& opt = {},
                         HamiltonianStats* stats = nullptr);

/// Star with center `center`: cycle through short flips f, f2 (distinct roots)
/// and a long flip l with root {r'', center}.
CycleWitness hamiltonian_star(const Graph& star, Vertex center, const Ridge& f, const Ridge& f2, const Ridge& l,
                              const HamiltonianOptions& opt = {}, HamiltonianStats* stats = nullptr);

/// Clears the memo of exhaustive searches.
void clear_hamiltonian_cache();

}  // namespace gassoc
