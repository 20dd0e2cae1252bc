#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gassoc/vertex_set.hpp"

namespace gassoc {

using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph. The ground set is usually {0, ..., n}; induced
/// subgraphs keep the original vertex ids and carry a smaller ground set.
class Graph {
 public:
  Graph() = default;

  /// Graph on {0, ..., vertex_count-1}. Duplicate edges are collapsed.
  /// Throws InputError for self-loops and out-of-range endpoints.
  static Graph build(int vertex_count, const std::vector<Edge>& edges);

  VertexSet ground() const { return ground_; }
  int vertex_count() const { return ground_.size(); }
  int edge_count() const;
  VertexSet neighbors(Vertex v) const { return adj_[v]; }
  /// Vertices of the ground set adjacent to some vertex of `s`, excluding `s`.
  VertexSet boundary(VertexSet s) const;
  bool adjacent(Vertex u, Vertex v) const { return adj_[u].contains(v); }
  /// Edges with u < v, sorted.
  std::vector<Edge> edges() const;

  bool connected(VertexSet u) const;
  bool connected() const { return connected(ground_); }
  /// Vertex set of the component of G[u] containing v.
  VertexSet component_of(VertexSet u, Vertex v) const;
  /// Components of G[u], ordered by smallest vertex.
  std::vector<VertexSet> components(VertexSet u) const;
  std::vector<VertexSet> components() const { return components(ground_); }

  /// All non-empty connected vertex subsets, ordered by size then lexicographically.
  std::vector<VertexSet> tubes() const;

  /// Subgraph induced on `u`; vertex ids are unchanged.
  Graph induced(VertexSet u) const;
  Graph without_edge(Vertex u, Vertex v) const;
  Graph with_edge(Vertex u, Vertex v) const;
  /// True iff same ground set and every edge of this graph is an edge of `other`.
  bool subgraph_of(const Graph& other) const;
  bool is_star() const;

  /// Text form: `n <count>` followed by one `u v` line per edge.
  std::string to_text() const;
  std::string to_json() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.ground_ == b.ground_ && a.adj_ == b.adj_;
  }

 private:
  VertexSet ground_;
  std::vector<VertexSet> adj_;  // indexed by vertex id, size = max id + 1
};

/// Parses either the text format or the JSON format `{"n": k, "edges": [[u,v],...]}`.
Graph parse_graph(const std::string& content);
Graph read_graph_file(const std::string& path);

Graph path_graph(int vertices);
Graph cycle_graph(int vertices);
Graph complete_graph(int vertices);
/// K_{1,leaves}; the center is vertex 0.
Graph star_graph(int leaves);
/// Subdivided star with `branches` paths of `length` vertices each around center 0.
Graph starlike_graph(int branches, int length);
/// tk(1) is the tripod; tk(k+1) grafts two new leaves onto every leaf of tk(k).
Graph tk_graph(int depth);
/// Dispatches on kind in {path, cycle, complete, star, starlike, tk}.
Graph family_graph(const std::string& kind, int n, int k);

/// One representative per isomorphism class of graphs on exactly `vertices`
/// vertices (at most 7), optionally connected only.
std::vector<Graph> graphs_up_to_isomorphism(int vertices, bool connected_only);
/// Every labelled graph on {0, ..., vertices-1}.
std::vector<Graph> all_labelled_graphs(int vertices);

}  // namespace gassoc
