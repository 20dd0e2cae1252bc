#include "gassoc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gassoc {

namespace {

constexpr int kExhaustiveTubeLimit = 20;

void check_vertex(Vertex v, int vertex_count) {
  if (v < 0 || v >= vertex_count) {
    throw InputError("edge endpoint " + std::to_string(v) + " outside ground set of size " +
                     std::to_string(vertex_count));
  }
}

}  // namespace

Graph Graph::build(int vertex_count, const std::vector<Edge>& edges) {
  if (vertex_count < 1 || vertex_count > kMaxVertices) {
    throw InputError("vertex count must be in [1, 64], got " + std::to_string(vertex_count));
  }
  Graph g;
  g.ground_ = VertexSet::first(vertex_count);
  g.adj_.assign(vertex_count, VertexSet{});
  for (auto [u, v] : edges) {
    check_vertex(u, vertex_count);
    check_vertex(v, vertex_count);
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    g.adj_[u] = g.adj_[u].with(v);
    g.adj_[v] = g.adj_[v].with(u);
  }
  return g;
}

int Graph::edge_count() const {
  int twice = 0;
  for (Vertex v : ground_) twice += (adj_[v] & ground_).size();
  return twice / 2;
}

VertexSet Graph::boundary(VertexSet s) const {
  VertexSet out;
  for (Vertex v : s) out |= adj_[v];
  return (out & ground_) - s;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (Vertex u : ground_) {
    for (Vertex v : adj_[u] & ground_) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

VertexSet Graph::component_of(VertexSet u, Vertex v) const {
  VertexSet seen = VertexSet::singleton(v);
  VertexSet frontier = seen;
  while (!frontier.empty()) {
    VertexSet next;
    for (Vertex w : frontier) next |= adj_[w];
    next = (next & u) - seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

bool Graph::connected(VertexSet u) const {
  if (u.empty()) return false;
  return component_of(u, u.min()) == u;
}

std::vector<VertexSet> Graph::components(VertexSet u) const {
  std::vector<VertexSet> out;
  VertexSet rest = u;
  while (!rest.empty()) {
    VertexSet c = component_of(u, rest.min());
    out.push_back(c);
    rest -= c;
  }
  return out;
}

std::vector<VertexSet> Graph::tubes() const {
  std::vector<VertexSet> out;
  if (vertex_count() <= kExhaustiveTubeLimit) {
    // Walk all non-empty submasks of the ground set.
    const std::uint64_t full = ground_.bits();
    for (std::uint64_t s = full; s != 0; s = (s - 1) & full) {
      if (connected(VertexSet(s))) out.emplace_back(s);
    }
  } else {
    // Each connected set is grown from its smallest vertex; a vertex is
    // banned once every set containing it has been produced on this branch.
    std::function<void(VertexSet, VertexSet)> grow = [&](VertexSet s, VertexSet banned) {
      out.push_back(s);
      for (Vertex w : boundary(s) - banned) {
        grow(s.with(w), banned);
        banned = banned.with(w);
      }
    };
    VertexSet banned;
    for (Vertex v : ground_) {
      grow(VertexSet::singleton(v), banned.with(v));
      banned = banned.with(v);
    }
  }
  std::sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
  });
  return out;
}

Graph Graph::induced(VertexSet u) const {
  if (!ground_.contains(u)) throw InputError("induced subgraph outside ground set");
  Graph g = *this;
  g.ground_ = u;
  for (Vertex v = 0; v < static_cast<Vertex>(g.adj_.size()); ++v) {
    g.adj_[v] = u.contains(v) ? (g.adj_[v] & u) : VertexSet{};
  }
  return g;
}

Graph Graph::without_edge(Vertex u, Vertex v) const {
  if (!adjacent(u, v)) throw InputError("no edge " + std::to_string(u) + "-" + std::to_string(v));
  Graph g = *this;
  g.adj_[u] = g.adj_[u].without(v);
  g.adj_[v] = g.adj_[v].without(u);
  return g;
}

Graph Graph::with_edge(Vertex u, Vertex v) const {
  if (u == v || !ground_.contains(u) || !ground_.contains(v)) throw InputError("invalid edge");
  Graph g = *this;
  g.adj_[u] = g.adj_[u].with(v);
  g.adj_[v] = g.adj_[v].with(u);
  return g;
}

bool Graph::subgraph_of(const Graph& other) const {
  if (ground_ != other.ground_) return false;
  for (Vertex v : ground_) {
    if (!other.adj_[v].contains(adj_[v])) return false;
  }
  return true;
}

bool Graph::is_star() const {
  const int n = vertex_count();
  if (n < 3 || !connected() || edge_count() != n - 1) return false;
  for (Vertex v : ground_) {
    if (adj_[v].size() == n - 1) return true;
  }
  return false;
}

std::string Graph::to_text() const {
  std::ostringstream out;
  out << "n " << vertex_count() << "\n";
  for (auto [u, v] : edges()) out << u << " " << v << "\n";
  return out.str();
}

std::string Graph::to_json() const {
  nlohmann::json j;
  j["n"] = vertex_count();
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : edges()) j["edges"].push_back({u, v});
  return j.dump();
}

Graph parse_graph(const std::string& content) {
  auto first = content.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InputError("empty graph description");
  if (content[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(content);
      std::vector<Edge> edges;
      for (const auto& e : j.at("edges")) {
        if (e.size() != 2) throw InputError("edge must have two endpoints");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
      return Graph::build(j.at("n").get<int>(), edges);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("malformed graph JSON: ") + e.what());
    }
  }
  std::istringstream in(content);
  std::string tag;
  int count = 0;
  if (!(in >> tag >> count) || tag != "n") throw InputError("graph text must start with `n <count>`");
  std::vector<Edge> edges;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    Vertex u = 0;
    Vertex v = 0;
    if (!(ls >> u)) continue;
    if (!(ls >> v)) throw InputError("malformed edge line: " + line);
    edges.emplace_back(u, v);
  }
  return Graph::build(count, edges);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

Graph path_graph(int vertices) {
  if (vertices < 1) throw InputError("path needs at least one vertex");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < vertices; ++i) edges.emplace_back(i, i + 1);
  return Graph::build(vertices, edges);
}

Graph cycle_graph(int vertices) {
  if (vertices < 3) throw InputError("cycle needs at least three vertices");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < vertices; ++i) edges.emplace_back(i, (i + 1) % vertices);
  return Graph::build(vertices, edges);
}

Graph complete_graph(int vertices) {
  if (vertices < 1) throw InputError("complete graph needs at least one vertex");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < vertices; ++i) {
    for (Vertex j = i + 1; j < vertices; ++j) edges.emplace_back(i, j);
  }
  return Graph::build(vertices, edges);
}

Graph star_graph(int leaves) {
  if (leaves < 1) throw InputError("star needs at least one leaf");
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph::build(leaves + 1, edges);
}

Graph starlike_graph(int branches, int length) {
  if (branches < 1 || length < 1) throw InputError("starlike tree needs positive branch count and length");
  std::vector<Edge> edges;
  Vertex next = 1;
  for (int b = 0; b < branches; ++b) {
    Vertex prev = 0;
    for (int i = 0; i < length; ++i) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
  }
  return Graph::build(next, edges);
}

Graph tk_graph(int depth) {
  if (depth < 1) throw InputError("tk depth must be at least 1");
  std::vector<Edge> edges = {{0, 1}, {0, 2}, {0, 3}};
  std::vector<Vertex> leaves = {1, 2, 3};
  Vertex next = 4;
  for (int d = 1; d < depth; ++d) {
    std::vector<Vertex> grown;
    for (Vertex leaf : leaves) {
      for (int j = 0; j < 2; ++j) {
        if (next >= kMaxVertices) throw InputError("tk depth too large for 64 vertices");
        edges.emplace_back(leaf, next);
        grown.push_back(next++);
      }
    }
    leaves = std::move(grown);
  }
  return Graph::build(next, edges);
}

Graph family_graph(const std::string& kind, int n, int k) {
  if (kind == "path") return path_graph(n);
  if (kind == "cycle") return cycle_graph(n);
  if (kind == "complete") return complete_graph(n);
  if (kind == "star") return star_graph(n);
  if (kind == "starlike") return starlike_graph(n, k);
  if (kind == "tk") return tk_graph(k > 0 ? k : n);
  throw InputError("unknown graph family: " + kind);
}

namespace {

int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

/// Edge mask of a graph on {0..m-1} relabelled by `label`.
std::uint64_t relabelled_mask(const std::vector<Edge>& edges, const std::vector<int>& label) {
  std::uint64_t mask = 0;
  for (auto [u, v] : edges) mask |= std::uint64_t{1} << pair_index(label[u], label[v]);
  return mask;
}

/// Smallest relabelled edge mask over labellings that sort vertices by a
/// refinement-stable invariant; isomorphic graphs get equal results.
std::uint64_t canonical_mask(const Graph& g) {
  const int m = g.vertex_count();
  std::vector<std::pair<int, std::vector<int>>> key(m);
  for (Vertex v = 0; v < m; ++v) {
    key[v].first = g.neighbors(v).size();
    for (Vertex w : g.neighbors(v)) key[v].second.push_back(g.neighbors(w).size());
    std::sort(key[v].second.begin(), key[v].second.end());
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
  std::vector<std::pair<int, int>> blocks;  // [begin, end) in order
  for (int i = 0; i < m;) {
    int j = i;
    while (j < m && key[order[j]] == key[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  const auto edges = g.edges();
  std::uint64_t best = ~std::uint64_t{0};
  std::vector<int> label(m);
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      for (int i = 0; i < m; ++i) label[order[i]] = i;
      best = std::min(best, relabelled_mask(edges, label));
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(order.begin() + lo, order.begin() + hi);
    do {
      rec(b + 1);
    } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  rec(0);
  return best;
}

Graph from_mask(int m, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < j; ++i) {
      if ((mask >> pair_index(i, j)) & 1U) edges.emplace_back(i, j);
    }
  }
  return Graph::build(m, edges);
}

}  // namespace

std::vector<Graph> graphs_up_to_isomorphism(int vertices, bool connected_only) {
  if (vertices < 1 || vertices > 8) throw InputError("isomorphism classes supported for 1..8 vertices");
  std::set<std::uint64_t> classes = {0};
  for (int m = 2; m <= vertices; ++m) {
    std::set<std::uint64_t> grown;
    for (std::uint64_t mask : classes) {
      const Graph base = from_mask(m - 1, mask);
      const auto base_edges = base.edges();
      for (std::uint64_t nb = 0; nb < (std::uint64_t{1} << (m - 1)); ++nb) {
        auto edges = base_edges;
        for (Vertex v : VertexSet(nb)) edges.emplace_back(v, m - 1);
        grown.insert(canonical_mask(Graph::build(m, edges)));
      }
    }
    classes = std::move(grown);
  }
  std::vector<Graph> out;
  for (std::uint64_t mask : classes) {
    Graph g = from_mask(vertices, mask);
    if (!connected_only || g.connected()) out.push_back(std::move(g));
  }
  return out;
}

std::vector<Graph> all_labelled_graphs(int vertices) {
  if (vertices < 1 || vertices > 6) throw InputError("labelled enumeration supported for 1..6 vertices");
  const int pairs = vertices * (vertices - 1) / 2;
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    out.push_back(from_mask(vertices, mask));
  }
  return out;
}

}  // namespace gassoc
