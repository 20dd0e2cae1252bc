#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "gassoc/hamiltonian.hpp"

using namespace gassoc;

namespace {

/// Labels computed straight from the member list: each member minus the
/// members strictly inside it.
std::map<VertexSet, VertexSet> labels(const std::vector<VertexSet>& ms) {
  std::map<VertexSet, VertexSet> out;
  for (VertexSet t : ms) {
    VertexSet below;
    for (VertexSet u : ms) {
      if (t.strictly_contains(u)) below |= u;
    }
    out[t] = t - below;
  }
  return out;
}

int edges_in(const Graph& g, VertexSet s) {
  int c = 0;
  for (auto [u, v] : g.edges()) c += s.contains(u) && s.contains(v);
  return c;
}

/// The three conflict conditions evaluated from scratch on a ridge of connected G.
/// Children of the root are the components of G minus the root vertex.
bool conflict_oracle(const Graph& g, Vertex w, const Ridge& f) {
  const auto lab = labels(f.members);
  const VertexSet v_set = lab.at(g.ground());
  REQUIRE(v_set.size() == 1);
  const Vertex v = v_set.min();
  VertexSet leaf;
  for (auto [t, l] : lab) {
    if (l.size() == 2) leaf = l;
  }
  if (leaf.contains(w)) return false;
  const VertexSet hat_v = g.ground().without(v);
  bool others_isolated = true;
  bool w_child = false;
  VertexSet short_child;
  for (VertexSet comp : g.components(hat_v)) {
    const VertexSet label = lab.at(comp);
    if (label == VertexSet::singleton(w)) w_child = true;
    if (comp.contains(leaf)) {
      short_child = label;
    } else if (comp.size() != 1) {
      others_isolated = false;
    }
  }
  const int ev = edges_in(g, hat_v);
  const VertexSet rest = hat_v.without(w);
  bool single_leaf_edge = false;
  if (edges_in(g, rest) == 1) {
    for (auto [x, y] : g.edges()) {
      if (rest.contains(x) && rest.contains(y)) single_leaf_edge = VertexSet{x, y} == leaf;
    }
  }
  const bool a = short_child == VertexSet::singleton(w) && others_isolated;
  const bool b = ev >= 3 && single_leaf_edge;
  const bool c = ev == 2 && single_leaf_edge && w_child;
  return a || b || c;
}

/// Codimension-two faces of F(G) whose root label is {a, b} and that have one
/// other doubleton label on a leaf, found from intersections of vertex pairs.
int count_bridges_oracle(const Graph& g, Vertex a, Vertex b) {
  const FlipGraph f = FlipGraph::build(g);
  std::set<std::vector<VertexSet>> faces;
  for (int x = 0; x < f.size(); ++x) {
    const auto mx = f.members(x);
    for (int y = x + 1; y < f.size(); ++y) {
      const auto my = f.members(y);
      std::vector<VertexSet> common;
      std::set_intersection(mx.begin(), mx.end(), my.begin(), my.end(), std::back_inserter(common));
      if (static_cast<int>(common.size()) == g.vertex_count() - 2) faces.insert(common);
    }
  }
  int count = 0;
  for (const auto& face : faces) {
    const auto lab = labels(face);
    if (lab.at(g.ground()) != VertexSet{a, b}) continue;
    int leaf_pairs = 0;
    for (auto [t, l] : lab) {
      if (t == g.ground() || l.size() != 2) continue;
      const bool leaf = std::none_of(face.begin(), face.end(), [&](VertexSet u) { return t.strictly_contains(u); });
      leaf_pairs += leaf;
    }
    count += leaf_pairs == 1;
  }
  return count;
}

}  // namespace

TEST_CASE("ridge classification examples") {
  const Graph p3 = path_graph(3);
  const auto b = BuildingSet::graphical(p3);
  const Ridge leaf = parse_ridge(b, "[[0,1]]");
  const auto [a1, a2] = leaf.completions(b);
  const std::set<Tubing> got{a1, a2};
  const std::set<Tubing> want{{{0}, {0, 1}, {0, 1, 2}}, {{0, 1}, {1}, {0, 1, 2}}};
  CHECK(got.size() == 2);
  for (const auto& t : want) {
    Tubing s = t;
    std::sort(s.begin(), s.end());
    CHECK(got.count(s) == 1);
  }
  const FlipClass c = classify_ridge(b, leaf);
  CHECK(c.kind == FlipKind::Short);
  CHECK(c.short_leaf == VertexSet{0, 1});

  const Ridge root = parse_ridge(b, "[[0]]");
  const FlipClass c2 = classify_ridge(b, root);
  CHECK(c2.kind == FlipKind::Long);
  CHECK(c2.long_root == VertexSet{1, 2});

  const Graph p5 = path_graph(5);
  const auto b5 = BuildingSet::graphical(p5);
  const FlipGraph f5 = FlipGraph::build(p5);
  int other = 0;
  for (int x = 0; x < f5.size(); ++x) {
    for (int y : f5.neighbors(x)) {
      const FlipClass k = classify_ridge(b5, Ridge::between(f5.members(x), f5.members(y)));
      other += k.kind == FlipKind::Other;
      if (k.kind == FlipKind::Short) CHECK(p5.adjacent(k.short_leaf.min(), *++k.short_leaf.begin()));
    }
  }
  CHECK(other > 0);
  CHECK_THROWS_AS(parse_ridge(b, "[[0],[0,1]]"), InputError);
}

TEST_CASE("short leaves are edges and ridges serialize") {
  for (int m = 3; m <= 6; ++m) {
    for (const Graph& g : graphs_up_to_isomorphism(m, true)) {
      const auto b = BuildingSet::graphical(g);
      for (const Ridge& r : short_flips(g)) {
        const FlipClass c = classify_ridge(b, r);
        REQUIRE(c.kind == FlipKind::Short);
        const auto vs = c.short_leaf.to_vector();
        CHECK(g.adjacent(vs[0], vs[1]));
        CHECK(parse_ridge(b, r.serialize(b)) == r);
      }
    }
  }
}

TEST_CASE("conflict table of the tripod") {
  const Graph g = star_graph(3);
  const auto b = BuildingSet::graphical(g);
  const auto flips = short_flips(g);
  CHECK(flips.size() == 6);
  for (const Ridge& f : flips) {
    const FlipClass c = classify_ridge(b, f);
    const Vertex root = c.short_root.min();
    // the leaf that is neither the root nor in the short leaf
    const VertexSet third = g.ground().without(0).without(root) - c.short_leaf;
    REQUIRE(third.size() == 1);
    for (Vertex w : g.ground()) {
      if (w == root) continue;
      CHECK(in_conflict(g, w, f) == (w == third.min()));
    }
  }
}

TEST_CASE("conflicts match the oracle") {
  int multiple = 0;
  for (int m = 3; m <= 6; ++m) {
    for (const Graph& g : graphs_up_to_isomorphism(m, true)) {
      const auto b = BuildingSet::graphical(g);
      for (const Ridge& f : short_flips(g)) {
        const Vertex root = classify_ridge(b, f).short_root.min();
        int count = 0;
        for (Vertex w : g.ground()) {
          if (w == root) continue;
          const bool got = in_conflict(g, w, f);
          CHECK(got == conflict_oracle(g, w, f));
          count += got;
        }
        if (count > 1) ++multiple;
      }
    }
  }
  // on the 5-cycle (A) and (B) can hold for two different vertices
  CHECK(multiple > 0);
  const Graph c5 = cycle_graph(5);
  const auto b5 = BuildingSet::graphical(c5);
  const Ridge two = parse_ridge(b5, "[[0,1],[0,1,2],[0,1,2,3]]");
  REQUIRE(classify_ridge(b5, two).short_root == VertexSet{4});
  CHECK(in_conflict(c5, 2, two));
  CHECK(in_conflict(c5, 3, two));
  const Graph k4 = complete_graph(4);
  const auto b4 = BuildingSet::graphical(k4);
  for (const Ridge& f : short_flips(k4)) {
    const Vertex root = classify_ridge(b4, f).short_root.min();
    const VertexSet leaf = classify_ridge(b4, f).short_leaf;
    for (Vertex w : k4.ground()) {
      if (w != root) CHECK(in_conflict(k4, w, f) == !leaf.contains(w));
    }
  }
}

TEST_CASE("totally disconnecting pairs and almost leaves") {
  CHECK(totally_disconnecting_pairs(complete_graph(4)).empty());
  CHECK(totally_disconnecting_pairs(path_graph(4)) == std::vector<Edge>{{0, 2}, {1, 2}, {1, 3}});
  const auto star = totally_disconnecting_pairs(star_graph(4));
  CHECK(star.size() == 4);
  for (auto [x, y] : star) CHECK((x == 0 || y == 0));

  for (int m = 5; m <= 7; ++m) {
    for (const Graph& g : graphs_up_to_isomorphism(m, true)) {
      if (g.is_star()) continue;
      const auto d = totally_disconnecting_pairs(g);
      CHECK(d.size() <= 2);
      if (d.size() == 2) {
        CHECK((d[0].first == d[1].first || d[0].first == d[1].second || d[0].second == d[1].first ||
               d[0].second == d[1].second));
      }
      for (Vertex first : g.ground()) {
        for (Vertex last : g.ground()) {
          if (first != last) CHECK_FALSE(almost_leaves(g, first, last).empty());
        }
      }
    }
  }
}

TEST_CASE("bridges") {
  const Graph p4 = path_graph(4);
  const auto br = enumerate_bridges(p4, 0, 1);
  REQUIRE(br.size() == 1);
  CHECK(VertexSet{br[0].s, br[0].s2} == VertexSet{2, 3});
  CHECK(enumerate_bridges(path_graph(3), 0, 1).empty());

  for (const Graph& g : {complete_graph(4), path_graph(5), cycle_graph(5), star_graph(4)}) {
    for (auto [a, b] : g.edges()) {
      CHECK(static_cast<int>(enumerate_bridges(g, a, b).size()) == count_bridges_oracle(g, a, b));
    }
  }

  // corners form a square of two short and two long flips
  const Graph g = cycle_graph(5);
  const auto bs = BuildingSet::graphical(g);
  const FlipGraph f = FlipGraph::build(g);
  for (const Bridge& x : enumerate_bridges(g, 0, 1)) {
    const int c[4] = {f.find(x.corner(g, x.r, x.s)), f.find(x.corner(g, x.r, x.s2)), f.find(x.corner(g, x.r2, x.s2)),
                      f.find(x.corner(g, x.r2, x.s))};
    for (int i = 0; i < 4; ++i) {
      REQUIRE(c[i] >= 0);
      CHECK(f.adjacent(c[i], c[(i + 1) % 4]));
    }
    CHECK(classify_ridge(bs, x.short_flip(g, x.r)).kind == FlipKind::Short);
    CHECK(classify_ridge(bs, x.short_flip(g, x.r2)).kind == FlipKind::Short);
    CHECK(classify_ridge(bs, x.long_flip(g, x.s)).kind == FlipKind::Long);
    CHECK(classify_ridge(bs, x.long_flip(g, x.s2)).kind == FlipKind::Long);
  }
}

TEST_CASE("orderings") {
  const Graph k7 = complete_graph(7);
  const auto flips = short_flips(k7);
  const auto b7 = BuildingSet::graphical(k7);
  const Ridge& f = flips.front();
  const auto it = std::find_if(flips.begin(), flips.end(), [&](const Ridge& r) {
    return classify_ridge(b7, r).short_root != classify_ridge(b7, f).short_root;
  });
  REQUIRE(it != flips.end());
  const auto order = order_vertices(k7, f, *it);
  REQUIRE(order.size() == 7);
  CHECK(order.front() == classify_ridge(b7, f).short_root.min());
  CHECK(order.back() == classify_ridge(b7, *it).short_root.min());
  CHECK(valid_orderings(k7, f, *it, 1000).size() == 120);

  // every non-star connected graph on 7 vertices; orderings only depend on
  // the roots and conflict vertices of the two flips
  int checked = 0;
  for (const Graph& g : graphs_up_to_isomorphism(7, true)) {
    if (g.is_star()) continue;
    const auto b = BuildingSet::graphical(g);
    std::map<std::pair<Vertex, VertexSet>, Ridge> reps;
    for (const Ridge& r : short_flips(g)) {
      const Vertex root = classify_ridge(b, r).short_root.min();
      VertexSet conflict;
      for (Vertex w : g.ground()) {
        if (w != root && in_conflict(g, w, r)) conflict = conflict.with(w);
      }
      reps.emplace(std::pair{root, conflict}, r);
    }
    for (const auto& [ka, fa] : reps) {
      for (const auto& [kb, fb] : reps) {
        if (ka.first == kb.first) continue;
        const auto o = order_vertices(g, fa, fb);
        REQUIRE_FALSE(o.empty());
        CHECK(ordering_valid(g, fa, fb, o));
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("bridge selection post-conditions") {
  for (const Graph& g : {path_graph(7), cycle_graph(7), tk_graph(2)}) {
    const auto b = BuildingSet::graphical(g);
    const auto sf = short_flips(g);
    int selected = 0;
    const std::size_t step = std::max<std::size_t>(1, sf.size() / 12);
    for (std::size_t i = 0; i < sf.size(); i += step) {
      const Vertex v1 = classify_ridge(b, sf[i]).short_root.min();
      for (Vertex v2 : g.ground()) {
        if (v2 == v1 || in_conflict(g, v2, sf[i])) continue;
        for (Vertex v3 : g.ground()) {
          if (v3 == v1 || v3 == v2) continue;
          const auto br = select_bridge_first(g, v1, v2, v3, sf[i]);
          if (!br) continue;
          ++selected;
          CHECK(VertexSet{br->r, br->r2} == VertexSet{v1, v2});
          const Ridge bf = br->short_flip(g, v1);
          CHECK(bf != sf[i]);
          CHECK_FALSE(in_conflict(g, v3, br->short_flip(g, v2)));
        }
      }
    }
    CHECK(selected > 0);
  }
}

TEST_CASE("cycle products match exhaustive search") {
  auto grid = [](int m, int k) {
    std::vector<std::vector<int>> adj(m * k);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < k; ++j) {
        const int id = i * k + j;
        adj[id].push_back(((i + 1) % m) * k + j);
        adj[id].push_back(((i + m - 1) % m) * k + j);
        if (k == 2) {
          adj[id].push_back(i * k + 1 - j);
        } else {
          adj[id].push_back(i * k + (j + 1) % k);
          adj[id].push_back(i * k + (j + k - 1) % k);
        }
      }
    }
    return adj;
  };
  auto check_cycle = [](const std::vector<GridVertex>& c, int m, int k, const std::vector<GridEdge>& forced) {
    std::set<GridVertex> seen(c.begin(), c.end());
    CHECK(static_cast<int>(seen.size()) == m * k);
    CHECK(static_cast<int>(c.size()) == m * k);
    auto adjacent = [&](GridVertex a, GridVertex b) {
      if (a.first == b.first) return k == 2 ? a.second != b.second : (a.second - b.second + k) % k == 1 || (b.second - a.second + k) % k == 1;
      return a.second == b.second && ((a.first - b.first + m) % m == 1 || (b.first - a.first + m) % m == 1);
    };
    std::set<std::pair<GridVertex, GridVertex>> edges;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const GridVertex a = c[i];
      const GridVertex b = c[(i + 1) % c.size()];
      CHECK(adjacent(a, b));
      edges.insert(std::minmax(a, b));
    }
    for (auto e : forced) CHECK(edges.count(std::minmax(e.first, e.second)) == 1);
  };

  for (int m = 3; m <= 5; ++m) {
    for (int k = 3; k <= 5; ++k) {
      const auto adj = grid(m, k);
      std::vector<GridEdge> all;
      for (int id = 0; id < m * k; ++id) {
        for (int nb : adj[id]) {
          if (nb > id) all.push_back({{id / k, id % k}, {nb / k, nb % k}});
        }
      }
      for (std::size_t a = 0; a < all.size(); a += 2) {
        for (std::size_t b = a + 1; b < all.size(); b += 3) {
          const std::vector<GridEdge> forced = {all[a], all[b]};
          std::vector<std::pair<int, int>> ids;
          for (auto [x, y] : forced) ids.emplace_back(x.first * k + x.second, y.first * k + y.second);
          const bool exists = search_hamiltonian_cycle(adj, ids).has_value();
          if (exists) {
            check_cycle(product_cycle_cycle(m, k, forced), m, k, forced);
          } else {
            CHECK_THROWS_AS(product_cycle_cycle(m, k, forced), InputError);
          }
        }
      }
    }
  }

  check_cycle(product_cycle_cycle(4, 4, {{{0, 0}, {0, 1}}, {{2, 3}, {3, 3}}}), 4, 4, {{{0, 0}, {0, 1}}, {{2, 3}, {3, 3}}});

  // C5 x edge with rungs at adjacent positions
  const std::vector<GridEdge> adjacent_rungs = {{{1, 0}, {1, 1}}, {{2, 0}, {2, 1}}};
  check_cycle(product_cycle_edge(5, adjacent_rungs), 5, 2, adjacent_rungs);
  // C6 x edge with antipodal rungs
  const std::vector<GridEdge> antipodal = {{{0, 0}, {0, 1}}, {{3, 0}, {3, 1}}};
  check_cycle(product_cycle_edge(6, antipodal), 6, 2, antipodal);
  // odd cycle with two rungs apart: rejected, and no cycle exists at all
  const std::vector<GridEdge> apart = {{{0, 0}, {0, 1}}, {{2, 0}, {2, 1}}};
  CHECK_THROWS_AS(product_cycle_edge(5, apart), InputError);
  CHECK_FALSE(search_hamiltonian_cycle(grid(5, 2), {{0, 1}, {4, 5}}).has_value());
}

TEST_CASE("verify_cycle negatives") {
  const Graph p3 = path_graph(3);
  const auto b = BuildingSet::graphical(p3);
  const FlipGraph f = FlipGraph::build(p3);
  const CycleWitness c = hamiltonian(p3);
  REQUIRE(c.tubings.size() == 5);
  const auto ids = cycle_ids(f, c);
  CHECK(verify_cycle(f, ids, {}));

  auto repeated = ids;
  repeated[1] = repeated[0];
  CHECK_FALSE(verify_cycle(f, repeated, {}));
  CHECK_FALSE(verify_cycle(f, std::vector<int>(ids.begin(), ids.end() - 1), {}));

  const Graph p4 = path_graph(4);
  const FlipGraph f4 = FlipGraph::build(p4);
  const CycleWitness c4 = hamiltonian(p4);
  const auto ids4 = cycle_ids(f4, c4);
  REQUIRE(verify_cycle(f4, ids4, {}));
  std::set<std::pair<int, int>> used;
  for (std::size_t i = 0; i < ids4.size(); ++i) used.insert(std::minmax(ids4[i], ids4[(i + 1) % ids4.size()]));
  bool found_missing = false;
  for (int x = 0; x < f4.size(); ++x) {
    for (int y : f4.neighbors(x)) {
      const Ridge r = Ridge::between(f4.members(x), f4.members(y));
      const bool in_cycle = used.count(std::minmax(x, y)) > 0;
      CHECK(verify_cycle(f4, ids4, {r}) == in_cycle);
      found_missing |= !in_cycle;
    }
  }
  CHECK(found_missing);
}

TEST_CASE("hamiltonian small graphs") {
  const CycleWitness pent = hamiltonian(path_graph(3));
  CHECK(pent.tubings.size() == 5);
  CHECK_THROWS_AS(hamiltonian(path_graph(2)), InputError);

  HamiltonianOptions low;
  low.base_threshold = 4;
  for (const Graph& g : {path_graph(5), complete_graph(5), star_graph(4), cycle_graph(6)}) {
    const auto b = BuildingSet::graphical(g);
    const FlipGraph f = FlipGraph::build(g);
    const auto sf = short_flips(g);
    int runs = 0;
    for (std::size_t i = 0; i < sf.size(); i += 5) {
      for (std::size_t j = 2; j < sf.size(); j += 7) {
        if (classify_ridge(b, sf[i]).short_root == classify_ridge(b, sf[j]).short_root) continue;
        HamiltonianStats stats;
        const CycleWitness c = hamiltonian(g, sf[i], sf[j], low, &stats);
        CHECK(verify_cycle(f, c, {sf[i], sf[j]}));
        CHECK(stats.top_method != "base");
        ++runs;
      }
    }
    CHECK(runs > 0);
  }

  const Graph two = Graph::build(5, {{0, 1}, {1, 2}, {3, 4}});
  HamiltonianStats stats;
  const CycleWitness c = hamiltonian(two, std::nullopt, std::nullopt, {}, &stats);
  CHECK(verify_cycle(FlipGraph::build(two), c, {}));
  CHECK(stats.top_method == "product");
}

TEST_CASE("star triples on four vertices") {
  const Graph g = star_graph(3);
  const auto b = BuildingSet::graphical(g);
  const FlipGraph f = FlipGraph::build(g);
  const auto sf = short_flips(g);
  int runs = 0;
  for (const Ridge& x : sf) {
    for (const Ridge& y : sf) {
      if (classify_ridge(b, x).short_root == classify_ridge(b, y).short_root) continue;
      for (Vertex leaf = 1; leaf <= 3; ++leaf) {
        for (const Ridge& l : long_flips_with_root(g, VertexSet{0, leaf})) {
          const CycleWitness c = hamiltonian_star(g, 0, x, y, l);
          CHECK(verify_cycle(f, c, {x, y, l}));
          ++runs;
        }
      }
    }
  }
  CHECK(runs > 0);
  CHECK_THROWS_AS(hamiltonian_star(path_graph(4), 1, sf[0], sf[1], sf[0]), InputError);
}

TEST_CASE("forced flips are validated") {
  const Graph p4 = path_graph(4);
  const auto b = BuildingSet::graphical(p4);
  const FlipGraph f = FlipGraph::build(p4);
  std::optional<Ridge> long_flip;
  for (int x = 0; x < f.size() && !long_flip; ++x) {
    for (int y : f.neighbors(x)) {
      const Ridge r = Ridge::between(f.members(x), f.members(y));
      if (classify_ridge(b, r).kind == FlipKind::Long) long_flip = r;
    }
  }
  REQUIRE(long_flip);
  CHECK_THROWS_AS(hamiltonian(p4, long_flip), InputError);
  const auto sf = short_flips(p4);
  const auto same = std::find_if(sf.begin() + 1, sf.end(), [&](const Ridge& r) {
    return classify_ridge(b, r).short_root == classify_ridge(b, sf[0]).short_root;
  });
  if (same != sf.end()) CHECK_THROWS_AS(hamiltonian(p4, sf[0], *same), InputError);
}
