#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "hamiltonian_internal.hpp"

namespace gassoc {

namespace {

int doubleton_node(const Spine& sp) {
  int found = -1;
  for (std::size_t i = 0; i < sp.labels.size(); ++i) {
    if (sp.labels[i].size() == 2) {
      if (found >= 0) throw InputError("ridge has more than one doubleton label");
      found = static_cast<int>(i);
    } else if (sp.labels[i].size() != 1) {
      throw InputError("ridge labels must be singletons and one doubleton");
    }
  }
  if (found < 0) throw InputError("ridge has no doubleton label");
  return found;
}

Tubing sorted_with(Tubing t, VertexSet extra) {
  if (std::find(t.begin(), t.end(), extra) == t.end()) t.push_back(extra);
  std::sort(t.begin(), t.end());
  return t;
}

int edges_within(const Graph& g, VertexSet s) { return g.induced(s).edge_count(); }

}  // namespace

Ridge Ridge::between(const Tubing& a, const Tubing& b) {
  Ridge r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.members));
  return r;
}

std::pair<Tubing, Tubing> Ridge::completions(const BuildingSet& b) const {
  const Spine sp = spine_of(members);
  const int d = doubleton_node(sp);
  const Vertex lo = sp.labels[d].min();
  const Vertex hi = sp.labels[d].without(lo).min();
  const VertexSet node = sp.nodes[d];
  return {sorted_with(members, b.block_of(node.without(lo), hi)), sorted_with(members, b.block_of(node.without(hi), lo))};
}

Ridge Ridge::without(VertexSet top) const {
  Ridge r;
  for (VertexSet m : members) {
    if (m != top) r.members.push_back(m);
  }
  return r;
}

Ridge Ridge::with(VertexSet top) const { return Ridge{sorted_with(members, top)}; }

std::string Ridge::serialize(const BuildingSet& b) const {
  std::vector<VertexSet> proper{};
  for (VertexSet m : members) {
    if (!b.is_maximal_member(m)) proper.push_back(m);
  }
  return serialize_sets(proper);
}

Ridge parse_ridge(const BuildingSet& b, const std::string& text) {
  auto shared = std::make_shared<const BuildingSet>(b);
  NestedSet n = parse_nested(shared, text);
  if (n.size() != b.ground().size() - 1) throw InputError("a ridge has exactly one member fewer than a maximal nested set");
  Ridge r{n.members()};
  doubleton_node(spine_of(r.members));
  return r;
}

FlipClass classify_ridge(const BuildingSet&, const Ridge& r) {
  const Spine sp = spine_of(r.members);
  const int d = doubleton_node(sp);
  FlipClass c;
  c.pair = sp.labels[d];
  if (sp.children[d].empty()) {
    c.kind = FlipKind::Short;
    c.short_leaf = c.pair;
    int child = d;
    while (sp.parent[child] >= 0 && sp.parent[sp.parent[child]] >= 0) child = sp.parent[child];
    const int root = sp.parent[child] >= 0 ? sp.parent[child] : child;
    c.short_child = sp.labels[child];
    c.short_root = sp.labels[root];
  } else if (sp.parent[d] < 0) {
    c.kind = FlipKind::Long;
    c.long_root = c.pair;
  }
  return c;
}

std::vector<Ridge> short_flips(const Graph& g) {
  const FlipGraph idx = FlipGraph::build(g);
  std::set<Ridge> out;
  for (int a = 0; a < idx.size(); ++a) {
    const auto ma = idx.members(a);
    for (int b : idx.neighbors(a)) {
      if (b < a) continue;
      Ridge r = Ridge::between(ma, idx.members(b));
      if (classify_ridge(idx.building(), r).kind == FlipKind::Short) out.insert(std::move(r));
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Ridge> long_flips_with_root(const Graph& g, VertexSet root_pair) {
  const FlipGraph idx = FlipGraph::build(g);
  std::set<Ridge> out;
  for (int a = 0; a < idx.size(); ++a) {
    const auto ma = idx.members(a);
    for (int b : idx.neighbors(a)) {
      if (b < a) continue;
      Ridge r = Ridge::between(ma, idx.members(b));
      const FlipClass c = classify_ridge(idx.building(), r);
      if (c.kind == FlipKind::Long && c.long_root == root_pair) out.insert(std::move(r));
    }
  }
  return {out.begin(), out.end()};
}

Tubing Bridge::corner(const Graph& g, Vertex root, Vertex leaf) const {
  const Vertex other = root == r ? r2 : r;
  Tubing t = sorted_with(members, g.component_of(g.ground().without(root), other));
  return sorted_with(std::move(t), VertexSet::singleton(leaf));
}

Ridge Bridge::short_flip(const Graph& g, Vertex root) const {
  const Vertex other = root == r ? r2 : r;
  return Ridge{sorted_with(members, g.component_of(g.ground().without(root), other))};
}

Ridge Bridge::long_flip(const Graph&, Vertex leaf) const {
  return Ridge{sorted_with(members, VertexSet::singleton(leaf))};
}

namespace {

/// Flip graphs of G minus a root pair, shared between bridge enumerations.
std::shared_ptr<const FlipGraph> cached_flip_graph(const Graph& g) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, std::vector<Edge>>, std::shared_ptr<const FlipGraph>> cache;
  auto key = std::make_pair(g.ground().bits(), g.edges());
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const FlipGraph>(FlipGraph::build(g));
  std::lock_guard lock(mutex);
  if (cache.size() > 4096) cache.clear();
  return cache.emplace(std::move(key), std::move(built)).first->second;
}

}  // namespace

namespace detail {

bool child_of_root(const Ridge& flip, Vertex root, Vertex v) {
  const Spine sp = spine_of(flip.members);
  for (std::size_t i = 0; i < sp.nodes.size(); ++i) {
    if (sp.labels[i] == VertexSet::singleton(v) && sp.parent[i] >= 0 &&
        sp.labels[sp.parent[i]] == VertexSet::singleton(root)) {
      return true;
    }
  }
  return false;
}

}  // namespace detail

using detail::child_of_root;

std::vector<Bridge> enumerate_bridges(const Graph& g, Vertex a, Vertex b, const BridgeConstraints& c) {
  const VertexSet ground = g.ground();
  const VertexSet rest = ground.without(a).without(b);
  const Graph sub = g.induced(rest);
  std::vector<Bridge> out{};
  if (sub.edge_count() == 0) return out;
  const auto idx = cached_flip_graph(sub);
  for (int id = 0; id < idx->size(); ++id) {
    const auto members = idx->members(id);
    for (VertexSet m : members) {
      if (m.size() != 2) continue;
      const Vertex lo = m.min();
      if (!std::binary_search(members.begin(), members.end(), VertexSet::singleton(lo))) continue;
      Bridge br;
      for (VertexSet x : members) {
        if (x != VertexSet::singleton(lo)) br.members.push_back(x);
      }
      br.members = sorted_with(std::move(br.members), ground);
      br.r = std::min(a, b);
      br.r2 = std::max(a, b);
      br.s = lo;
      br.s2 = m.without(lo).min();
      if (!m.contains(c.leaf_contains)) continue;
      if (c.forbidden_short_child) {
        const auto [root, label] = *c.forbidden_short_child;
        if (classify_ridge(BuildingSet{}, br.short_flip(g, root)).short_child == label) continue;
      }
      if (c.child_only_if_isolated) {
        const auto [root, v] = *c.child_only_if_isolated;
        if (child_of_root(br.short_flip(g, root), root, v) && !(g.neighbors(v) & rest).empty()) continue;
      }
      out.push_back(std::move(br));
    }
  }
  std::sort(out.begin(), out.end(), [](const Bridge& x, const Bridge& y) { return x.serialize() < y.serialize(); });
  return out;
}

bool in_conflict(const Graph& g, Vertex w, const Ridge& f) {
  const FlipClass c = classify_ridge(BuildingSet{}, f);
  if (c.kind != FlipKind::Short) throw InputError("conflicts are defined for short flips");
  if (c.short_root.size() != 1) throw InputError("conflicts need a short flip with a single root vertex");
  const Vertex v = c.short_root.min();
  if (w == v) throw InputError("vertex coincides with the root of the short flip");
  if (c.short_leaf.contains(w)) return false;

  const Spine sp = spine_of(f.members);
  const int root = sp.find(g.ground());
  const VertexSet without_v = g.ground().without(v);
  const Graph rest = g.induced(without_v.without(w));
  const int edges_v = edges_within(g, without_v);
  bool one_edge_is_leaf = false;
  if (rest.edge_count() == 1) {
    const auto [x, y] = rest.edges().front();
    one_edge_is_leaf = VertexSet::singleton(x).with(y) == c.short_leaf;
  }

  bool others_isolated = true;
  bool w_child = false;
  for (int ch : sp.children[root]) {
    if (sp.labels[ch] == VertexSet::singleton(w)) w_child = true;
    if (sp.labels[ch] != c.short_child && sp.nodes[ch].size() != 1) others_isolated = false;
  }
  const bool cond_a = c.short_child == VertexSet::singleton(w) && others_isolated;
  const bool cond_b = edges_v >= 3 && one_edge_is_leaf;
  const bool cond_c = edges_v == 2 && one_edge_is_leaf && w_child;
  return cond_a || cond_b || cond_c;
}

std::vector<Edge> totally_disconnecting_pairs(const Graph& g) {
  std::vector<Edge> out{};
  const auto vs = g.ground().to_vector();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (edges_within(g, g.ground().without(vs[i]).without(vs[j])) == 0) out.emplace_back(vs[i], vs[j]);
    }
  }
  return out;
}

int disconnected_count(const Graph& g, Vertex v) {
  const VertexSet rest = g.ground().without(v);
  int total = 0;
  int largest = 0;
  for (VertexSet c : g.components(rest)) {
    total += c.size();
    largest = std::max(largest, c.size());
  }
  return total - largest;
}

std::vector<Vertex> almost_leaves(const Graph& g, Vertex first, Vertex last) {
  std::vector<Vertex> none{};
  std::vector<Vertex> one{};
  for (Vertex v : g.ground()) {
    if (v == first || v == last) continue;
    const int k = disconnected_count(g, v);
    if (k == 0) none.push_back(v);
    if (k == 1) one.push_back(v);
  }
  none.insert(none.end(), one.begin(), one.end());
  return none;
}

namespace detail {

Vertex single_root(const Ridge& f) {
  const FlipClass c = classify_ridge(BuildingSet{}, f);
  if (c.kind != FlipKind::Short) throw InputError("forced flip is not a short flip");
  if (c.short_root.size() != 1) throw InputError("forced flip has no single root vertex");
  return c.short_root.min();
}

}  // namespace detail

using detail::single_root;

namespace {

struct OrderingSearch {
  const Graph& g;
  Vertex first, last;
  const Ridge& f;
  const Ridge& f2;
  std::set<Edge> d{};
  std::vector<Vertex> order{};
  VertexSet used;
  std::size_t slots = 0;
  std::size_t limit = 1;
  std::vector<std::vector<Vertex>> found{};

  bool in_d(Vertex x, Vertex y) const { return d.count({std::min(x, y), std::max(x, y)}) > 0; }

  void run() {
    if (found.size() >= limit) return;
    if (order.size() == slots + 1) {
      if (in_d(order.back(), last)) return;
      if (slots >= 1 && in_conflict(g, order.back(), f2)) return;
      found.push_back(order);
      found.back().push_back(last);
      return;
    }
    for (Vertex x : g.ground() - used) {
      if (in_d(order.back(), x)) continue;
      if (order.size() == 1 && in_conflict(g, x, f)) continue;
      order.push_back(x);
      used = used.with(x);
      run();
      used = used.without(x);
      order.pop_back();
      if (found.size() >= limit) return;
    }
  }
};

}  // namespace

std::vector<std::vector<Vertex>> valid_orderings(const Graph& g, const Ridge& f, const Ridge& f2, std::size_t limit) {
  const Vertex first = single_root(f);
  const Vertex last = single_root(f2);
  if (first == last) throw InputError("forced flips must have distinct short roots");
  OrderingSearch s{g, first, last, f, f2, {}, {first}, VertexSet::singleton(first).with(last)};
  for (Edge e : totally_disconnecting_pairs(g)) s.d.insert(e);
  s.slots = static_cast<std::size_t>(g.vertex_count()) - 2;
  s.limit = limit;
  s.run();
  return s.found;
}

std::vector<Vertex> order_vertices(const Graph& g, const Ridge& f, const Ridge& f2) {
  auto all = valid_orderings(g, f, f2, 1);
  return all.empty() ? std::vector<Vertex>{} : all.front();
}

bool ordering_valid(const Graph& g, const Ridge& f, const Ridge& f2, const std::vector<Vertex>& order) {
  if (static_cast<int>(order.size()) != g.vertex_count() || order.size() < 3) return false;
  VertexSet seen;
  for (Vertex v : order) seen = seen.with(v);
  if (seen != g.ground()) return false;
  if (order.front() != single_root(f) || order.back() != single_root(f2)) return false;
  if (in_conflict(g, order[1], f) || in_conflict(g, order[order.size() - 2], f2)) return false;
  const auto d = totally_disconnecting_pairs(g);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const Edge e{std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1])};
    if (std::find(d.begin(), d.end(), e) != d.end()) return false;
  }
  return true;
}

namespace detail {

FixedRootShape fixed_root_shape(const Graph& g, Vertex v) {
  const Graph sub = g.induced(g.ground().without(v));
  const int e = sub.edge_count();
  if (e == 0) return FixedRootShape::Point;
  if (e == 1) return FixedRootShape::Single;
  if (e == 2) {
    const auto edges = sub.edges();
    const auto [a, b] = edges[0];
    const auto [c, d] = edges[1];
    if (a != c && a != d && b != c && b != d) return FixedRootShape::Square;
  }
  return FixedRootShape::Larger;
}

}  // namespace detail

using detail::fixed_root_shape;
using detail::FixedRootShape;

bool fixed_root_pair_ok(const Graph& g, Vertex v, const Ridge& a, const Ridge& b) {
  switch (fixed_root_shape(g, v)) {
    case FixedRootShape::Point:
      return false;
    case FixedRootShape::Single:
      return a == b;
    case FixedRootShape::Square:
      return a != b;
    case FixedRootShape::Larger:
      break;
  }
  return classify_ridge(BuildingSet{}, a).short_child != classify_ridge(BuildingSet{}, b).short_child;
}

namespace detail {

/// 0: every first-mode condition; 1: the "child of the root" clause
/// relaxed; 2: only the pair condition at v1;
/// 3: unusable.
int first_mode_tier(const Graph& g, Vertex v1, Vertex v2, std::optional<Vertex> v3, const Ridge& f, const Bridge& br) {
  const Ridge at_v1 = br.short_flip(g, v1);
  if (!fixed_root_pair_ok(g, v1, f, at_v1)) return 3;
  if (!v3) return 0;
  const Ridge at_v2 = br.short_flip(g, v2);
  int tier = 0;
  if (in_conflict(g, *v3, at_v2)) tier = 2;
  const VertexSet rest = g.ground().without(v1).without(v2);
  const bool isolated = (g.neighbors(*v3) & rest).empty();
  if (child_of_root(at_v2, v2, *v3) && !isolated) {
    const bool short_child = classify_ridge(BuildingSet{}, at_v1).short_child == VertexSet::singleton(*v3);
    tier = std::max(tier, short_child ? 1 : 2);
  }
  return tier;
}

}  // namespace detail

using detail::first_mode_tier;

std::optional<Bridge> select_bridge_first(const Graph& g, Vertex v1, Vertex v2, Vertex v3, const Ridge& f) {
  for (const Bridge& br : enumerate_bridges(g, v1, v2)) {
    if (first_mode_tier(g, v1, v2, v3, f, br) == 0) return br;
  }
  return std::nullopt;
}

Bridge select_bridge_middle(const Graph& g, Vertex v, Vertex w, const Ridge& gf, const Ridge& hf) {
  if (edges_within(g, g.ground().without(v).without(w)) == 0) throw InputError("hypothesis (i) fails: no edge outside {v, w}");
  if (single_root(gf) != v || single_root(hf) != w) throw InputError("forced flips must have roots v and w");
  if (in_conflict(g, w, gf) || in_conflict(g, v, hf)) throw InputError("hypothesis (ii) fails: conflict with a forced flip");
  if (child_of_root(hf, w, v) && !(g.neighbors(v) & g.ground().without(w)).empty()) {
    throw InputError("hypothesis (iii) fails: {v} is a non-isolated child of w");
  }
  if (disconnected_count(g, v) > 1) throw InputError("hypothesis (iv) fails: v disconnects more than one vertex");
  if (disconnected_count(g, v) == 1) {
    const auto comps = g.components(g.ground().without(v));
    for (VertexSet c : comps) {
      if (c == VertexSet::singleton(w)) throw InputError("hypothesis (iv) fails: v disconnects w");
    }
  }
  for (const Bridge& br : enumerate_bridges(g, v, w)) {
    if (fixed_root_pair_ok(g, v, gf, br.short_flip(g, v)) && fixed_root_pair_ok(g, w, hf, br.short_flip(g, w))) return br;
  }
  throw InputError("no bridge with root {v, w} meets the conclusion");
}

}  // namespace gassoc
