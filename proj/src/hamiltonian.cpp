#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

#include "hamiltonian_internal.hpp"

namespace gassoc {

using detail::FixedRootShape;

namespace {

struct TubingHash {
  std::size_t operator()(const Tubing& t) const {
    std::size_t h = t.size();
    VertexSetHash vh;
    for (VertexSet v : t) h = h * 1000003u ^ vh(v);
    return h;
  }
};

Tubing with_member(Tubing t, VertexSet m) {
  if (std::find(t.begin(), t.end(), m) == t.end()) t.push_back(m);
  std::sort(t.begin(), t.end());
  return t;
}

Tubing merged(const Tubing& a, const Tubing& b) {
  Tubing out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Tubing inside(const Tubing& t, VertexSet part) {
  Tubing out;
  for (VertexSet m : t) {
    if (part.contains(m)) out.push_back(m);
  }
  return out;
}

std::vector<Tubing> lifted(std::vector<Tubing> cycle, VertexSet top) {
  for (auto& t : cycle) t = with_member(std::move(t), top);
  return cycle;
}

/// Union of cycles as an edge multiset, edited by removing and adding edges,
/// then traced back into a single cycle.
class Gluer {
 public:
  void add_cycle(const std::vector<Tubing>& cycle) {
    for (std::size_t i = 0; i < cycle.size(); ++i) add(cycle[i], cycle[(i + 1) % cycle.size()]);
  }
  void add(const Tubing& a, const Tubing& b) {
    const int x = id(a);
    const int y = id(b);
    adj_[x].push_back(y);
    adj_[y].push_back(x);
  }
  void remove(const Tubing& a, const Tubing& b) {
    const int x = id(a);
    const int y = id(b);
    auto drop = [&](int p, int q) {
      auto it = std::find(adj_[p].begin(), adj_[p].end(), q);
      if (it == adj_[p].end()) throw std::logic_error("gluing removes an edge that is not in the cycles");
      adj_[p].erase(it);
    };
    drop(x, y);
    drop(y, x);
  }
  std::vector<Tubing> trace() const {
    const int n = static_cast<int>(tubings_.size());
    for (int v = 0; v < n; ++v) {
      if (adj_[v].size() != 2) throw std::logic_error("glued cycles leave a vertex of degree other than two");
    }
    std::vector<Tubing> out;
    std::vector<char> seen(n, 0);
    int prev = -1;
    int cur = 0;
    while (!seen[cur]) {
      seen[cur] = 1;
      out.push_back(tubings_[cur]);
      const int next = adj_[cur][0] != prev ? adj_[cur][0] : adj_[cur][1];
      prev = cur;
      cur = next;
    }
    if (static_cast<int>(out.size()) != n) throw std::logic_error("glued cycles do not form a single cycle");
    return out;
  }

 private:
  int id(const Tubing& t) {
    auto [it, fresh] = index_.try_emplace(t, static_cast<int>(tubings_.size()));
    if (fresh) {
      tubings_.push_back(t);
      adj_.emplace_back();
    }
    return it->second;
  }
  std::unordered_map<Tubing, int, TubingHash> index_;
  std::vector<Tubing> tubings_;
  std::vector<std::vector<int>> adj_;
};

/// Cycles found by exhaustive search, pooled per graph: a new forced set is
/// first matched against the cycles already known.
struct CyclePool {
  std::shared_ptr<const FlipGraph> idx;
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<int>> cycles;
  std::vector<std::set<std::pair<int, int>>> edges;
};

std::mutex cache_mutex;
std::map<std::pair<std::uint64_t, std::vector<Edge>>, std::shared_ptr<CyclePool>> search_cache;

std::shared_ptr<CyclePool> pool_for(const Graph& g) {
  auto key = std::make_pair(g.ground().bits(), g.edges());
  {
    std::lock_guard lock(cache_mutex);
    auto it = search_cache.find(key);
    if (it != search_cache.end()) return it->second;
  }
  auto pool = std::make_shared<CyclePool>();
  pool->idx = std::make_shared<const FlipGraph>(FlipGraph::build(g));
  pool->adj.resize(pool->idx->size());
  for (int v = 0; v < pool->idx->size(); ++v) pool->adj[v] = pool->idx->neighbors(v);
  std::lock_guard lock(cache_mutex);
  return search_cache.emplace(std::move(key), std::move(pool)).first->second;
}

struct Builder {
  const HamiltonianOptions& opt;
  HamiltonianStats* stats;

  void count(std::uint64_t HamiltonianStats::*field) {
    if (stats) ++(stats->*field);
  }

  std::vector<Tubing> exhaustive(const Graph& g, const std::vector<Ridge>& forced) {
    const auto pool = pool_for(g);
    const FlipGraph& idx = *pool->idx;
    std::vector<std::pair<int, int>> wanted;
    for (const Ridge& r : forced) {
      const auto [a, b] = r.completions(idx.building());
      const int x = idx.find(a);
      const int y = idx.find(b);
      if (x < 0 || y < 0 || !idx.adjacent(x, y)) throw InputError("forced ridge is not a ridge of this flip graph");
      wanted.emplace_back(std::min(x, y), std::max(x, y));
    }
    auto to_tubings = [&](const std::vector<int>& ids) {
      std::vector<Tubing> out;
      out.reserve(ids.size());
      for (int id : ids) out.push_back(idx.members(id));
      return out;
    };
    {
      std::lock_guard lock(cache_mutex);
      for (std::size_t k = 0; k < pool->cycles.size(); ++k) {
        const auto& e = pool->edges[k];
        if (std::all_of(wanted.begin(), wanted.end(), [&](const auto& w) { return e.count(w) > 0; })) {
          return to_tubings(pool->cycles[k]);
        }
      }
    }
    auto found = search_hamiltonian_cycle(pool->adj, wanted);
    if (!found) throw std::logic_error("exhaustive search found no Hamiltonian cycle through the forced flips");
    std::set<std::pair<int, int>> e;
    for (std::size_t i = 0; i < found->size(); ++i) {
      const int a = (*found)[i];
      const int b = (*found)[(i + 1) % found->size()];
      e.emplace(std::min(a, b), std::max(a, b));
    }
    std::lock_guard lock(cache_mutex);
    if (pool->cycles.size() < 4096) {
      pool->cycles.push_back(*found);
      pool->edges.push_back(std::move(e));
    }
    return to_tubings(*found);
  }

  /// A short flip of G whose short root label differs from `avoid`, or nullopt.
  /// With `root` set, the short root must be that vertex.
  std::optional<Ridge> make_short_flip(const Graph& g, VertexSet avoid, std::optional<Vertex> root = std::nullopt) {
    const BuildingSet b = BuildingSet::graphical(g);
    for (VertexSet comp : g.components()) {
      if (g.induced(comp).edge_count() == 0) continue;
      if (g.induced(comp).edge_count() == 1 && comp.size() == 2) {
        if (comp == avoid || root) continue;
        Tubing full = complete_maximal(b, b.maximal());
        full.erase(std::find(full.begin(), full.end(), VertexSet::singleton(comp.min())));
        return Ridge{full};
      }
      for (Vertex rho : comp) {
        if (root && rho != *root) continue;
        if (VertexSet::singleton(rho) == avoid) continue;
        const VertexSet rest = comp.without(rho);
        const Graph sub = g.induced(rest);
        if (sub.edge_count() == 0) continue;
        std::vector<VertexSet> members = b.maximal();
        for (VertexSet block : g.components(rest)) members.push_back(block);
        const auto [a, c] = sub.edges().front();
        const VertexSet pair = VertexSet::singleton(a).with(c);
        members.push_back(pair);
        members.push_back(VertexSet::singleton(a));
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        Tubing full = complete_maximal(b, members);
        full.erase(std::find(full.begin(), full.end(), VertexSet::singleton(a)));
        return Ridge{full};
      }
    }
    return std::nullopt;
  }

  std::pair<Ridge, Ridge> defaults(const Graph& g, const std::optional<Ridge>& f, const std::optional<Ridge>& f2) {
    const BuildingSet b = BuildingSet::graphical(g);
    auto root_of = [&](const Ridge& r) { return classify_ridge(b, r).short_root; };
    Ridge a = f ? *f : *make_short_flip(g, f2 ? root_of(*f2) : VertexSet{});
    std::optional<Ridge> c = f2 ? f2 : make_short_flip(g, root_of(a));
    if (!c) throw InputError("graph has no two short flips with distinct short roots");
    return {a, *c};
  }

  std::vector<Tubing> build(const Graph& g, const std::optional<Ridge>& f, const std::optional<Ridge>& f2,
                            std::string* method = nullptr) {
    const auto comps = g.components();
    if (comps.size() > 1) {
      if (method) *method = "product";
      return product(g, f, f2);
    }
    if (g.is_star()) {
      if (method) *method = "star";
      return star_entry(g, f, f2);
    }
    std::vector<Ridge> forced;
    if (f) forced.push_back(*f);
    if (f2) forced.push_back(*f2);
    if (g.vertex_count() <= opt.base_threshold) {
      if (method) *method = "base";
      count(&HamiltonianStats::base);
      return exhaustive(g, forced);
    }
    const auto [a, c] = defaults(g, f, f2);
    if (auto cycle = generic(g, a, c)) {
      if (method) *method = "generic";
      count(&HamiltonianStats::generic);
      return *cycle;
    }
    if (opt.allow_fallback && FlipGraph::build(g).size() <= opt.fallback_limit) {
      if (method) *method = "fallback";
      count(&HamiltonianStats::fallback);
      return exhaustive(g, forced);
    }
    throw std::logic_error("construction failed and the graph is too large for exhaustive search");
  }

  // ---- disconnected graphs -------------------------------------------------

  std::vector<Tubing> product(const Graph& g, const std::optional<Ridge>& f, const std::optional<Ridge>& f2) {
    count(&HamiltonianStats::products);
    const BuildingSet b = BuildingSet::graphical(g);
    std::vector<Ridge> forced;
    if (f) forced.push_back(*f);
    if (f2) forced.push_back(*f2);

    Tubing points;
    std::vector<std::pair<VertexSet, std::vector<Tubing>>> cycles;
    std::vector<std::pair<VertexSet, std::vector<Tubing>>> edges;
    for (VertexSet comp : g.components()) {
      const Graph sub = g.induced(comp);
      const int e = sub.edge_count();
      if (e == 0) {
        points.push_back(comp);
      } else if (e == 1) {
        const Vertex lo = comp.min();
        const Vertex hi = comp.without(lo).min();
        edges.push_back({comp, {with_member({comp}, VertexSet::singleton(lo)), with_member({comp}, VertexSet::singleton(hi))}});
      } else {
        std::optional<Ridge> local;
        std::optional<Ridge> local2;
        for (const Ridge& r : forced) {
          if (!comp.contains(classify_ridge(b, r).short_leaf)) continue;
          (local ? local2 : local) = Ridge{inside(r.members, comp)};
        }
        cycles.push_back({comp, build(sub, local, local2)});
      }
    }
    auto factors = cycles;
    factors.insert(factors.end(), edges.begin(), edges.end());
    if (factors.empty() || (factors.size() == 1 && cycles.empty())) throw InputError("graph needs at least two edges");

    std::vector<std::pair<Tubing, Tubing>> forced_pairs;
    for (const Ridge& r : forced) forced_pairs.push_back(r.completions(b));

    VertexSet done = factors[0].first;
    std::vector<Tubing> current = factors[0].second;
    std::size_t next = 1;
    if (cycles.empty()) {
      // two single-edge factors make a square
      const auto& x = factors[0].second;
      const auto& y = factors[1].second;
      current = {merged(x[0], y[0]), merged(x[0], y[1]), merged(x[1], y[1]), merged(x[1], y[0])};
      done |= factors[1].first;
      next = 2;
    }
    for (; next < factors.size(); ++next) {
      const VertexSet part = factors[next].first;
      const auto& other = factors[next].second;
      std::map<Tubing, int> at_r;
      std::map<Tubing, int> at_x;
      for (std::size_t i = 0; i < current.size(); ++i) at_r[current[i]] = static_cast<int>(i);
      for (std::size_t j = 0; j < other.size(); ++j) at_x[other[j]] = static_cast<int>(j);
      auto split = [&](const Tubing& t) {
        Tubing r;
        for (VertexSet m : t) {
          if (done.contains(m)) r.push_back(m);
        }
        return GridVertex{at_r.at(r), at_x.at(inside(t, part))};
      };
      std::vector<GridEdge> grid_forced;
      for (const auto& [t1, t2] : forced_pairs) {
        const GridVertex a = split(t1);
        const GridVertex c = split(t2);
        if (a != c) grid_forced.emplace_back(a, c);
      }
      const int m = static_cast<int>(current.size());
      const auto grid = other.size() == 2 ? product_cycle_edge(m, grid_forced)
                                          : product_cycle_cycle(m, static_cast<int>(other.size()), grid_forced);
      std::vector<Tubing> out;
      out.reserve(grid.size());
      for (auto [i, j] : grid) out.push_back(merged(current[i], other[j]));
      current = std::move(out);
      done |= part;
    }
    std::sort(points.begin(), points.end());
    for (auto& t : current) t = merged(t, points);
    return current;
  }

  // ---- stars ---------------------------------------------------------------

  static Vertex star_center(const Graph& g) {
    for (Vertex v : g.ground()) {
      if ((g.neighbors(v) | VertexSet::singleton(v)) == g.ground()) return v;
    }
    throw InputError("graph is not a star");
  }

  /// Long flip of a star with root label {x, center}: every other label a leaf.
  static Ridge star_long_flip(VertexSet ground, Vertex center, Vertex x) {
    Tubing t{ground};
    for (Vertex y : ground) {
      if (y != x && y != center) t.push_back(VertexSet::singleton(y));
    }
    std::sort(t.begin(), t.end());
    return Ridge{t};
  }

  std::vector<Tubing> star_entry(const Graph& g, const std::optional<Ridge>& f, const std::optional<Ridge>& f2) {
    const Vertex c = star_center(g);
    const auto [a, b] = defaults(g, f, f2);
    const Vertex leaf = g.ground().without(c).min();
    return star(g, c, a, b, star_long_flip(g.ground(), c, leaf));
  }

  std::vector<Tubing> star(const Graph& g, Vertex c, Ridge f, Ridge f2, const Ridge& l) {
    count(&HamiltonianStats::stars);
    const VertexSet w = g.ground();
    const BuildingSet b = BuildingSet::graphical(g);
    const FlipClass cf = classify_ridge(b, f);
    const FlipClass cf2 = classify_ridge(b, f2);
    const FlipClass cl = classify_ridge(b, l);
    if (cf.kind != FlipKind::Short || cf2.kind != FlipKind::Short) throw InputError("star needs two short flips");
    if (cf.short_root == cf2.short_root) throw InputError("short flips must have distinct roots");
    if (cl.kind != FlipKind::Long || !cl.long_root.contains(c)) throw InputError("long flip must have root {r'', center}");

    if (w.size() == 3) {
      const FlipGraph idx = FlipGraph::build(g);
      std::vector<Tubing> out;
      int prev = -1;
      int cur = 0;
      for (int k = 0; k < idx.size(); ++k) {
        out.push_back(idx.members(cur));
        const auto nb = idx.neighbors(cur);
        const int next = nb[0] != prev ? nb[0] : nb[1];
        prev = cur;
        cur = next;
      }
      return out;
    }
    if (w.size() == 4) return exhaustive(g, {f, f2, l});

    Vertex r = cf.short_root.min();
    Vertex r1 = cf2.short_root.min();
    const Vertex r2 = cl.long_root.without(c).min();
    auto sub = [&](Vertex v) { return g.induced(w.without(v)); };
    auto tail = [&](const Ridge& x) { return x.without(w); };
    auto extra_short = [&](Vertex v, const Ridge& t) {
      const Graph s = sub(v);
      return *make_short_flip(s, classify_ridge(BuildingSet{}, t).short_root);
    };
    auto any_long = [&](Vertex v) {
      const VertexSet sw = w.without(v);
      return star_long_flip(sw, c, sw.without(c).min());
    };
    auto first_bridge = [&](Vertex x, Vertex y) {
      auto all = enumerate_bridges(g, x, y);
      if (all.empty()) throw std::logic_error("star has no bridge with the requested root");
      return all.front();
    };

    Gluer glue;
    auto add_star_join = [&](Vertex x, Vertex y) {
      // exchange (x/⊛)–(x/y/⊛) and (y/⊛)–(y/x/⊛) for the two long flips through ⊛
      Tubing top{w};
      for (Vertex z : w) {
        if (z != c) top.push_back(VertexSet::singleton(z));
      }
      std::sort(top.begin(), top.end());
      auto below = [&](std::vector<Vertex> chain) {
        Tubing t{w};
        VertexSet cur = w;
        for (Vertex v : chain) {
          cur = cur.without(v);
          t.push_back(cur);
        }
        for (Vertex z : cur) {
          if (z != c) t.push_back(VertexSet::singleton(z));
        }
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        return t;
      };
      glue.remove(below({x}), below({x, y}));
      glue.remove(below({y}), below({y, x}));
      glue.add(below({x}), top);
      glue.add(top, below({y}));
      glue.add(below({x, y}), below({y, x}));
    };
    auto add_bridge = [&](const Bridge& br, Vertex x, Vertex y) {
      glue.remove(br.corner(g, x, br.s), br.corner(g, x, br.s2));
      glue.remove(br.corner(g, y, br.s), br.corner(g, y, br.s2));
      glue.add(br.corner(g, x, br.s), br.corner(g, y, br.s));
      glue.add(br.corner(g, x, br.s2), br.corner(g, y, br.s2));
    };
    auto rec = [&](Vertex v, const Ridge& a, const Ridge& bb, const Ridge& ll) {
      glue.add_cycle(lifted(star(sub(v), c, a, bb, ll), w));
    };

    std::vector<Vertex> rest;
    if (r2 == r || r2 == r1) {
      if (r2 == r1) {
        std::swap(f, f2);
        std::swap(r, r1);
      }
      const FlipClass c2 = classify_ridge(b, f2);
      const Vertex w1 = c2.short_child.min();
      for (Vertex v : w) {
        if (v != c && v != r && v != r1) rest.push_back(v);
      }
      if (rest.front() == w1) std::swap(rest[0], rest[1]);
      std::vector<Bridge> bridges;
      Vertex prev = r1;
      for (Vertex v : rest) {
        bridges.push_back(first_bridge(prev, v));
        prev = v;
      }
      const Ridge tf = tail(f);
      rec(r, tf, extra_short(r, tf), star_long_flip(w.without(r), c, r1));
      rec(r1, tail(f2), tail(bridges[0].short_flip(g, r1)), star_long_flip(w.without(r1), c, r));
      for (std::size_t i = 0; i < rest.size(); ++i) {
        const Ridge in = tail(bridges[i].short_flip(g, rest[i]));
        const Ridge out = i + 1 < rest.size() ? tail(bridges[i + 1].short_flip(g, rest[i])) : extra_short(rest[i], in);
        rec(rest[i], in, out, any_long(rest[i]));
      }
      add_star_join(r, r1);
      prev = r1;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        add_bridge(bridges[i], prev, rest[i]);
        prev = rest[i];
      }
      return glue.trace();
    }

    // r'' distinct from both roots
    for (Vertex v : w) {
      if (v != c && v != r && v != r1 && v != r2) rest.push_back(v);
    }
    std::vector<Bridge> bridges;
    Vertex prev = r2;
    for (Vertex v : rest) {
      bridges.push_back(first_bridge(prev, v));
      prev = v;
    }
    // parallel short flips between F_x and F_{r'} through a bridge with root {x, r'}
    auto parallel = [&](Vertex x) {
      const Ridge t = *make_short_flip(sub(x), VertexSet{}, r1);
      Bridge br;
      br.members = t.with(w).without(w.without(x)).members;
      br.r = std::min(x, r1);
      br.r2 = std::max(x, r1);
      const FlipClass ct = classify_ridge(BuildingSet{}, t);
      br.s = ct.short_leaf.min();
      br.s2 = ct.short_leaf.without(br.s).min();
      return std::make_pair(t, br);
    };
    const auto [h, bridge_h] = parallel(r2);
    const Vertex last = rest.back();
    const auto [k, bridge_k] = parallel(last);

    const Ridge tf = tail(f);
    rec(r, tf, extra_short(r, tf), star_long_flip(w.without(r), c, r2));
    rec(r2, h, tail(bridges[0].short_flip(g, r2)), star_long_flip(w.without(r2), c, r));
    for (std::size_t i = 0; i < rest.size(); ++i) {
      const Ridge in = tail(bridges[i].short_flip(g, rest[i]));
      const Ridge out = i + 1 < rest.size() ? tail(bridges[i + 1].short_flip(g, rest[i])) : k;
      rec(rest[i], in, out, any_long(rest[i]));
    }
    const Vertex w1 = classify_ridge(b, f2).short_child.min();
    const bool through_h = w1 != r2;
    const Bridge& link = through_h ? bridge_h : bridge_k;
    const Vertex linked = through_h ? r2 : last;
    rec(r1, tail(f2), tail(link.short_flip(g, r1)), any_long(r1));

    add_star_join(r, r2);
    prev = r2;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      add_bridge(bridges[i], prev, rest[i]);
      prev = rest[i];
    }
    add_bridge(link, linked, r1);
    return glue.trace();
  }

  // ---- connected non-star graphs -------------------------------------------

  struct Chain {
    std::vector<Vertex> order;
    std::vector<std::optional<Bridge>> bridges;
  };

  std::optional<std::vector<Tubing>> generic(const Graph& g, const Ridge& f, const Ridge& f2) {
    const auto orderings = valid_orderings(g, f, f2, 24);
    for (const auto& order : orderings) {
      for (Vertex leaf : almost_leaves(g, order.front(), order.back())) {
        Chain chain{order, std::vector<std::optional<Bridge>>(order.size() - 1)};
        const int p = static_cast<int>(std::find(order.begin(), order.end(), leaf) - order.begin());
        int budget = 4000;
        if (choose(g, f, f2, chain, p, 0, budget)) return glue_chain(g, f, f2, chain);
      }
    }
    return std::nullopt;
  }

  /// Selection sequence: forward bridges 0..p-1, backward bridges N-2..p+1, then bridge p.
  bool choose(const Graph& g, const Ridge& f, const Ridge& f2, Chain& ch, int p, int step, int& budget) {
    const auto& o = ch.order;
    const int last = static_cast<int>(o.size()) - 2;
    const int forward = p;
    const int backward = last - p;
    if (step == forward + backward + 1) return true;
    if (--budget < 0) return false;

    int j;
    std::vector<std::pair<int, Bridge>> ranked;
    if (step < forward || step < forward + backward) {
      const bool fwd = step < forward;
      j = fwd ? step : last - (step - forward);
      const Vertex a = fwd ? o[j] : o[j + 1];
      const Vertex bb = fwd ? o[j + 1] : o[j];
      const Vertex next = fwd ? o[j + 2] : o[j - 1];
      const Ridge incoming = fwd ? (j == 0 ? f : ch.bridges[j - 1]->short_flip(g, a))
                                 : (j == last ? f2 : ch.bridges[j + 1]->short_flip(g, a));
      for (Bridge& br : enumerate_bridges(g, a, bb)) {
        const int tier = detail::first_mode_tier(g, a, bb, next, incoming, br);
        if (tier < 3) ranked.emplace_back(tier, std::move(br));
      }
    } else {
      j = p;
      const Ridge gin = j == 0 ? f : ch.bridges[j - 1]->short_flip(g, o[j]);
      const Ridge hin = j == last ? f2 : ch.bridges[j + 1]->short_flip(g, o[j + 1]);
      for (Bridge& br : enumerate_bridges(g, o[j], o[j + 1])) {
        if (fixed_root_pair_ok(g, o[j], gin, br.short_flip(g, o[j])) &&
            fixed_root_pair_ok(g, o[j + 1], hin, br.short_flip(g, o[j + 1]))) {
          ranked.emplace_back(0, std::move(br));
        }
      }
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t k = 0; k < ranked.size(); ++k) {
      if (k > 0 || ranked[k].first > 0) count(&HamiltonianStats::bridge_backtracks);
      ch.bridges[j] = ranked[k].second;
      if (choose(g, f, f2, ch, p, step + 1, budget)) return true;
      if (budget < 0) break;
    }
    ch.bridges[j].reset();
    return false;
  }

  std::vector<Tubing> glue_chain(const Graph& g, const Ridge& f, const Ridge& f2, const Chain& ch) {
    const VertexSet w = g.ground();
    const auto& o = ch.order;
    const int n = static_cast<int>(o.size());
    Gluer glue;
    for (int t = 0; t < n; ++t) {
      const Vertex v = o[t];
      const Ridge in = t == 0 ? f : ch.bridges[t - 1]->short_flip(g, v);
      const Ridge out = t == n - 1 ? f2 : ch.bridges[t]->short_flip(g, v);
      const Graph sub = g.induced(w.without(v));
      switch (detail::fixed_root_shape(g, v)) {
        case FixedRootShape::Single: {
          const BuildingSet b = BuildingSet::graphical(g);
          const auto [x, y] = in.completions(b);
          glue.add_cycle({x, y});
          break;
        }
        case FixedRootShape::Square:
          glue.add_cycle(lifted(build(sub, std::nullopt, std::nullopt), w));
          break;
        case FixedRootShape::Larger:
          glue.add_cycle(lifted(build(sub, in.without(w), out.without(w)), w));
          break;
        case FixedRootShape::Point:
          throw std::logic_error("fixed-root subgraph reduced to a point in a non-star graph");
      }
    }
    for (int j = 0; j + 1 < n; ++j) {
      const Bridge& br = *ch.bridges[j];
      const Vertex x = o[j];
      const Vertex y = o[j + 1];
      glue.remove(br.corner(g, x, br.s), br.corner(g, x, br.s2));
      glue.remove(br.corner(g, y, br.s), br.corner(g, y, br.s2));
      glue.add(br.corner(g, x, br.s), br.corner(g, y, br.s));
      glue.add(br.corner(g, x, br.s2), br.corner(g, y, br.s2));
    }
    return glue.trace();
  }
};

void check_forced(const Graph& g, const Ridge& r) {
  const BuildingSet b = BuildingSet::graphical(g);
  if (auto v = check_nested(b, r.members)) throw AxiomError(*v);
  if (static_cast<int>(r.members.size()) != g.vertex_count() - 1 ||
      !std::is_sorted(r.members.begin(), r.members.end())) {
    throw InputError("forced flip is not a ridge of the flip graph");
  }
  for (VertexSet m : b.maximal()) {
    if (!std::binary_search(r.members.begin(), r.members.end(), m)) throw InputError("forced ridge must be loaded");
  }
  if (classify_ridge(b, r).kind != FlipKind::Short) throw InputError("forced flip is not a short flip");
}

}  // namespace

CycleWitness hamiltonian(const Graph& g, const std::optional<Ridge>& f, const std::optional<Ridge>& f2,
                         const HamiltonianOptions& opt, HamiltonianStats* stats) {
  if (g.edge_count() < 2) throw InputError("graph needs at least two edges for a Hamiltonian cycle");
  if (f) check_forced(g, *f);
  if (f2) check_forced(g, *f2);
  if (f && f2) {
    const BuildingSet b = BuildingSet::graphical(g);
    if (classify_ridge(b, *f).short_root == classify_ridge(b, *f2).short_root) {
      throw InputError("forced flips must have distinct short roots");
    }
  }
  Builder builder{opt, stats};
  std::string method;
  CycleWitness out{builder.build(g, f, f2, &method)};
  if (stats) stats->top_method = method;
  return out;
}

CycleWitness hamiltonian_star(const Graph& star, Vertex center, const Ridge& f, const Ridge& f2, const Ridge& l,
                              const HamiltonianOptions& opt, HamiltonianStats* stats) {
  if (!star.is_star() || star.vertex_count() < 3) throw InputError("graph is not a star on at least 3 vertices");
  if ((star.neighbors(center) | VertexSet::singleton(center)) != star.ground()) throw InputError("center is not adjacent to every vertex");
  check_forced(star, f);
  check_forced(star, f2);
  Builder builder{opt, stats};
  return CycleWitness{builder.star(star, center, f, f2, l)};
}

void clear_hamiltonian_cache() {
  std::lock_guard lock(cache_mutex);
  search_cache.clear();
}

std::vector<int> cycle_ids(const FlipGraph& idx, const CycleWitness& c) {
  std::vector<int> ids;
  ids.reserve(c.tubings.size());
  for (const Tubing& t : c.tubings) {
    const int id = idx.find(t);
    if (id < 0) throw InputError("cycle contains a set that is not a maximal nested set: " + serialize_sets(t));
    ids.push_back(id);
  }
  return ids;
}

bool verify_cycle(const FlipGraph& idx, const std::vector<int>& cycle, const std::vector<Ridge>& required) {
  const int n = idx.size();
  if (static_cast<int>(cycle.size()) != n || n < 3) return false;
  std::vector<char> seen(n, 0);
  for (int v : cycle) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  std::set<std::pair<int, int>> used;
  for (int i = 0; i < n; ++i) {
    const int a = cycle[i];
    const int b = cycle[(i + 1) % n];
    if (!idx.adjacent(a, b)) return false;
    used.emplace(std::min(a, b), std::max(a, b));
  }
  for (const Ridge& r : required) {
    std::pair<Tubing, Tubing> ends;
    try {
      ends = r.completions(idx.building());
    } catch (const InputError&) {
      return false;
    }
    const int a = idx.find(ends.first);
    const int b = idx.find(ends.second);
    if (a < 0 || b < 0 || !used.count({std::min(a, b), std::max(a, b)})) return false;
  }
  return true;
}

bool verify_cycle(const FlipGraph& idx, const CycleWitness& c, const std::vector<Ridge>& required) {
  std::vector<int> ids;
  for (const Tubing& t : c.tubings) ids.push_back(idx.find(t));
  return verify_cycle(idx, ids, required);
}

}  // namespace gassoc
