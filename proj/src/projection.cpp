#include "gassoc/projection.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace gassoc {

ProjectionContext ProjectionContext::make(std::shared_ptr<const BuildingSet> fine,
                                          std::shared_ptr<const BuildingSet> coarse) {
  if (fine->ground() != coarse->ground()) throw InputError("building sets on different ground sets");
  for (VertexSet m : coarse->members()) {
    if (!fine->contains(m)) throw InputError("coarse building set member missing from fine one: " + m.to_string());
  }
  return ProjectionContext{std::move(fine), std::move(coarse), std::nullopt};
}

ProjectionContext ProjectionContext::edge_deletion(const Graph& g, Vertex u, Vertex v) {
  ProjectionContext ctx;
  ctx.fine = std::make_shared<const BuildingSet>(BuildingSet::graphical(g));
  ctx.coarse = std::make_shared<const BuildingSet>(BuildingSet::graphical(g.without_edge(u, v)));
  ctx.deleted_edge = Edge{std::min(u, v), std::max(u, v)};
  return ctx;
}

std::vector<VertexSet> sigma(const BuildingSet& coarse, const std::vector<VertexSet>& members) {
  std::set<VertexSet> out(coarse.maximal().begin(), coarse.maximal().end());
  for (VertexSet m : members) {
    for (VertexSet block : coarse.partition(m)) out.insert(block);
  }
  return {out.begin(), out.end()};
}

NestedSet sigma(const ProjectionContext& ctx, const NestedSet& n) {
  return NestedSet(ctx.coarse, sigma(*ctx.coarse, n.members()));
}

namespace {

std::vector<std::vector<VertexSet>> shuffle_preimages(const std::vector<VertexSet>& coarse_maximal, Vertex u, Vertex v) {
  std::vector<VertexSet> only_u;
  std::vector<VertexSet> only_v;
  std::vector<VertexSet> rest;
  for (VertexSet m : coarse_maximal) {
    if (m.contains(u) && !m.contains(v)) {
      only_u.push_back(m);
    } else if (m.contains(v) && !m.contains(u)) {
      only_v.push_back(m);
    } else {
      rest.push_back(m);
    }
  }
  auto by_size = [](VertexSet a, VertexSet b) { return a.size() < b.size(); };
  std::sort(only_u.begin(), only_u.end(), by_size);
  std::sort(only_v.begin(), only_v.end(), by_size);

  // Walking a shuffle of the two chains, each step adds the union of the
  // latest element taken from each chain.
  std::vector<std::vector<VertexSet>> out;
  std::vector<VertexSet> built;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
    if (i == only_u.size() && j == only_v.size()) {
      auto m = rest;
      m.insert(m.end(), built.begin(), built.end());
      std::sort(m.begin(), m.end());
      out.push_back(std::move(m));
      return;
    }
    const VertexSet last_u = i ? only_u[i - 1] : VertexSet{};
    const VertexSet last_v = j ? only_v[j - 1] : VertexSet{};
    if (i < only_u.size()) {
      built.push_back(only_u[i] | last_v);
      rec(i + 1, j);
      built.pop_back();
    }
    if (j < only_v.size()) {
      built.push_back(only_v[j] | last_u);
      rec(i, j + 1);
      built.pop_back();
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Largest u in `fine` that is the disjoint union of at least two current
/// members; the members are returned in `family`.
std::optional<VertexSet> largest_violation(const BuildingSet& fine, const std::vector<VertexSet>& current,
                                           std::vector<VertexSet>& family) {
  const auto& members = fine.members();  // increasing size, then lex
  for (auto it = members.rbegin(); it != members.rend(); ++it) {
    const VertexSet u = *it;
    std::vector<VertexSet> inside;
    for (VertexSet m : current) {
      if (u.strictly_contains(m)) inside.push_back(m);
    }
    std::vector<VertexSet> tops;
    VertexSet cover;
    for (VertexSet m : inside) {
      if (std::none_of(inside.begin(), inside.end(), [&](VertexSet o) { return o.strictly_contains(m); })) {
        tops.push_back(m);
        cover |= m;
      }
    }
    if (tops.size() >= 2 && cover == u) {
      std::sort(tops.begin(), tops.end(), lex_less);
      family = tops;
      return u;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<VertexSet> repair_preimage(const BuildingSet& fine, const std::vector<VertexSet>& coarse_maximal) {
  std::vector<VertexSet> current = coarse_maximal;
  std::vector<VertexSet> family;
  const std::size_t bound = fine.members().size() + current.size() + 1;
  for (std::size_t step = 0; step < bound; ++step) {
    auto u = largest_violation(fine, current, family);
    if (!u) break;
    std::replace(current.begin(), current.end(), family.front(), *u);
  }
  return complete_maximal(fine, current);
}

std::vector<std::vector<VertexSet>> preimages(const ProjectionContext& ctx, const std::vector<VertexSet>& coarse_maximal) {
  if (ctx.deleted_edge) return shuffle_preimages(coarse_maximal, ctx.deleted_edge->first, ctx.deleted_edge->second);
  return {repair_preimage(*ctx.fine, coarse_maximal)};
}

MonotonicityReport check_monotonicity(const Graph& g, const Graph& g_prime, int threads) {
  if (!g.subgraph_of(g_prime)) throw InputError("first graph is not a subgraph of the second on the same vertex set");
  MonotonicityReport r;
  r.smaller_diameter = FlipGraph::build(g).diameter(threads);
  r.larger_diameter = FlipGraph::build(g_prime).diameter(threads);
  r.holds = r.smaller_diameter <= r.larger_diameter;
  return r;
}

}  // namespace gassoc
