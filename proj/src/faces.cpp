#include "gassoc/faces.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <set>

#include "gassoc/projection.hpp"

namespace gassoc {

FaceSpec FaceSpec::make(std::shared_ptr<const BuildingSet> b, const std::vector<VertexSet>& members) {
  NestedSet n = validate_nested(b, members);
  return FaceSpec{std::move(b), n.members()};
}

bool FaceSpec::contains(const std::vector<VertexSet>& maximal) const {
  return std::all_of(generator.begin(), generator.end(), [&](VertexSet g) {
    return std::find(maximal.begin(), maximal.end(), g) != maximal.end();
  });
}

namespace {

std::vector<VertexSet> minimal_members(const std::vector<VertexSet>& family) {
  std::vector<VertexSet> out;
  for (VertexSet m : family) {
    if (std::none_of(family.begin(), family.end(), [&](VertexSet o) { return m.strictly_contains(o); })) {
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace

bool is_upper_ideal(const FaceSpec& face) {
  const auto& g = face.generator;
  const auto labels = labels_of(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const bool minimal = labels[i] == g[i];
    if (!minimal && labels[i].size() != 1) return false;
  }
  return true;
}

bool compatible_elements_below_minimal(const FaceSpec& face) {
  const auto minimal = minimal_members(face.generator);
  for (VertexSet b : face.building->members()) {
    if (std::binary_search(face.generator.begin(), face.generator.end(), b)) continue;
    auto extended = face.generator;
    extended.push_back(b);
    if (check_nested(*face.building, extended)) continue;
    if (std::none_of(minimal.begin(), minimal.end(), [&](VertexSet m) { return m.contains(b); })) return false;
  }
  return true;
}

std::vector<VertexSet> common_upper_set(const std::vector<VertexSet>& a, const std::vector<VertexSet>& b) {
  std::vector<VertexSet> shared;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
  auto closed_above = [&](VertexSet m, const std::vector<VertexSet>& side) {
    return std::all_of(side.begin(), side.end(), [&](VertexSet x) {
      return !x.contains(m) || std::binary_search(shared.begin(), shared.end(), x);
    });
  };
  std::vector<VertexSet> out;
  for (VertexSet m : shared) {
    if (closed_above(m, a) && closed_above(m, b)) out.push_back(m);
  }
  return out;
}

BuildingSet face_coarse_building_set(const FaceSpec& face) {
  const auto minimal = minimal_members(face.generator);
  const BuildingSet& b = *face.building;
  if (b.is_graphical()) {
    // Tubes inside the minimal members are the tubes of the graph keeping only
    // edges within one minimal member.
    std::vector<Edge> kept;
    for (auto [u, v] : b.graph().edges()) {
      for (VertexSet m : minimal) {
        if (m.contains(u) && m.contains(v)) kept.emplace_back(u, v);
      }
    }
    const int top = 64 - std::countl_zero(b.ground().bits());
    return BuildingSet::graphical(Graph::build(top, kept).induced(b.ground()));
  }
  std::vector<VertexSet> members;
  VertexSet covered;
  for (VertexSet m : minimal) covered |= m;
  for (VertexSet x : b.members()) {
    if (std::any_of(minimal.begin(), minimal.end(), [&](VertexSet m) { return m.contains(x); })) members.push_back(x);
  }
  for (Vertex v : b.ground() - covered) members.push_back(VertexSet::singleton(v));
  return BuildingSet::validated(b.ground(), members);
}

Normalizer::Normalizer(FaceSpec face) : face_(std::move(face)) {
  if (!is_upper_ideal(face_)) throw InputError("normalization needs an upper ideal face");
  coarse_ = std::make_shared<const BuildingSet>(face_coarse_building_set(face_));
}

std::vector<VertexSet> Normalizer::operator()(const std::vector<VertexSet>& maximal) const {
  std::set<VertexSet> out(face_.generator.begin(), face_.generator.end());
  for (VertexSet m : sigma(*coarse_, maximal)) {
    if (!coarse_->is_maximal_member(m)) out.insert(m);
  }
  return {out.begin(), out.end()};
}

std::vector<VertexSet> normalize(const FaceSpec& face, const std::vector<VertexSet>& maximal) {
  return Normalizer(face)(maximal);
}

std::vector<char> face_vertices(const FlipGraph& idx, const FaceSpec& face) {
  std::vector<char> in(idx.size(), 0);
  for (int id = 0; id < idx.size(); ++id) in[id] = face.contains(idx.members(id));
  return in;
}

FaceCheck check_face(const FlipGraph& idx, const std::vector<char>& in_face, FaceProperty which) {
  const int n = idx.size();
  std::vector<int> inside;
  for (int id = 0; id < n; ++id) {
    if (in_face[id]) inside.push_back(id);
  }
  if (inside.empty()) throw InputError("face has no vertices");
  FaceCheck result;

  if (which == FaceProperty::EFP) {
    for (int w : inside) {
      const auto d = idx.bfs(w);
      for (int v : inside) {
        for (int u : idx.neighbors(v)) {
          if (!in_face[u] && d[u] != d[v] + 1) return FaceCheck{false, {u, v, w}};
        }
      }
    }
    return result;
  }

  // leave[x]: length of a shortest walk from v to x through some vertex outside
  // the face; computed by a bucketed BFS seeded at the outside vertices.
  const int slack = which == FaceProperty::SNLFP ? 2 : 1;
  std::vector<int> leave(n);
  std::vector<int> via(n);
  for (int v : inside) {
    const auto d = idx.bfs(v);
    int top = 0;
    for (int x = 0; x < n; ++x) top = std::max(top, d[x]);
    std::vector<std::vector<int>> buckets(2 * top + 2);
    std::fill(leave.begin(), leave.end(), INT_MAX);
    for (int x = 0; x < n; ++x) {
      if (!in_face[x] && d[x] >= 0) {
        leave[x] = d[x];
        via[x] = x;
        buckets[d[x]].push_back(x);
      }
    }
    for (std::size_t level = 0; level < buckets.size(); ++level) {
      for (std::size_t k = 0; k < buckets[level].size(); ++k) {
        const int x = buckets[level][k];
        if (leave[x] != static_cast<int>(level)) continue;
        for (int y : idx.neighbors(x)) {
          if (leave[y] > leave[x] + 1 && leave[x] + 1 < static_cast<int>(buckets.size())) {
            leave[y] = leave[x] + 1;
            via[y] = via[x];
            buckets[leave[y]].push_back(y);
          }
        }
      }
    }
    for (int w : inside) {
      if (leave[w] != INT_MAX && leave[w] < d[w] + slack) return FaceCheck{false, {v, w, via[w]}};
    }
  }
  return result;
}

bool face_property(const FlipGraph& idx, const FaceSpec& face, FaceProperty which) {
  return check_face(idx, face_vertices(idx, face), which).holds;
}

}  // namespace gassoc
