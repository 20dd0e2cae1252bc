#include "gassoc/nested.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>

#include <json.hpp>

namespace gassoc {

std::string serialize_sets(const std::vector<VertexSet>& sets) {
  std::vector<VertexSet> sorted = sets;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  std::string out = "[";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i) out += ",";
    out += "[";
    bool first = true;
    for (Vertex v : sorted[i]) {
      if (!first) out += ",";
      out += std::to_string(v);
      first = false;
    }
    out += "]";
  }
  return out + "]";
}

std::string Violation::message() const {
  std::string out = axiom + " violation";
  if (!witness.empty()) out += ": " + serialize_sets(witness);
  return out;
}

struct BuildingSet::Cache {
  std::once_flag once;
  std::vector<VertexSet> members;     // size, then lex
  std::vector<VertexSet> by_bits;     // sorted for binary search
  std::vector<VertexSet> decreasing;  // decreasing size, for partitions
};

namespace {

bool size_lex_less(VertexSet a, VertexSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return lex_less(a, b);
}

}  // namespace

BuildingSet BuildingSet::graphical(const Graph& g) {
  BuildingSet b;
  b.ground_ = g.ground();
  b.graph_ = std::make_shared<const Graph>(g);
  b.cache_ = std::make_shared<Cache>();
  b.maximal_ = g.components();
  return b;
}

std::optional<Violation> BuildingSet::check(VertexSet ground, const std::vector<VertexSet>& members) {
  std::set<VertexSet> set(members.begin(), members.end());
  for (VertexSet m : set) {
    if (m.empty() || !ground.contains(m)) return Violation{"ground", {m}};
  }
  for (Vertex v : ground) {
    if (!set.count(VertexSet::singleton(v))) return Violation{"B2", {VertexSet::singleton(v)}};
  }
  for (auto i = set.begin(); i != set.end(); ++i) {
    for (auto j = std::next(i); j != set.end(); ++j) {
      if (i->intersects(*j) && !set.count(*i | *j)) return Violation{"B1", {*i, *j}};
    }
  }
  return std::nullopt;
}

BuildingSet BuildingSet::validated(VertexSet ground, std::vector<VertexSet> members) {
  if (auto v = check(ground, members)) throw AxiomError(*v);
  std::sort(members.begin(), members.end(), size_lex_less);
  members.erase(std::unique(members.begin(), members.end()), members.end());
  BuildingSet b;
  b.ground_ = ground;
  b.cache_ = std::make_shared<Cache>();
  std::call_once(b.cache_->once, [&] {
    b.cache_->members = members;
    b.cache_->by_bits = members;
    std::sort(b.cache_->by_bits.begin(), b.cache_->by_bits.end());
    b.cache_->decreasing.assign(members.rbegin(), members.rend());
  });
  for (VertexSet m : members) {
    bool maximal = std::none_of(members.begin(), members.end(),
                                [&](VertexSet o) { return o.strictly_contains(m); });
    if (maximal) b.maximal_.push_back(m);
  }
  std::sort(b.maximal_.begin(), b.maximal_.end(), [](VertexSet a, VertexSet c) { return a.min() < c.min(); });
  return b;
}

const std::vector<VertexSet>& BuildingSet::members() const {
  std::call_once(cache_->once, [this] {
    cache_->members = graph_->tubes();
    cache_->by_bits = cache_->members;
    std::sort(cache_->by_bits.begin(), cache_->by_bits.end());
    cache_->decreasing.assign(cache_->members.rbegin(), cache_->members.rend());
  });
  return cache_->members;
}

bool BuildingSet::contains(VertexSet s) const {
  if (s.empty() || !ground_.contains(s)) return false;
  if (graph_) return graph_->connected(s);
  members();
  return std::binary_search(cache_->by_bits.begin(), cache_->by_bits.end(), s);
}

bool BuildingSet::is_maximal_member(VertexSet s) const {
  return std::find(maximal_.begin(), maximal_.end(), s) != maximal_.end();
}

std::vector<VertexSet> BuildingSet::partition(VertexSet s) const {
  if (graph_) return graph_->components(s);
  members();
  // Inclusion-maximal members inside s are disjoint and cover s.
  std::vector<VertexSet> out;
  VertexSet rest = s;
  for (VertexSet m : cache_->decreasing) {
    if (rest.empty()) break;
    if (rest.contains(m)) {
      out.push_back(m);
      rest -= m;
    }
  }
  std::sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) { return a.min() < b.min(); });
  return out;
}

VertexSet BuildingSet::block_of(VertexSet s, Vertex v) const {
  if (graph_) return graph_->component_of(s, v);
  members();
  for (VertexSet m : cache_->decreasing) {
    if (m.contains(v) && s.contains(m)) return m;
  }
  return VertexSet{};
}

BuildingSet BuildingSet::restricted(VertexSet s) const {
  if (graph_) return graphical(graph_->induced(s));
  std::vector<VertexSet> inside;
  for (VertexSet m : members()) {
    if (s.contains(m)) inside.push_back(m);
  }
  return validated(s, inside);
}

bool compatible(const BuildingSet& b, VertexSet s, VertexSet t) {
  if (!b.contains(s) || !b.contains(t)) throw InputError("compatibility asked for a non-member");
  if (s.nested_with(t)) return true;
  if (s.intersects(t)) return false;
  return !b.contains(s | t);
}

NestedSet::NestedSet(std::shared_ptr<const BuildingSet> b, std::vector<VertexSet> loaded_members)
    : building_(std::move(b)), members_(std::move(loaded_members)) {
  std::sort(members_.begin(), members_.end());
}

std::vector<VertexSet> NestedSet::proper_members() const {
  std::vector<VertexSet> out;
  for (VertexSet m : members_) {
    if (!building_->is_maximal_member(m)) out.push_back(m);
  }
  return out;
}

bool NestedSet::contains(VertexSet s) const { return std::binary_search(members_.begin(), members_.end(), s); }

bool NestedSet::is_maximal() const { return spine_of(members_).all_labels_singletons(); }

std::string NestedSet::serialize() const { return serialize_sets(proper_members()); }

std::optional<Violation> check_nested(const BuildingSet& b, const std::vector<VertexSet>& members) {
  std::set<VertexSet> set;
  for (VertexSet m : members) {
    if (!b.contains(m)) return Violation{"membership", {m}};
    set.insert(m);
  }
  for (VertexSet m : b.maximal()) set.insert(m);
  const std::vector<VertexSet> all(set.begin(), set.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i].intersects(all[j]) && !all[i].nested_with(all[j])) return Violation{"N1", {all[i], all[j]}};
    }
  }
  if (b.is_graphical()) {
    // For tubes a disjoint family has a connected union only if two of them are adjacent.
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        if (!all[i].intersects(all[j]) && b.contains(all[i] | all[j])) return Violation{"N2", {all[i], all[j]}};
      }
    }
    return std::nullopt;
  }
  // A disjoint family with union u in B exists iff the inclusion-maximal
  // members strictly inside u number at least two and cover u.
  for (VertexSet u : b.members()) {
    std::vector<VertexSet> inside;
    for (VertexSet m : all) {
      if (u.strictly_contains(m)) inside.push_back(m);
    }
    std::vector<VertexSet> tops;
    VertexSet cover;
    for (VertexSet m : inside) {
      bool top = std::none_of(inside.begin(), inside.end(), [&](VertexSet o) { return o.strictly_contains(m); });
      if (top) {
        tops.push_back(m);
        cover |= m;
      }
    }
    if (tops.size() >= 2 && cover == u) {
      std::sort(tops.begin(), tops.end(), lex_less);
      return Violation{"N2", tops};
    }
  }
  return std::nullopt;
}

NestedSet validate_nested(std::shared_ptr<const BuildingSet> b, const std::vector<VertexSet>& members) {
  if (auto v = check_nested(*b, members)) throw AxiomError(*v);
  std::set<VertexSet> set(members.begin(), members.end());
  for (VertexSet m : b->maximal()) set.insert(m);
  return NestedSet(std::move(b), std::vector<VertexSet>(set.begin(), set.end()));
}

NestedSet parse_nested(std::shared_ptr<const BuildingSet> b, const std::string& text) {
  std::vector<VertexSet> members;
  try {
    auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw InputError("nested set must be a JSON array of vertex lists");
    for (const auto& m : j) members.push_back(VertexSet::from_vector(m.get<std::vector<int>>()));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed nested set: ") + e.what());
  }
  return validate_nested(std::move(b), members);
}

int Spine::find(VertexSet node) const {
  auto it = std::find(nodes.begin(), nodes.end(), node);
  return it == nodes.end() ? -1 : static_cast<int>(it - nodes.begin());
}

std::vector<int> Spine::roots() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (parent[i] < 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool Spine::all_labels_singletons() const {
  return std::all_of(labels.begin(), labels.end(), [](VertexSet l) { return l.size() == 1; });
}

VertexSet Spine::descendants(int node) const {
  VertexSet out = labels[node];
  for (int c : children[node]) out |= descendants(c);
  return out;
}

Spine spine_of(const std::vector<VertexSet>& loaded_members) {
  Spine s;
  s.nodes = loaded_members;
  std::sort(s.nodes.begin(), s.nodes.end(), [](VertexSet a, VertexSet b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return lex_less(a, b);
  });
  const int k = static_cast<int>(s.nodes.size());
  s.parent.assign(k, -1);
  s.children.assign(k, {});
  s.labels = s.nodes;
  for (int i = 0; i < k; ++i) {
    // Later entries are no larger, so the last strict superset is the smallest.
    for (int j = i - 1; j >= 0; --j) {
      if (s.nodes[j].strictly_contains(s.nodes[i])) {
        s.parent[i] = j;
        break;
      }
    }
    if (s.parent[i] >= 0) {
      s.children[s.parent[i]].push_back(i);
      s.labels[s.parent[i]] -= s.nodes[i];
    }
  }
  return s;
}

Spine spine_of(const NestedSet& n) { return spine_of(n.members()); }

std::vector<VertexSet> nested_of(const Spine& s) {
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) out.push_back(s.descendants(static_cast<int>(i)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexSet> labels_of(const std::vector<VertexSet>& loaded_members) {
  std::vector<VertexSet> out;
  out.reserve(loaded_members.size());
  for (VertexSet m : loaded_members) {
    VertexSet label = m;
    for (VertexSet o : loaded_members) {
      if (m.strictly_contains(o)) label -= o;
    }
    out.push_back(label);
  }
  return out;
}

std::vector<VertexSet> complete_maximal(const BuildingSet& b, std::vector<VertexSet> loaded_members) {
  for (VertexSet m : b.maximal()) {
    if (std::find(loaded_members.begin(), loaded_members.end(), m) == loaded_members.end()) {
      loaded_members.push_back(m);
    }
  }
  while (true) {
    const auto labels = labels_of(loaded_members);
    std::size_t wide = labels.size();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].size() >= 2) {
        wide = i;
        break;
      }
    }
    if (wide == labels.size()) break;
    // Split the label: the block of t \ {v} holding another label vertex
    // contains every child it meets and stays compatible with the rest.
    const Vertex v = labels[wide].min();
    const Vertex w = labels[wide].without(v).min();
    loaded_members.push_back(b.block_of(loaded_members[wide].without(v), w));
  }
  std::sort(loaded_members.begin(), loaded_members.end());
  return loaded_members;
}

NestedSet complete_maximal(const NestedSet& n) {
  return NestedSet(n.building_ptr(), complete_maximal(n.building(), n.members()));
}

bool refines_by_contraction(const Spine& fine, const Spine& coarse) {
  // Contract every fine node missing from coarse into its parent, then compare.
  const int k = static_cast<int>(fine.nodes.size());
  std::vector<int> rep(k);
  std::iota(rep.begin(), rep.end(), 0);
  for (int i = 0; i < k; ++i) {  // parents precede children
    if (coarse.find(fine.nodes[i]) >= 0) continue;
    if (fine.parent[i] < 0) return false;  // roots cannot be contracted away
    rep[i] = rep[fine.parent[i]];
  }
  std::vector<VertexSet> labels(k);
  for (int i = 0; i < k; ++i) labels[rep[i]] |= fine.labels[i];
  for (int i = 0; i < k; ++i) {
    if (rep[i] != i) continue;
    const int c = coarse.find(fine.nodes[i]);
    if (c < 0 || coarse.labels[c] != labels[i]) return false;
    const int fp = fine.parent[i] < 0 ? -1 : rep[fine.parent[i]];
    const int cp = coarse.parent[c];
    if ((fp < 0) != (cp < 0)) return false;
    if (fp >= 0 && fine.nodes[fp] != coarse.nodes[cp]) return false;
  }
  int kept = 0;
  for (int i = 0; i < k; ++i) kept += rep[i] == i;
  return kept == static_cast<int>(coarse.nodes.size());
}

std::vector<std::vector<VertexSet>> all_nested_sets(const BuildingSet& b) {
  std::vector<VertexSet> proper;
  for (VertexSet m : b.members()) {
    if (!b.is_maximal_member(m)) proper.push_back(m);
  }
  std::vector<std::vector<VertexSet>> out;
  std::vector<VertexSet> chosen = b.maximal();
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == proper.size()) {
      if (!check_nested(b, chosen)) {
        auto sorted = chosen;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(sorted);
      }
      return;
    }
    rec(i + 1);
    const VertexSet m = proper[i];
    bool ok = std::all_of(chosen.begin(), chosen.end(), [&](VertexSet o) {
      return m.nested_with(o) || !m.intersects(o);
    });
    if (ok) {
      chosen.push_back(m);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

/// Presence mask over all 2^elements subsets.
using FamilyMask = std::uint64_t;

FamilyMask closure(FamilyMask family, int elements) {
  const int subsets = 1 << elements;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 1; a < subsets; ++a) {
      if (!((family >> a) & 1U)) continue;
      for (int c = a + 1; c < subsets; ++c) {
        if (((family >> c) & 1U) && (a & c) && !((family >> (a | c)) & 1U)) {
          family |= FamilyMask{1} << (a | c);
          changed = true;
        }
      }
    }
  }
  return family;
}

FamilyMask canonical_family(FamilyMask family, int elements) {
  std::vector<int> perm(elements);
  std::iota(perm.begin(), perm.end(), 0);
  FamilyMask best = ~FamilyMask{0};
  do {
    FamilyMask image = 0;
    for (int s = 1; s < (1 << elements); ++s) {
      if (!((family >> s) & 1U)) continue;
      int t = 0;
      for (int e = 0; e < elements; ++e) {
        if ((s >> e) & 1) t |= 1 << perm[e];
      }
      image |= FamilyMask{1} << t;
    }
    best = std::min(best, image);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<BuildingSet> building_sets_up_to_isomorphism(int elements) {
  if (elements < 1 || elements > 5) throw InputError("building set enumeration supports 1..5 elements");
  const int subsets = 1 << elements;
  FamilyMask start = 0;
  for (int e = 0; e < elements; ++e) start |= FamilyMask{1} << (1 << e);
  std::set<FamilyMask> seen = {canonical_family(start, elements)};
  std::vector<FamilyMask> queue(seen.begin(), seen.end());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (int s = 1; s < subsets; ++s) {
      if ((queue[i] >> s) & 1U) continue;
      FamilyMask next = canonical_family(closure(queue[i] | (FamilyMask{1} << s), elements), elements);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  std::vector<BuildingSet> out;
  for (FamilyMask f : seen) {
    std::vector<VertexSet> members;
    for (int s = 1; s < subsets; ++s) {
      if ((f >> s) & 1U) members.emplace_back(static_cast<std::uint64_t>(s));
    }
    out.push_back(BuildingSet::validated(VertexSet::first(elements), members));
  }
  return out;
}

}  // namespace gassoc
