#include "gassoc/flip_graph.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

namespace gassoc {

namespace {

struct LocalSpine {
  std::vector<int> parent;  // index into members, -1 for roots
  std::vector<VertexSet> labels;
};

LocalSpine local_spine(const std::vector<VertexSet>& m) {
  const int k = static_cast<int>(m.size());
  LocalSpine s{std::vector<int>(k, -1), m};
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (m[j].strictly_contains(m[i]) && (s.parent[i] < 0 || m[s.parent[i]].size() > m[j].size())) {
        s.parent[i] = j;
      }
    }
  }
  for (int i = 0; i < k; ++i) {
    if (s.parent[i] >= 0) s.labels[s.parent[i]] -= m[i];
  }
  return s;
}

VertexSet replacement_for(const BuildingSet& b, const std::vector<VertexSet>& m, const LocalSpine& s, int i) {
  const Vertex v = s.labels[i].min();
  const int up = s.parent[i];
  const Vertex above = s.labels[up].min();
  return b.block_of(m[up].without(v), above);
}

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t x : v) {
      h ^= VertexSetHash{}(VertexSet(x));
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

FlipResult flip(const BuildingSet& b, const std::vector<VertexSet>& maximal_loaded, VertexSet member) {
  auto it = std::find(maximal_loaded.begin(), maximal_loaded.end(), member);
  if (it == maximal_loaded.end()) throw InputError("flip of a set that is not a member: " + member.to_string());
  if (b.is_maximal_member(member)) throw InputError("cannot flip a maximal member: " + member.to_string());
  const LocalSpine s = local_spine(maximal_loaded);
  const int i = static_cast<int>(it - maximal_loaded.begin());
  if (s.labels[i].size() != 1 || s.labels[s.parent[i]].size() != 1) {
    throw InputError("flip requires a maximal nested set");
  }
  FlipResult r{maximal_loaded, replacement_for(b, maximal_loaded, s, i)};
  r.members[i] = r.replacement;
  std::sort(r.members.begin(), r.members.end());
  return r;
}

std::pair<NestedSet, VertexSet> flip(const NestedSet& n, VertexSet member) {
  FlipResult r = flip(n.building(), n.members(), member);
  return {NestedSet(n.building_ptr(), std::move(r.members)), r.replacement};
}

std::vector<VertexSet> seed_maximal(const BuildingSet& b) {
  if (!b.is_graphical()) return complete_maximal(b, b.maximal());
  const Graph& g = b.graph();
  std::vector<VertexSet> out;
  for (VertexSet comp : b.maximal()) {
    VertexSet prefix = VertexSet::singleton(comp.min());
    out.push_back(prefix);
    while (prefix != comp) {
      prefix = prefix.with(g.boundary(prefix).min());
      out.push_back(prefix);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FlipGraph FlipGraph::build(std::shared_ptr<const BuildingSet> b) {
  FlipGraph fg;
  fg.building_ = b;
  const auto seed = seed_maximal(*b);
  fg.stride_ = static_cast<int>(seed.size());
  const std::size_t stride = fg.stride_;

  std::unordered_map<std::vector<std::uint64_t>, int, VectorHash> ids;
  auto key_of = [](const std::vector<VertexSet>& m) {
    std::vector<std::uint64_t> k(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) k[i] = m[i].bits();
    return k;
  };
  auto intern = [&](const std::vector<VertexSet>& m) {
    auto [it, inserted] = ids.try_emplace(key_of(m), static_cast<int>(ids.size()));
    if (inserted) fg.flat_.insert(fg.flat_.end(), it->first.begin(), it->first.end());
    return it->second;
  };
  intern(seed);

  std::vector<std::vector<int>> adj;
  std::vector<VertexSet> current(stride);
  for (std::size_t id = 0; id * stride < fg.flat_.size(); ++id) {
    for (std::size_t j = 0; j < stride; ++j) current[j] = VertexSet(fg.flat_[id * stride + j]);
    const LocalSpine s = local_spine(current);
    std::vector<int> nbrs;
    for (std::size_t j = 0; j < stride; ++j) {
      if (s.parent[j] < 0) continue;
      auto next = current;
      next[j] = replacement_for(*b, current, s, static_cast<int>(j));
      std::sort(next.begin(), next.end());
      nbrs.push_back(intern(next));
    }
    std::sort(nbrs.begin(), nbrs.end());
    adj.push_back(std::move(nbrs));
  }
  for (const auto& nbrs : adj) {
    fg.targets_.insert(fg.targets_.end(), nbrs.begin(), nbrs.end());
    fg.offsets_.push_back(static_cast<int>(fg.targets_.size()));
  }
  fg.sorted_ids_.resize(adj.size());
  for (auto& [key, id] : ids) fg.sorted_ids_[id] = id;
  std::sort(fg.sorted_ids_.begin(), fg.sorted_ids_.end(), [&](int x, int y) {
    return std::lexicographical_compare(fg.flat_.begin() + x * stride, fg.flat_.begin() + (x + 1) * stride,
                                        fg.flat_.begin() + y * stride, fg.flat_.begin() + (y + 1) * stride);
  });
  return fg;
}

std::vector<VertexSet> FlipGraph::members(int id) const {
  std::vector<VertexSet> out(stride_);
  for (int j = 0; j < stride_; ++j) out[j] = VertexSet(flat_[static_cast<std::size_t>(id) * stride_ + j]);
  return out;
}

std::vector<int> FlipGraph::neighbors(int id) const {
  return {targets_.begin() + offsets_[id], targets_.begin() + offsets_[id + 1]};
}

bool FlipGraph::adjacent(int a, int b) const {
  return std::binary_search(targets_.begin() + offsets_[a], targets_.begin() + offsets_[a + 1], b);
}

int FlipGraph::find(const std::vector<VertexSet>& m) const {
  std::vector<VertexSet> loaded = m;
  for (VertexSet x : building_->maximal()) {
    if (std::find(loaded.begin(), loaded.end(), x) == loaded.end()) loaded.push_back(x);
  }
  std::sort(loaded.begin(), loaded.end());
  loaded.erase(std::unique(loaded.begin(), loaded.end()), loaded.end());
  if (static_cast<int>(loaded.size()) != stride_) return -1;
  std::vector<std::uint64_t> key(stride_);
  for (int j = 0; j < stride_; ++j) key[j] = loaded[j].bits();
  auto begin_of = [&](int id) { return flat_.begin() + static_cast<std::size_t>(id) * stride_; };
  auto it = std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), 0, [&](int id, int) {
    return std::lexicographical_compare(begin_of(id), begin_of(id) + stride_, key.begin(), key.end());
  });
  if (it == sorted_ids_.end() || !std::equal(key.begin(), key.end(), begin_of(*it))) return -1;
  return *it;
}

std::vector<int> FlipGraph::bfs(int source) const {
  return bfs_within(source, std::vector<char>(size(), 1));
}

std::vector<int> FlipGraph::bfs_within(int source, const std::vector<char>& allowed) const {
  std::vector<int> dist(size(), -1);
  std::vector<int> queue;
  queue.reserve(size());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (int k = offsets_[x]; k < offsets_[x + 1]; ++k) {
      const int y = targets_[k];
      if (dist[y] < 0 && allowed[y]) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

int FlipGraph::distance(int a, int b) const { return bfs(a)[b]; }

int FlipGraph::diameter(int threads, int cap) const {
  const int n = size();
  std::atomic<int> next{0};
  std::atomic<int> best{0};
  auto worker = [&] {
    std::vector<int> dist(n);
    std::vector<int> queue(n);
    while (true) {
      if (cap >= 0 && best.load() >= cap) return;
      const int src = next.fetch_add(1);
      if (src >= n) return;
      std::fill(dist.begin(), dist.end(), -1);
      dist[src] = 0;
      queue[0] = src;
      std::size_t tail = 1;
      int ecc = 0;
      for (std::size_t head = 0; head < tail; ++head) {
        const int x = queue[head];
        ecc = dist[x];
        for (int k = offsets_[x]; k < offsets_[x + 1]; ++k) {
          const int y = targets_[k];
          if (dist[y] < 0) {
            dist[y] = dist[x] + 1;
            queue[tail++] = y;
          }
        }
      }
      int seen = best.load();
      while (ecc > seen && !best.compare_exchange_weak(seen, ecc)) {
      }
    }
  };
  threads = std::max(1, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return best.load();
}

FlipGraph::Geodesics FlipGraph::geodesics(int a, int b, std::size_t limit) const {
  Geodesics out;
  const auto from_a = bfs(a);
  const auto from_b = bfs(b);
  if (from_a[b] < 0) return out;
  std::vector<int> path = {a};
  std::function<void(int)> walk = [&](int x) {
    if (out.truncated) return;
    if (x == b) {
      if (out.paths.size() >= limit) {
        out.truncated = true;
        return;
      }
      out.paths.push_back(path);
      return;
    }
    for (int k = offsets_[x]; k < offsets_[x + 1]; ++k) {
      const int y = targets_[k];
      if (from_a[y] == from_a[x] + 1 && from_b[y] == from_b[x] - 1) {
        path.push_back(y);
        walk(y);
        path.pop_back();
      }
    }
  };
  walk(a);
  return out;
}

FlipGraph FlipGraph::induced(const std::vector<int>& keep) const {
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> renumber(size(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) renumber[sorted[i]] = static_cast<int>(i);
  FlipGraph out;
  out.building_ = building_;
  out.stride_ = stride_;
  for (int old : sorted) {
    out.flat_.insert(out.flat_.end(), flat_.begin() + static_cast<std::size_t>(old) * stride_,
                     flat_.begin() + static_cast<std::size_t>(old + 1) * stride_);
    for (int k = offsets_[old]; k < offsets_[old + 1]; ++k) {
      if (renumber[targets_[k]] >= 0) out.targets_.push_back(renumber[targets_[k]]);
    }
    out.offsets_.push_back(static_cast<int>(out.targets_.size()));
  }
  out.sorted_ids_.clear();
  for (int old : sorted_ids_) {
    if (renumber[old] >= 0) out.sorted_ids_.push_back(renumber[old]);
  }
  return out;
}

Vertex root_label(const std::vector<VertexSet>& maximal_loaded) {
  VertexSet top;
  for (VertexSet m : maximal_loaded) {
    if (m.size() > top.size()) top = m;
  }
  VertexSet label = top;
  for (VertexSet m : maximal_loaded) {
    if (m != top && top.contains(m)) label -= m;
  }
  return label.min();
}

FlipGraph FlipGraph::fixed_root_subgraph(Vertex v, std::vector<int>* old_ids) const {
  if (!building_->connected()) throw InputError("fixed-root subgraphs need a connected building set");
  std::vector<int> keep;
  for (int id = 0; id < size(); ++id) {
    if (root_label(members(id)) == v) keep.push_back(id);
  }
  if (old_ids) *old_ids = keep;
  return induced(keep);
}

bool is_isomorphism(const FlipGraph& a, const FlipGraph& b, const std::vector<int>& map) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
  if (static_cast<int>(map.size()) != a.size()) return false;
  std::vector<char> hit(b.size(), 0);
  for (int x : map) {
    if (x < 0 || x >= b.size() || hit[x]) return false;
    hit[x] = 1;
  }
  for (int x = 0; x < a.size(); ++x) {
    for (int y : a.neighbors(x)) {
      if (!b.adjacent(map[x], map[y])) return false;
    }
  }
  return true;
}

std::vector<int> fixed_root_isomorphism(const FlipGraph& fixed_root, const FlipGraph& subgraph_flips) {
  const VertexSet top = fixed_root.building().ground();
  std::vector<int> map(fixed_root.size());
  for (int id = 0; id < fixed_root.size(); ++id) {
    auto m = fixed_root.members(id);
    m.erase(std::remove(m.begin(), m.end(), top), m.end());
    map[id] = subgraph_flips.find(m);
    if (map[id] < 0) return {};
  }
  return is_isomorphism(fixed_root, subgraph_flips, map) ? map : std::vector<int>{};
}

std::string FlipGraph::to_json() const {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (int id = 0; id < size(); ++id) {
    j["vertices"].push_back({{"id", id}, {"tubing", nlohmann::json::parse(nested(id).serialize())}});
  }
  j["edges"] = nlohmann::json::array();
  for (int x = 0; x < size(); ++x) {
    for (int y : neighbors(x)) {
      if (x < y) j["edges"].push_back({x, y});
    }
  }
  return j.dump();
}

std::string FlipGraph::to_dot(const std::vector<int>& cycle) const {
  std::vector<std::pair<int, int>> marked;
  for (std::size_t i = 0; i < cycle.size() && cycle.size() > 1; ++i) {
    int x = cycle[i];
    int y = cycle[(i + 1) % cycle.size()];
    marked.emplace_back(std::min(x, y), std::max(x, y));
  }
  std::sort(marked.begin(), marked.end());
  std::ostringstream out;
  out << "graph F {\n";
  for (int id = 0; id < size(); ++id) out << "  " << id << " [label=\"" << nested(id).serialize() << "\"];\n";
  for (int x = 0; x < size(); ++x) {
    for (int y : neighbors(x)) {
      if (x >= y) continue;
      out << "  " << x << " -- " << y;
      if (std::binary_search(marked.begin(), marked.end(), std::make_pair(x, y))) out << " [color=red]";
      out << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace gassoc
