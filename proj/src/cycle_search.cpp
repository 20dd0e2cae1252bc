#include <algorithm>
#include <numeric>
#include <random>

#include "gassoc/hamiltonian.hpp"

namespace gassoc {

namespace {

struct Search {
  const std::vector<std::vector<int>>& adj;
  std::vector<std::vector<int>> forced_partners{};
  int n = 0;
  int start = 0;
  std::vector<int> path{};
  std::vector<int> pos{};
  std::vector<int> free_degree{};  // neighbors that are not interior path vertices
  std::vector<int> stamp{};
  int stamp_value = 0;
  std::vector<int> queue{};
  std::uint64_t nodes = 0;
  std::uint64_t budget = 0;
  std::vector<unsigned> priority{};
  bool aborted = false;

  bool adjacent(int a, int b) const { return std::binary_search(adj[a].begin(), adj[a].end(), b); }

  bool closes() const {
    const int head = path.back();
    if (!adjacent(head, start)) return false;
    for (int v = 0; v < n; ++v) {
      for (int p : forced_partners[v]) {
        const int d = std::abs(pos[v] - pos[p]);
        if (d != 1 && d != n - 1) return false;
      }
    }
    return true;
  }

  /// Unvisited vertices must all be reachable from the head without passing
  /// through the path, and the start must border that region.
  bool reachable() {
    const int remaining = n - static_cast<int>(path.size());
    if (remaining == 0) return true;
    ++stamp_value;
    queue.clear();
    queue.push_back(path.back());
    stamp[path.back()] = stamp_value;
    int seen = 0;
    bool touches_start = false;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      const int x = queue[k];
      for (int y : adj[x]) {
        if (y == start && x != path.back()) touches_start = true;
        if (pos[y] >= 0 || stamp[y] == stamp_value) continue;
        stamp[y] = stamp_value;
        ++seen;
        queue.push_back(y);
      }
    }
    return seen == remaining && touches_start;
  }

  bool extend() {
    if (aborted) return false;
    if (budget && ++nodes > budget) {
      aborted = true;
      return false;
    }
    if (static_cast<int>(path.size()) == n) return closes();
    const int x = path.back();
    const int prev = path.size() >= 2 ? path[path.size() - 2] : -1;

    std::vector<int> candidates;
    int must = -1;
    for (int p : forced_partners[x]) {
      if (p == prev) continue;
      if (pos[p] < 0) {
        if (must < 0) must = p;
      } else if (p != start) {
        return false;
      }
    }
    if (must >= 0) {
      candidates.push_back(must);
    } else {
      for (int y : adj[x]) {
        if (pos[y] < 0) candidates.push_back(y);
      }
    }
    const bool last_step = static_cast<int>(path.size()) == n - 1;
    candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                    [&](int y) {
                                      int others = 0;
                                      for (int q : forced_partners[y]) {
                                        if (q == x) continue;
                                        ++others;
                                        if (pos[q] >= 0 && !(q == start && last_step)) return true;
                                      }
                                      return others > 1;
                                    }),
                     candidates.end());
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      if (free_degree[a] != free_degree[b]) return free_degree[a] < free_degree[b];
      return priority[a] < priority[b];
    });

    for (int y : candidates) {
      const bool interior = x != start;
      bool ok = true;
      if (interior) {
        for (int z : adj[x]) {
          --free_degree[z];
          if (pos[z] < 0 && z != y && free_degree[z] < 2) ok = false;
        }
      }
      if (ok) {
        pos[y] = static_cast<int>(path.size());
        path.push_back(y);
        if (reachable() && extend()) return true;
        path.pop_back();
        pos[y] = -1;
      }
      if (interior) {
        for (int z : adj[x]) ++free_degree[z];
      }
      if (aborted) return false;
    }
    return false;
  }
};

/// Luby's restart sequence 1, 1, 2, 1, 1, 2, 4, ... (index from 0).
std::uint64_t luby(std::uint64_t i) {
  std::uint64_t x = i + 1;
  for (;;) {
    int k = 1;
    while ((std::uint64_t{1} << k) - 1 < x) ++k;
    if (x == (std::uint64_t{1} << k) - 1) return std::uint64_t{1} << (k - 1);
    x -= (std::uint64_t{1} << (k - 1)) - 1;
  }
}

}  // namespace

std::optional<std::vector<int>> search_hamiltonian_cycle(const std::vector<std::vector<int>>& adj,
                                                         const std::vector<std::pair<int, int>>& forced,
                                                         std::uint64_t node_budget, bool* exhausted) {
  if (exhausted) *exhausted = false;
  const int n = static_cast<int>(adj.size());
  if (n < 3) return std::nullopt;
  std::vector<std::vector<int>> sorted_adj = adj;
  for (auto& row : sorted_adj) std::sort(row.begin(), row.end());
  Search s{sorted_adj, std::vector<std::vector<int>>(n)};
  s.n = n;
  for (auto [a, b] : forced) {
    if (a < 0 || b < 0 || a >= n || b >= n || !s.adjacent(a, b)) return std::nullopt;
    auto& fa = s.forced_partners[a];
    if (std::find(fa.begin(), fa.end(), b) != fa.end()) continue;
    fa.push_back(b);
    s.forced_partners[b].push_back(a);
  }
  for (const auto& fp : s.forced_partners) {
    if (fp.size() > 2) return std::nullopt;
  }

  // Randomized restarts with Luby budgets; the last attempt runs without a
  // budget unless the caller capped the total.
  std::vector<int> starts;
  if (!forced.empty()) {
    starts = {forced[0].first, forced[0].second};
  } else {
    starts = {0};
  }
  std::mt19937 rng(12345);
  s.priority.resize(n);
  std::iota(s.priority.begin(), s.priority.end(), 0u);
  std::uint64_t spent = 0;
  const std::uint64_t unit = 2ull * n;
  std::uint64_t attempt_budget = unit;
  bool any_aborted = false;
  for (int attempt = 0;; ++attempt) {
    const bool last = node_budget ? spent + attempt_budget >= node_budget : attempt >= 4000;
    s.start = starts[attempt % starts.size()];
    if (attempt > 0) std::shuffle(s.priority.begin(), s.priority.end(), rng);
    s.path.assign(1, s.start);
    s.pos.assign(n, -1);
    s.pos[s.start] = 0;
    s.free_degree.resize(n);
    for (int v = 0; v < n; ++v) s.free_degree[v] = static_cast<int>(sorted_adj[v].size());
    s.stamp.assign(n, 0);
    s.stamp_value = 0;
    s.nodes = 0;
    s.budget = last ? (node_budget ? node_budget - spent : 0) : attempt_budget;
    s.aborted = false;
    if (s.extend()) return s.path;
    if (!s.aborted) return std::nullopt;
    any_aborted = true;
    spent += s.nodes;
    attempt_budget = unit * luby(attempt + 1);
    if (last) break;
  }
  if (exhausted) *exhausted = any_aborted;
  return std::nullopt;
}

}  // namespace gassoc
