#pragma once

// Small independent reference computations used to cross-check the library.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

/// Adjacency as bitmasks on {0..n-1}.
struct Adj {
  int n = 0;
  std::vector<std::uint64_t> nb;
  Adj(int count, const std::vector<std::pair<int, int>>& edges) : n(count), nb(count, 0) {
    for (auto [u, v] : edges) {
      nb[u] |= std::uint64_t{1} << v;
      nb[v] |= std::uint64_t{1} << u;
    }
  }
};

inline bool connected(const Adj& g, std::uint64_t s) {
  if (s == 0) return false;
  std::uint64_t seen = s & -s;
  std::uint64_t frontier = seen;
  while (frontier) {
    std::uint64_t next = 0;
    for (int v = 0; v < g.n; ++v) {
      if (frontier >> v & 1) next |= g.nb[v];
    }
    next &= s & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == s;
}

inline std::vector<std::uint64_t> components(const Adj& g, std::uint64_t s) {
  std::vector<std::uint64_t> out;
  while (s) {
    std::uint64_t comp = s & -s;
    for (;;) {
      std::uint64_t grow = comp;
      for (int v = 0; v < g.n; ++v) {
        if (comp >> v & 1) grow |= g.nb[v] & s;
      }
      if (grow == comp) break;
      comp = grow;
    }
    out.push_back(comp);
    s &= ~comp;
  }
  return out;
}

inline int count_tubes(const Adj& g) {
  int c = 0;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << g.n); ++s) c += connected(g, s);
  return c;
}

/// Number of triangulations of a convex (m+2)-gon.
inline long long catalan(int m) {
  std::vector<long long> t(m + 1, 0);
  t[0] = 1;
  for (int k = 1; k <= m; ++k) {
    for (int i = 0; i < k; ++i) t[k] += t[i] * t[k - 1 - i];
  }
  return t[m];
}

/// Maximal tubings by choosing the root vertex and recursing on components.
inline long long count_maximal(const Adj& g, std::uint64_t s, std::map<std::uint64_t, long long>& memo) {
  if (s == 0) return 1;
  auto comps = components(g, s);
  if (comps.size() > 1) {
    long long p = 1;
    for (auto c : comps) p *= count_maximal(g, c, memo);
    return p;
  }
  if (auto it = memo.find(s); it != memo.end()) return it->second;
  long long total = 0;
  for (int v = 0; v < g.n; ++v) {
    if (s >> v & 1) total += count_maximal(g, s & ~(std::uint64_t{1} << v), memo);
  }
  return memo[s] = total;
}

inline long long count_maximal(const Adj& g) {
  std::map<std::uint64_t, long long> memo;
  return count_maximal(g, (std::uint64_t{1} << g.n) - 1, memo);
}

/// Tubes compatible: nested, or disjoint with a disconnected union.
inline bool compatible(const Adj& g, std::uint64_t a, std::uint64_t b) {
  if ((a & b) == a || (a & b) == b) return true;
  if (a & b) return false;
  return !connected(g, a | b);
}

}  // namespace oracle
