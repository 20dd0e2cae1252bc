#include <algorithm>
#include <set>

#include "gassoc/hamiltonian.hpp"

namespace gassoc {

namespace {

using EdgeSet = std::set<std::pair<GridVertex, GridVertex>>;

std::pair<GridVertex, GridVertex> normalized(GridEdge e) {
  return e.first < e.second ? e : GridEdge{e.second, e.first};
}

EdgeSet cycle_edges(const std::vector<GridVertex>& cycle) {
  EdgeSet out;
  for (std::size_t i = 0; i < cycle.size(); ++i) out.insert(normalized({cycle[i], cycle[(i + 1) % cycle.size()]}));
  return out;
}

bool contains_all(const std::vector<GridVertex>& cycle, const std::vector<GridEdge>& forced) {
  const EdgeSet edges = cycle_edges(cycle);
  return std::all_of(forced.begin(), forced.end(), [&](const GridEdge& e) { return edges.count(normalized(e)) > 0; });
}

int mod(int a, int m) { return ((a % m) + m) % m; }

bool cyclic_neighbors(int a, int b, int m) { return mod(a - b, m) == 1 || mod(b - a, m) == 1; }

void check_product_edge(int m, int k, const GridEdge& e) {
  const auto [a, b] = e;
  auto in_range = [&](GridVertex v) { return v.first >= 0 && v.first < m && v.second >= 0 && v.second < k; };
  if (!in_range(a) || !in_range(b)) throw InputError("product edge out of range");
  const bool along_first = a.second == b.second && cyclic_neighbors(a.first, b.first, m);
  const bool along_second = a.first == b.first && (k == 2 ? a.second != b.second : cyclic_neighbors(a.second, b.second, k));
  if (!along_first && !along_second) throw InputError("not an edge of the product");
}

/// Columns indexed by Z_cols, each a cycle Z_rows traversed as a Hamiltonian
/// path entered at row a_i; consecutive entry rows differ by one. Forced edges
/// are (column, row) pairs. Dynamic programming over the entry rows.
std::optional<std::vector<GridVertex>> column_sweep(int cols, int rows, const std::vector<GridEdge>& forced) {
  // horizontal[i] = required entry row of column i+1, or -1
  std::vector<int> horizontal(cols, -1);
  // banned[i] = vertical row pairs {x, x+1} of column i that must stay in the cycle
  std::vector<std::vector<int>> banned(cols);
  for (auto [a, b] : forced) {
    if (a.second == b.second) {
      const int i = mod(b.first - a.first, cols) == 1 ? a.first : b.first;
      if (horizontal[i] >= 0 && horizontal[i] != a.second) return std::nullopt;
      horizontal[i] = a.second;
    } else {
      const int x = mod(b.second - a.second, rows) == 1 ? a.second : b.second;
      banned[a.first].push_back(x);
    }
  }
  auto step_allowed = [&](int i, int from, int to) {
    if (horizontal[i] >= 0 && to != horizontal[i]) return false;
    const int low = mod(to - from, rows) == 1 ? from : to;
    return std::find(banned[i].begin(), banned[i].end(), low) == banned[i].end();
  };
  for (int a0 = 0; a0 < rows; ++a0) {
    std::vector<std::vector<int>> from(cols + 1, std::vector<int>(rows, -2));
    from[0][a0] = -1;
    for (int i = 0; i < cols; ++i) {
      for (int a = 0; a < rows; ++a) {
        if (from[i][a] == -2) continue;
        for (int d : {1, -1}) {
          const int b = mod(a + d, rows);
          if (from[i + 1][b] == -2 && step_allowed(i, a, b)) from[i + 1][b] = a;
        }
      }
    }
    if (from[cols][a0] == -2) continue;
    std::vector<int> entry(cols + 1);
    entry[cols] = a0;
    for (int i = cols; i > 0; --i) entry[i - 1] = from[i][entry[i]];
    std::vector<GridVertex> cycle;
    for (int i = 0; i < cols; ++i) {
      const int dir = mod(entry[i + 1] - entry[i], rows) == rows - 1 ? 1 : -1;
      for (int t = 0; t < rows; ++t) cycle.emplace_back(i, mod(entry[i] + dir * t, rows));
    }
    return cycle;
  }
  return std::nullopt;
}

std::vector<GridVertex> swapped(std::vector<GridVertex> v) {
  for (auto& [a, b] : v) std::swap(a, b);
  return v;
}

std::vector<GridEdge> swapped(std::vector<GridEdge> v) {
  for (auto& [a, b] : v) {
    std::swap(a.first, a.second);
    std::swap(b.first, b.second);
  }
  return v;
}

std::vector<GridVertex> search_product(int m, int k, const std::vector<GridEdge>& forced) {
  const bool prism = k == 2;
  const int n = m * k;
  std::vector<std::vector<int>> adj(n);
  auto id = [&](GridVertex v) { return v.first * k + v.second; };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) {
      adj[id({i, j})].push_back(id({mod(i + 1, m), j}));
      adj[id({i, j})].push_back(id({mod(i - 1, m), j}));
      if (prism) {
        adj[id({i, j})].push_back(id({i, 1 - j}));
      } else {
        adj[id({i, j})].push_back(id({i, mod(j + 1, k)}));
        adj[id({i, j})].push_back(id({i, mod(j - 1, k)}));
      }
    }
  }
  std::vector<std::pair<int, int>> f;
  for (auto [a, b] : forced) f.emplace_back(id(a), id(b));
  auto found = search_hamiltonian_cycle(adj, f);
  if (!found) throw InputError("no Hamiltonian cycle of the product contains the forced edges");
  std::vector<GridVertex> out;
  for (int x : *found) out.emplace_back(x / k, x % k);
  return out;
}

}  // namespace

std::vector<GridVertex> product_cycle_cycle(int m, int k, const std::vector<GridEdge>& forced) {
  if (m < 3 || k < 3) throw InputError("cycle factors need at least 3 vertices");
  for (const auto& e : forced) check_product_edge(m, k, e);
  if (auto c = column_sweep(m, k, forced)) return *c;
  if (auto c = column_sweep(k, m, swapped(forced))) return swapped(*c);
  return search_product(m, k, forced);
}

std::vector<GridVertex> product_cycle_edge(int m, const std::vector<GridEdge>& forced) {
  if (m < 3) throw InputError("cycle factor needs at least 3 vertices");
  std::vector<int> rungs;
  for (const auto& e : forced) {
    check_product_edge(m, 2, e);
    if (e.first.first == e.second.first) rungs.push_back(e.first.first);
  }
  std::sort(rungs.begin(), rungs.end());
  rungs.erase(std::unique(rungs.begin(), rungs.end()), rungs.end());
  if (rungs.size() >= 2 && !(rungs.size() == 2 && cyclic_neighbors(rungs[0], rungs[1], m)) && m % 2 == 1) {
    throw InputError("odd cycle times an edge: two forced rungs must be at adjacent positions");
  }

  std::vector<std::vector<GridVertex>> candidates;
  for (int p = 0; p < m; ++p) {
    // rungs at p and p+1, both layers missing the edge between them
    std::vector<GridVertex> c{{p, 0}};
    for (int t = 0; t < m; ++t) c.emplace_back(mod(p - t, m), 1);
    for (int t = 1; t < m; ++t) c.emplace_back(mod(p + t, m), 0);
    candidates.push_back(std::move(c));
  }
  if (m % 2 == 0) {
    for (int s = 0; s < 2; ++s) {
      std::vector<GridVertex> c;
      for (int i = 0; i < m; ++i) {
        c.emplace_back(i, (i + s) % 2);
        c.emplace_back(i, (i + s + 1) % 2);
      }
      candidates.push_back(std::move(c));
    }
  }
  for (auto& c : candidates) {
    if (contains_all(c, forced)) return c;
  }
  throw InputError("no Hamiltonian cycle of the prism contains the forced edges");
}

}  // namespace gassoc
