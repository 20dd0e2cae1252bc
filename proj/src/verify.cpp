#include "gassoc/verify.hpp"

#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gassoc/faces.hpp"
#include "gassoc/flip_graph.hpp"
#include "gassoc/projection.hpp"

namespace gassoc {

namespace {

std::string edges_text(const Graph& g) {
  std::ostringstream out;
  out << "n=" << g.vertex_count() << " edges=[";
  bool first = true;
  for (auto [u, v] : g.edges()) {
    out << (first ? "" : ",") << "[" << u << "," << v << "]";
    first = false;
  }
  out << "]";
  return out.str();
}

int choose2(int m) { return m * (m - 1) / 2; }

}  // namespace

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["checked"] = checked;
  j["failures"] = failures;
  j["holds"] = holds();
  if (!first_witness.empty()) j["witness"] = first_witness;
  return j.dump();
}

std::vector<Graph> connected_graphs(int min_vertices, int max_vertices) {
  std::vector<Graph> out;
  for (int m = std::max(1, min_vertices); m <= max_vertices; ++m) {
    for (Graph& g : graphs_up_to_isomorphism(m, true)) out.push_back(std::move(g));
  }
  return out;
}

std::vector<Graph> all_graphs(int min_vertices, int max_vertices) {
  std::vector<Graph> out;
  for (int m = std::max(1, min_vertices); m <= max_vertices; ++m) {
    for (Graph& g : graphs_up_to_isomorphism(m, false)) out.push_back(std::move(g));
  }
  return out;
}

VerifyReport verify_bounds(const std::vector<Graph>& graphs, int threads) {
  VerifyReport r{"bounds"};
  for (const Graph& g : graphs) {
    if (!g.connected()) throw InputError("bounds check needs connected graphs: " + edges_text(g));
    const int n = g.vertex_count() - 1;
    const int e = g.edge_count();
    const int lower = std::max(e, 2 * n - 18);
    const int upper = choose2(n + 1);
    const int d = FlipGraph::build(g).diameter(threads);
    ++r.checked;
    if (d < lower || d > upper) {
      r.fail(edges_text(g) + " diameter=" + std::to_string(d) + " bounds=[" + std::to_string(lower) + "," +
             std::to_string(upper) + "]");
    }
  }
  return r;
}

VerifyReport verify_regular(const std::vector<Graph>& graphs) {
  VerifyReport r{"regular"};
  for (const Graph& g : graphs) {
    if (!g.connected()) throw InputError("regularity check needs connected graphs: " + edges_text(g));
    const FlipGraph f = FlipGraph::build(g);
    const int want = g.vertex_count() - 1;
    ++r.checked;
    for (int id = 0; id < f.size(); ++id) {
      if (f.degree(id) != want) {
        r.fail(edges_text(g) + " tubing=" + f.nested(id).serialize() + " degree=" + std::to_string(f.degree(id)));
        break;
      }
    }
  }
  return r;
}

VerifyReport verify_monotone(const std::vector<Graph>& graphs, int threads) {
  VerifyReport r{"monotone"};
  std::map<std::string, int> diameters;
  auto diameter = [&](const Graph& g) {
    const std::string key = g.to_text();
    auto it = diameters.find(key);
    if (it == diameters.end()) it = diameters.emplace(key, FlipGraph::build(g).diameter(threads)).first;
    return it->second;
  };
  for (const Graph& gp : graphs) {
    const int big = diameter(gp);
    for (auto [u, v] : gp.edges()) {
      const Graph g = gp.without_edge(u, v);
      const int small = diameter(g);
      ++r.checked;
      if (small > big) {
        r.fail(edges_text(gp) + " minus [" + std::to_string(u) + "," + std::to_string(v) +
               "]: " + std::to_string(small) + " > " + std::to_string(big));
      }
    }
  }
  return r;
}

VerifyReport verify_sigma(const std::vector<Graph>& graphs) {
  VerifyReport r{"sigma"};
  for (const Graph& gp : graphs) {
    for (auto [u, v] : gp.edges()) {
      const auto ctx = ProjectionContext::edge_deletion(gp, u, v);
      const std::string where = edges_text(gp) + " minus [" + std::to_string(u) + "," + std::to_string(v) + "]";
      ++r.checked;

      for (const auto& n : all_nested_sets(*ctx.fine)) {
        const auto image = sigma(*ctx.coarse, n);
        if (auto bad = check_nested(*ctx.coarse, image)) {
          r.fail(where + " image of " + serialize_sets(n) + " is not nested: " + bad->message());
        } else if (image.size() < n.size()) {
          r.fail(where + " image of " + serialize_sets(n) + " is smaller");
        }
      }

      const FlipGraph fine = FlipGraph::build(ctx.fine);
      const FlipGraph coarse = FlipGraph::build(ctx.coarse);
      std::vector<int> image(fine.size());
      std::vector<char> hit(coarse.size(), 0);
      bool mapped = true;
      for (int id = 0; id < fine.size(); ++id) {
        image[id] = coarse.find(sigma(*ctx.coarse, fine.members(id)));
        if (image[id] < 0) {
          r.fail(where + " image of maximal " + fine.nested(id).serialize() + " is not maximal");
          mapped = false;
          break;
        }
        hit[image[id]] = 1;
      }
      if (!mapped) continue;
      for (int c = 0; c < coarse.size(); ++c) {
        if (!hit[c]) {
          r.fail(where + " no preimage for " + coarse.nested(c).serialize());
          break;
        }
      }
      for (int a = 0; a < fine.size(); ++a) {
        for (int b : fine.neighbors(a)) {
          if (b < a) continue;
          if (image[a] != image[b] && !coarse.adjacent(image[a], image[b])) {
            r.fail(where + " flip " + fine.nested(a).serialize() + " -- " + fine.nested(b).serialize() +
                   " maps to non-adjacent sets");
          }
        }
      }
      for (int c = 0; c < coarse.size(); ++c) {
        for (const auto& pre : preimages(ctx, coarse.members(c))) {
          if (sigma(*ctx.coarse, pre) != coarse.members(c)) {
            r.fail(where + " preimage " + serialize_sets(pre) + " does not map to " + coarse.nested(c).serialize());
          }
        }
      }
    }
  }
  return r;
}

VerifyReport verify_snlfp(int max_elements) {
  VerifyReport r{"snlfp"};
  for (int m = 1; m <= max_elements; ++m) {
    for (const BuildingSet& b : building_sets_up_to_isomorphism(m)) {
      auto bp = std::make_shared<const BuildingSet>(b);
      const FlipGraph f = FlipGraph::build(bp);
      for (const auto& n : all_nested_sets(b)) {
        const FaceSpec face = FaceSpec::make(bp, n);
        if (!is_upper_ideal(face)) continue;
        ++r.checked;
        const FaceCheck c = check_face(f, face_vertices(f, face), FaceProperty::SNLFP);
        if (!c.holds) {
          std::string w = "building set " + serialize_sets(b.members()) + " face " + serialize_sets(n) + " witness";
          for (int id : c.witness) w += " " + f.nested(id).serialize();
          r.fail(w);
        }
      }
    }
  }
  return r;
}

std::vector<TkRow> tk_diameter_experiment(int max_k, int threads) {
  std::vector<TkRow> rows;
  for (int k = 1; k <= max_k; ++k) {
    const auto start = std::chrono::steady_clock::now();
    const Graph g = tk_graph(k);
    const FlipGraph f = FlipGraph::build(g);
    TkRow row;
    row.k = k;
    row.vertices = g.vertex_count();
    row.flip_vertices = f.size();
    row.diameter = f.diameter(threads);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(row);
  }
  return rows;
}

std::string tk_rows_csv(const std::vector<TkRow>& rows) {
  std::ostringstream out;
  out << "k,n_vertices,flip_vertices,diameter,seconds\n";
  for (const auto& row : rows) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", row.seconds);
    out << row.k << "," << row.vertices << "," << row.flip_vertices << "," << row.diameter << "," << secs << "\n";
  }
  return out.str();
}

}  // namespace gassoc
