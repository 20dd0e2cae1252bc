#include "gassoc/gassoc.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gassoc/flip_graph.hpp"
#include "gassoc/hamiltonian.hpp"
#include "gassoc/verify.hpp"

struct gassoc_graph {
  gassoc::Graph g;
};

struct gassoc_flipgraph {
  gassoc::FlipGraph f;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
gassoc_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const gassoc::InputError& e) {
    last_error = e.what();
    return GASSOC_ERR_INPUT;
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return GASSOC_ERR_INPUT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GASSOC_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return GASSOC_ERR_INTERNAL;
  }
}

gassoc_status null_argument() {
  last_error = "null argument";
  return GASSOC_ERR_INPUT;
}

void check_id(const gassoc::FlipGraph& f, int id) {
  if (id < 0 || id >= f.size()) throw gassoc::InputError("flip graph id out of range: " + std::to_string(id));
}

}  // namespace

extern "C" {

const char* gassoc_last_error(void) { return last_error.c_str(); }

void gassoc_string_free(char* s) { std::free(s); }

gassoc_status gassoc_graph_parse(const char* content, gassoc_graph** out) {
  if (!content || !out) return null_argument();
  return guarded([&] {
    *out = new gassoc_graph{gassoc::parse_graph(content)};
    return GASSOC_OK;
  });
}

gassoc_status gassoc_graph_read(const char* path, gassoc_graph** out) {
  if (!path || !out) return null_argument();
  return guarded([&] {
    *out = new gassoc_graph{gassoc::read_graph_file(path)};
    return GASSOC_OK;
  });
}

gassoc_status gassoc_graph_family(const char* kind, int n, int k, gassoc_graph** out) {
  if (!kind || !out) return null_argument();
  return guarded([&] {
    *out = new gassoc_graph{gassoc::family_graph(kind, n, k)};
    return GASSOC_OK;
  });
}

void gassoc_graph_free(gassoc_graph* g) { delete g; }

int gassoc_graph_vertex_count(const gassoc_graph* g) { return g ? g->g.vertex_count() : 0; }

int gassoc_graph_edge_count(const gassoc_graph* g) { return g ? g->g.edge_count() : 0; }

gassoc_status gassoc_graph_text(const gassoc_graph* g, char** out) {
  if (!g || !out) return null_argument();
  return guarded([&] {
    *out = dup(g->g.to_text());
    return GASSOC_OK;
  });
}

gassoc_status gassoc_graph_json(const gassoc_graph* g, char** out) {
  if (!g || !out) return null_argument();
  return guarded([&] {
    *out = dup(g->g.to_json());
    return GASSOC_OK;
  });
}

gassoc_status gassoc_graph_tubes(const gassoc_graph* g, char** out) {
  if (!g || !out) return null_argument();
  return guarded([&] {
    *out = dup(gassoc::serialize_sets(g->g.tubes()));
    return GASSOC_OK;
  });
}

gassoc_status gassoc_flipgraph_build(const gassoc_graph* g, gassoc_flipgraph** out) {
  if (!g || !out) return null_argument();
  return guarded([&] {
    *out = new gassoc_flipgraph{gassoc::FlipGraph::build(g->g)};
    return GASSOC_OK;
  });
}

void gassoc_flipgraph_free(gassoc_flipgraph* f) { delete f; }

int64_t gassoc_flipgraph_vertex_count(const gassoc_flipgraph* f) { return f ? f->f.size() : 0; }

int64_t gassoc_flipgraph_edge_count(const gassoc_flipgraph* f) { return f ? f->f.edge_count() : 0; }

gassoc_status gassoc_flipgraph_find(const gassoc_flipgraph* f, const char* tubing, int* id) {
  if (!f || !tubing || !id) return null_argument();
  return guarded([&] {
    const auto n = gassoc::parse_nested(f->f.building_ptr(), tubing);
    *id = f->f.find(n);
    if (*id < 0) throw gassoc::InputError("not a maximal tubing: " + std::string(tubing));
    return GASSOC_OK;
  });
}

gassoc_status gassoc_flipgraph_tubing(const gassoc_flipgraph* f, int id, char** out) {
  if (!f || !out) return null_argument();
  return guarded([&] {
    check_id(f->f, id);
    *out = dup(f->f.nested(id).serialize());
    return GASSOC_OK;
  });
}

gassoc_status gassoc_flipgraph_json(const gassoc_flipgraph* f, char** out) {
  if (!f || !out) return null_argument();
  return guarded([&] {
    *out = dup(f->f.to_json());
    return GASSOC_OK;
  });
}

gassoc_status gassoc_flipgraph_dot(const gassoc_flipgraph* f, const int* cycle, size_t cycle_len, char** out) {
  if (!f || !out || (cycle_len > 0 && !cycle)) return null_argument();
  return guarded([&] {
    std::vector<int> c(cycle, cycle + cycle_len);
    for (int id : c) check_id(f->f, id);
    *out = dup(f->f.to_dot(c));
    return GASSOC_OK;
  });
}

gassoc_status gassoc_flipgraph_diameter(const gassoc_flipgraph* f, int threads, int* out) {
  if (!f || !out) return null_argument();
  return guarded([&] {
    *out = f->f.diameter(threads < 1 ? 1 : threads);
    return GASSOC_OK;
  });
}

gassoc_status gassoc_flipgraph_distance(const gassoc_flipgraph* f, int a, int b, int* out) {
  if (!f || !out) return null_argument();
  return guarded([&] {
    check_id(f->f, a);
    check_id(f->f, b);
    *out = f->f.distance(a, b);
    return GASSOC_OK;
  });
}

gassoc_status gassoc_flipgraph_geodesics(const gassoc_flipgraph* f, int a, int b, size_t limit, char** out) {
  if (!f || !out) return null_argument();
  return guarded([&] {
    check_id(f->f, a);
    check_id(f->f, b);
    const auto geo = f->f.geodesics(a, b, limit);
    nlohmann::json j;
    j["paths"] = geo.paths;
    j["truncated"] = geo.truncated;
    *out = dup(j.dump());
    return GASSOC_OK;
  });
}

gassoc_status gassoc_hamiltonian(const gassoc_graph* g, const char* forced_first, const char* forced_second,
                                 int verify, char** out) {
  if (!g || !out) return null_argument();
  return guarded([&] {
    const auto b = gassoc::BuildingSet::graphical(g->g);
    std::optional<gassoc::Ridge> f;
    std::optional<gassoc::Ridge> f2;
    if (forced_first) f = gassoc::parse_ridge(b, forced_first);
    if (forced_second) f2 = gassoc::parse_ridge(b, forced_second);
    gassoc::HamiltonianStats stats;
    const auto cycle = gassoc::hamiltonian(g->g, f, f2, {}, &stats);

    const auto idx = gassoc::FlipGraph::build(g->g);
    nlohmann::json j;
    j["length"] = cycle.tubings.size();
    j["cycle"] = nlohmann::json::array();
    for (const auto& t : cycle.tubings) j["cycle"].push_back(nlohmann::json::parse(gassoc::NestedSet(idx.building_ptr(), t).serialize()));
    j["ids"] = gassoc::cycle_ids(idx, cycle);
    j["method"] = stats.top_method;
    gassoc_status status = GASSOC_OK;
    if (verify) {
      std::vector<gassoc::Ridge> required;
      if (f) required.push_back(*f);
      if (f2) required.push_back(*f2);
      const bool ok = gassoc::verify_cycle(idx, cycle, required);
      j["verified"] = ok;
      if (!ok) {
        last_error = "cycle failed verification";
        status = GASSOC_ERR_VERIFY;
      }
    }
    *out = dup(j.dump());
    return status;
  });
}

gassoc_status gassoc_verify(const char* suite, const gassoc_graph* g, int min_n, int max_n, int threads,
                            char** report) {
  if (!suite || !report) return null_argument();
  return guarded([&] {
    const std::string s = suite;
    if (threads < 1) threads = 1;
    if (s != "snlfp" && !g && (min_n < 1 || max_n < min_n || max_n > 8)) {
      throw gassoc::InputError("vertex range must satisfy 1 <= min <= max <= 8");
    }
    auto graphs = [&](bool connected) {
      if (g) return std::vector<gassoc::Graph>{g->g};
      return connected ? gassoc::connected_graphs(min_n, max_n) : gassoc::all_graphs(min_n, max_n);
    };
    gassoc::VerifyReport r;
    if (s == "bounds") {
      r = gassoc::verify_bounds(graphs(true), threads);
    } else if (s == "regular") {
      r = gassoc::verify_regular(graphs(true));
    } else if (s == "monotone") {
      r = gassoc::verify_monotone(graphs(true), threads);
    } else if (s == "sigma") {
      r = gassoc::verify_sigma(graphs(false));
    } else if (s == "snlfp") {
      if (g) throw gassoc::InputError("snlfp runs over building sets, not a graph file");
      if (max_n < 1 || max_n > 5) throw gassoc::InputError("snlfp supports 1..5 elements");
      r = gassoc::verify_snlfp(max_n);
    } else {
      throw gassoc::InputError("unknown verification suite: " + s);
    }
    *report = dup(r.to_json());
    if (!r.holds()) {
      last_error = r.suite + " failed: " + r.first_witness;
      return GASSOC_ERR_VERIFY;
    }
    return GASSOC_OK;
  });
}

gassoc_status gassoc_experiment_tk_diameter(int max_k, int threads, char** csv) {
  if (!csv) return null_argument();
  return guarded([&] {
    if (max_k < 1) throw gassoc::InputError("max-k must be at least 1");
    *csv = dup(gassoc::tk_rows_csv(gassoc::tk_diameter_experiment(max_k, threads < 1 ? 1 : threads)));
    return GASSOC_OK;
  });
}

}  // extern "C"
