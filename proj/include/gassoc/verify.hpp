#pragma once

#include <string>
#include <vector>

#include "gassoc/graph.hpp"

namespace gassoc {

/// Outcome of an exhaustive property check.
struct VerifyReport {
  std::string suite;
  long long checked = 0;
  long long failures = 0;
  std::string first_witness{};  // empty when nothing failed

  bool holds() const { return failures == 0; }
  void fail(const std::string& witness) {
    if (failures++ == 0) first_witness = witness;
  }
  std::string to_json() const;
};

/// max(e, 2n-18) <= diameter <= C(n+1,2) with n+1 vertices; connected graphs only.
VerifyReport verify_bounds(const std::vector<Graph>& graphs, int threads = 1);
/// Every vertex of F(G) has |V|-1 neighbors; connected graphs only.
VerifyReport verify_regular(const std::vector<Graph>& graphs);
/// diameter(F(G - e)) <= diameter(F(G)) for every edge e.
VerifyReport verify_monotone(const std::vector<Graph>& graphs, int threads = 1);
/// For every edge deletion: images of nested sets are nested and not smaller,
/// maximal sets map onto maximal sets, flips map to flips or stay put, and
/// every listed preimage maps back.
VerifyReport verify_sigma(const std::vector<Graph>& graphs);
/// Every upper ideal face of every building set on 1..max_elements elements
/// passes the brute-force SNLFP check.
VerifyReport verify_snlfp(int max_elements);

/// Connected graphs up to isomorphism with min_vertices..max_vertices vertices.
std::vector<Graph> connected_graphs(int min_vertices, int max_vertices);
/// All graphs up to isomorphism with min_vertices..max_vertices vertices.
std::vector<Graph> all_graphs(int min_vertices, int max_vertices);

struct TkRow {
  int k = 0;
  int vertices = 0;
  long long flip_vertices = 0;
  int diameter = 0;
  double seconds = 0;
};

/// Diameters of F(tk(k)) for k = 1..max_k.
std::vector<TkRow> tk_diameter_experiment(int max_k, int threads = 1);
std::string tk_rows_csv(const std::vector<TkRow>& rows);

}  // namespace gassoc
