#pragma once

#include <optional>

#include "gassoc/hamiltonian.hpp"

namespace gassoc::detail {

enum class FixedRootShape { Point, Single, Square, Larger };

/// Shape of F_v(G): G minus v with no edge, one edge, two disjoint edges, or more.
FixedRootShape fixed_root_shape(const Graph& g, Vertex v);
/// Root vertex of a short flip of a connected graph; throws otherwise.
Vertex single_root(const Ridge& f);
/// Whether {v} labels a child of the root {root} in the spine of `flip`.
bool child_of_root(const Ridge& flip, Vertex root, Vertex v);
/// Preference tier of a bridge in first mode (0 best, 3 unusable).
int first_mode_tier(const Graph& g, Vertex v1, Vertex v2, std::optional<Vertex> v3, const Ridge& f, const Bridge& br);

}  // namespace gassoc::detail
