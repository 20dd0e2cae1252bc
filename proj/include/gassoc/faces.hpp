#pragma once

#include <memory>
#include <vector>

#include "gassoc/flip_graph.hpp"

namespace gassoc {

/// The face of the nestohedron made of maximal nested sets containing `generator`.
struct FaceSpec {
  std::shared_ptr<const BuildingSet> building;
  std::vector<VertexSet> generator;  // loaded, sorted

  /// Validates the generator as a nested set and loads it.
  static FaceSpec make(std::shared_ptr<const BuildingSet> b, const std::vector<VertexSet>& members);
  bool contains(const std::vector<VertexSet>& maximal) const;
};

/// Every inclusion non-minimal generator member has a singleton label.
bool is_upper_ideal(const FaceSpec& face);
/// Every building set element outside the generator but compatible with it
/// lies in an inclusion-minimal generator member.
bool compatible_elements_below_minimal(const FaceSpec& face);

/// Shared members m such that every member of either set containing m is shared.
std::vector<VertexSet> common_upper_set(const std::vector<VertexSet>& a, const std::vector<VertexSet>& b);

/// Elements inside an inclusion-minimal generator member, plus the remaining singletons.
BuildingSet face_coarse_building_set(const FaceSpec& face);

/// Projects maximal nested sets onto an upper ideal face.
class Normalizer {
 public:
  /// Throws InputError if the face is not an upper ideal face.
  explicit Normalizer(FaceSpec face);
  std::vector<VertexSet> operator()(const std::vector<VertexSet>& maximal) const;
  const BuildingSet& coarse() const { return *coarse_; }

 private:
  FaceSpec face_;
  std::shared_ptr<const BuildingSet> coarse_;
};

std::vector<VertexSet> normalize(const FaceSpec& face, const std::vector<VertexSet>& maximal);

enum class FaceProperty { NLFP, SNLFP, EFP };

struct FaceCheck {
  bool holds = true;
  /// Flip-graph ids: (v, w, u) for NLFP/SNLFP with u the outside vertex, (u, v, w) for EFP.
  std::vector<int> witness;
};

/// Brute-force check over the face vertices given by `in_face`. Throws on an empty face.
FaceCheck check_face(const FlipGraph& idx, const std::vector<char>& in_face, FaceProperty which);
std::vector<char> face_vertices(const FlipGraph& idx, const FaceSpec& face);
bool face_property(const FlipGraph& idx, const FaceSpec& face, FaceProperty which);

}  // namespace gassoc
