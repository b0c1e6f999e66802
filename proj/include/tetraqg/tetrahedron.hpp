#pragma once

#include <array>
#include <cmath>
#include <string>

#include "tetraqg/errors.hpp"
#include "tetraqg/ids.hpp"
#include "tetraqg/vec.hpp"

namespace tetraqg {

/// Four labeled points, affinely independent (unless validation was
/// explicitly disabled). Construct through validate_tetrahedron.
struct Tetrahedron {
  std::array<Vec3, 4> positions{};

  const Vec3& position(VertexId v) const { return positions[index(v)]; }
};

/// Degeneracy is judged scale-free: reject when
/// |det(b-a, c-a, d-a)| <= scale * (max edge length)^3.
inline constexpr double kDegeneracyScale = 1e-12;

inline double max_edge_length(const std::array<Vec3, 4>& p) {
  double m = 0;
  for (auto [u, v] : kEdges)
    m = std::max(m, distance(p[index(u)], p[index(v)]));
  return m;
}

/// Validates coordinates and returns the tetrahedron with labeling
/// order preserved. Pass degeneracy_scale = 0 to accept flat inputs
/// (coincident points are still rejected through zero edge lengths
/// producing zero-volume, which only matters to downstream angle code).
inline Tetrahedron validate_tetrahedron(const std::array<Vec3, 4>& coords,
                                        double degeneracy_scale = kDegeneracyScale) {
  for (const Vec3& p : coords)
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      throw NonFiniteInput("tetrahedron coordinates must be finite");

  if (degeneracy_scale > 0.0) {
    const Vec3 u = coords[1] - coords[0];
    const Vec3 v = coords[2] - coords[0];
    const Vec3 w = coords[3] - coords[0];
    const double det = dot(cross(u, v), w);
    const double edge = max_edge_length(coords);
    if (std::abs(det) <= degeneracy_scale * edge * edge * edge)
      throw DegenerateInput("tetrahedron volume below degeneracy threshold");
  } else {
    // Flat inputs allowed, but every face must still be a real triangle.
    for (FaceId f : kFaces) {
      auto vs = face_vertices(f);
      const Vec3 e1 = coords[index(vs[1])] - coords[index(vs[0])];
      const Vec3 e2 = coords[index(vs[2])] - coords[index(vs[0])];
      if (norm(cross(e1, e2)) <= 0)
        throw DegenerateInput(std::string("face ") + label(f) + " is degenerate");
    }
  }
  return Tetrahedron{coords};
}

inline double edge_length(const Tetrahedron& t, VertexId u, VertexId v) {
  return distance(t.position(u), t.position(v));
}

}  // namespace tetraqg
