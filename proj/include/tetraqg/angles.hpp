#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "tetraqg/errors.hpp"
#include "tetraqg/ids.hpp"
#include "tetraqg/tetrahedron.hpp"

namespace tetraqg {

inline constexpr double kPi = std::numbers::pi;

/// Face sums, Gauss-Bonnet residuals and oracle agreement are held to this.
inline constexpr double kAngleTol = 1e-9;

/// A face boundary only counts as failing at a vertex when the exterior
/// angle exceeds pi by more than this; the exact-pi boundary classifies
/// as quasigeodesic. Margins are reported so callers can be stricter.
inline constexpr double kClassifyTol = 1e-9;

/// The 12 face angles of a tetrahedron, indexed by (vertex, face) with the
/// vertex on the face. Angles are radians in (0, pi); each face's three
/// entries sum to pi.
class AngleTable {
 public:
  double at(VertexId v, FaceId f) const {
    const int idx = angle_index(v, f);
    if (idx < 0)
      throw VertexNotOnFace(std::string("vertex ") + label(v) +
                            " does not lie on face " + label(f));
    return values_[idx];
  }

  void set(VertexId v, FaceId f, double radians) {
    const int idx = angle_index(v, f);
    if (idx < 0)
      throw VertexNotOnFace(std::string("vertex ") + label(v) +
                            " does not lie on face " + label(f));
    values_[idx] = radians;
  }

  const std::array<double, kAngleCount>& raw() const { return values_; }

 private:
  std::array<double, kAngleCount> values_{};
};

/// Angle at each face corner from the 3D embedding: arccos of the
/// normalized dot product of the two edge directions at the corner.
inline AngleTable face_angles(const Tetrahedron& t) {
  AngleTable tab;
  for (FaceId f : kFaces) {
    const auto vs = face_vertices(f);
    for (int i = 0; i < 3; ++i) {
      const VertexId v = vs[i];
      const VertexId p = vs[(i + 1) % 3];
      const VertexId q = vs[(i + 2) % 3];
      tab.set(v, f, angle_between(t.position(p) - t.position(v),
                                  t.position(q) - t.position(v)));
    }
  }
  return tab;
}

/// Six edge lengths keyed by unordered vertex pair.
class EdgeLengths {
 public:
  double at(VertexId u, VertexId v) const { return lengths_[edge_index(u, v)]; }
  void set(VertexId u, VertexId v, double len) { lengths_[edge_index(u, v)] = len; }

 private:
  std::array<double, 6> lengths_{};
};

inline EdgeLengths edge_lengths(const Tetrahedron& t) {
  EdgeLengths out;
  for (auto [u, v] : kEdges) out.set(u, v, edge_length(t, u, v));
  return out;
}

/// Planar law of cosines per face. This is the independent second route to
/// the angle table; it checks each face's metric triangle inequality but
/// deliberately not 3D embeddability, so it is an intra-face oracle only.
inline AngleTable angles_from_edge_lengths(const EdgeLengths& lengths) {
  for (auto [u, v] : kEdges)
    if (!(lengths.at(u, v) > 0))
      throw InvalidLengths("edge lengths must be positive");
  AngleTable tab;
  for (FaceId f : kFaces) {
    const auto vs = face_vertices(f);
    for (int i = 0; i < 3; ++i) {
      const VertexId v = vs[i];
      const VertexId p = vs[(i + 1) % 3];
      const VertexId q = vs[(i + 2) % 3];
      const double lp = lengths.at(v, p);
      const double lq = lengths.at(v, q);
      const double lo = lengths.at(p, q);
      if (lo >= lp + lq || lp >= lq + lo || lq >= lp + lo)
        throw InvalidLengths(std::string("face ") + label(f) +
                             " violates the triangle inequality");
      double c = (lp * lp + lq * lq - lo * lo) / (2 * lp * lq);
      if (c > 1.0) c = 1.0;
      if (c < -1.0) c = -1.0;
      tab.set(v, f, std::acos(c));
    }
  }
  return tab;
}

/// Angle defect 2*pi minus the three incident face angles.
inline double curvature(const AngleTable& tab, VertexId v) {
  double sum = 0;
  for (FaceId f : incident_faces(v)) sum += tab.at(v, f);
  return 2 * kPi - sum;
}

/// Sum of the two face angles at v that do not belong to f; the angle on
/// the far side of f's boundary at v.
inline double exterior_angle(const AngleTable& tab, FaceId f, VertexId v) {
  if (!contains(f, v))
    throw VertexNotOnFace(std::string("vertex ") + label(v) +
                          " does not lie on face " + label(f));
  double sum = 0;
  for (FaceId g : incident_faces(v))
    if (g != f) sum += tab.at(v, g);
  return sum;
}

struct FailureReport {
  FaceId face;
  VertexId vertex;
  double exterior_sum;  // radians
  bool fails;
  double margin;  // exterior_sum - pi, signed
};

inline FailureReport fails_at(const AngleTable& tab, FaceId f, VertexId v) {
  const double ext = exterior_angle(tab, f, v);
  return FailureReport{f, v, ext, ext > kPi + kClassifyTol, ext - kPi};
}

struct FaceClassification {
  FaceId face;
  std::array<FailureReport, 3> at_vertices;
  bool quasigeodesic;
  /// pi minus the worst exterior angle; positive iff the boundary is a
  /// quasigeodesic with room to spare.
  double margin;
};

struct Classification {
  std::array<FaceClassification, 4> faces;
  std::vector<FaceId> quasigeodesic_faces;
  /// Largest per-face margin; > 0 for every valid tetrahedron.
  double best_margin;
};

/// F's boundary is a simple closed quasigeodesic iff F fails at none of
/// its three vertices.
inline Classification quasigeodesic_faces(const AngleTable& tab) {
  Classification out{};
  out.best_margin = -std::numeric_limits<double>::infinity();
  for (FaceId f : kFaces) {
    FaceClassification fc{};
    fc.face = f;
    fc.quasigeodesic = true;
    double worst = 0;
    const auto vs = face_vertices(f);
    for (int i = 0; i < 3; ++i) {
      fc.at_vertices[i] = fails_at(tab, f, vs[i]);
      if (fc.at_vertices[i].fails) fc.quasigeodesic = false;
      worst = std::max(worst, fc.at_vertices[i].exterior_sum);
    }
    fc.margin = kPi - worst;
    if (fc.quasigeodesic) out.quasigeodesic_faces.push_back(f);
    out.best_margin = std::max(out.best_margin, fc.margin);
    out.faces[index(f)] = fc;
  }
  return out;
}

/// For the three incident angles (a0,a1,a2) at v, returns
/// (a1+a2-a0, a0+a2-a1, a0+a1-a2); all nonnegative up to tolerance for
/// tables from valid tetrahedra, with a zero flagging a flat vertex.
inline std::array<double, 3> triangle_inequality_margins(const AngleTable& tab,
                                                         VertexId v) {
  const auto fs = incident_faces(v);
  const std::array<double, 3> a{tab.at(v, fs[0]), tab.at(v, fs[1]),
                                tab.at(v, fs[2])};
  return {a[1] + a[2] - a[0], a[0] + a[2] - a[1], a[0] + a[1] - a[2]};
}

}  // namespace tetraqg
