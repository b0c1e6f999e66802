#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tetraqg/angles.hpp"
#include "tetraqg/errors.hpp"
#include "tetraqg/ids.hpp"
#include "tetraqg/tetrahedron.hpp"
#include "tetraqg/vec.hpp"

namespace tetraqg {

/// Edge-adjacent face walk. On a tetrahedron any two distinct faces share
/// an edge, so the only structural requirement is consecutive distinctness.
using FaceSequence = std::vector<FaceId>;

inline void validate_sequence(const FaceSequence& seq) {
  if (seq.empty()) throw InvalidSequence("face sequence must be non-empty");
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i] == seq[i - 1])
      throw InvalidSequence("consecutive faces must be distinct");
}

/// Shared edge of two distinct faces: the two vertices on both.
inline std::pair<VertexId, VertexId> shared_edge(FaceId f, FaceId g) {
  std::array<VertexId, 2> out{};
  int k = 0;
  for (VertexId v : kVertices)
    if (contains(f, v) && contains(g, v)) out[k++] = v;
  return {out[0], out[1]};
}

struct PlacedFace {
  FaceId face;
  std::array<VertexId, 3> corners;  // face_vertices order
  std::array<Vec2, 3> plane;

  const Vec2& image_of(VertexId v) const {
    for (int i = 0; i < 3; ++i)
      if (corners[i] == v) return plane[i];
    throw VertexNotOnFace(std::string("vertex ") + label(v) +
                          " is not a corner of the placed face");
  }
};

struct Junction {
  VertexId p, q;
  Vec2 p_image, q_image;  // identical in both adjacent placed faces
};

struct UnfoldedStrip {
  std::vector<PlacedFace> faces;
  std::vector<Junction> junctions;  // between faces i and i+1
};

namespace detail {

/// Apex position over segment P->Q at distances (dp, dq), on the chosen
/// side of the segment line (side > 0 means +90-degree normal).
inline Vec2 apex_position(const Vec2& P, const Vec2& Q, double dp, double dq,
                          double side) {
  const Vec2 e = Q - P;
  const double len = norm(e);
  const Vec2 along = e / len;
  const Vec2 normal{-along.y, along.x};
  const double x = (dp * dp + len * len - dq * dq) / (2 * len);
  const double h2 = dp * dp - x * x;
  const double h = h2 > 0 ? std::sqrt(h2) : 0.0;
  return P + along * x + normal * (side > 0 ? h : -h);
}

}  // namespace detail

/// Develops the faces of a sequence into the plane. The first face is
/// placed canonically: its edge shared with the second face (for a single
/// face, its lowest-labeled edge) lies on the x-axis from the origin, the
/// lower-labeled endpoint at the origin. Each later face is reflected
/// across the shared edge, whose endpoint images are copied exactly, so
/// consecutive placed faces share the common edge bit for bit.
inline UnfoldedStrip unfold_strip(const Tetrahedron& t, const FaceSequence& seq) {
  validate_sequence(seq);
  UnfoldedStrip strip;
  strip.faces.reserve(seq.size());

  for (std::size_t i = 0; i < seq.size(); ++i) {
    PlacedFace pf;
    pf.face = seq[i];
    pf.corners = face_vertices(seq[i]);
    if (i == 0) {
      VertexId p, q;
      if (seq.size() >= 2) {
        std::tie(p, q) = shared_edge(seq[0], seq[1]);
      } else {
        p = pf.corners[0];
        q = pf.corners[1];
      }
      const VertexId r = [&] {
        for (VertexId w : pf.corners)
          if (w != p && w != q) return w;
        return pf.corners[0];
      }();
      const Vec2 P{0, 0};
      const Vec2 Q{edge_length(t, p, q), 0};
      // Lower half-plane when a second face will unfold upward.
      const double side = seq.size() >= 2 ? -1.0 : 1.0;
      const Vec2 R = detail::apex_position(P, Q, edge_length(t, p, r),
                                           edge_length(t, q, r), side);
      for (int k = 0; k < 3; ++k) {
        const VertexId w = pf.corners[k];
        pf.plane[k] = (w == p) ? P : (w == q) ? Q : R;
      }
    } else {
      const auto [p, q] = shared_edge(seq[i - 1], seq[i]);
      const PlacedFace& prev = strip.faces[i - 1];
      const Vec2 P = prev.image_of(p);
      const Vec2 Q = prev.image_of(q);
      const VertexId r = [&] {
        for (VertexId w : pf.corners)
          if (w != p && w != q) return w;
        return pf.corners[0];
      }();
      const VertexId r_prev = [&] {
        for (VertexId w : prev.corners)
          if (w != p && w != q) return w;
        return prev.corners[0];
      }();
      // Place the new apex on the side opposite the previous apex.
      const Vec2 e = Q - P;
      const Vec2 normal{-e.y, e.x};
      const double prev_side = dot(prev.image_of(r_prev) - P, normal);
      const Vec2 R = detail::apex_position(P, Q, edge_length(t, p, r),
                                           edge_length(t, q, r),
                                           prev_side > 0 ? -1.0 : 1.0);
      for (int k = 0; k < 3; ++k) {
        const VertexId w = pf.corners[k];
        pf.plane[k] = (w == p) ? P : (w == q) ? Q : R;
      }
      strip.junctions.push_back(Junction{p, q, P, Q});
    }
    strip.faces.push_back(pf);
  }
  return strip;
}

/// Maps a point in a placed face's plane back onto the 3D face.
inline Vec3 refold_point(const Tetrahedron& t, const PlacedFace& pf,
                         const Vec2& pt) {
  const Vec2 e1 = pf.plane[1] - pf.plane[0];
  const Vec2 e2 = pf.plane[2] - pf.plane[0];
  const Vec2 r = pt - pf.plane[0];
  const double den = cross(e1, e2);
  const double s = cross(r, e2) / den;
  const double u = cross(e1, r) / den;
  const Vec3& A = t.position(pf.corners[0]);
  const Vec3& B = t.position(pf.corners[1]);
  const Vec3& C = t.position(pf.corners[2]);
  return A + (B - A) * s + (C - A) * u;
}

/// Tangent direction on the surface at a vertex: a 3D vector lying in the
/// plane of its declared face, pointing into that face's wedge.
struct SurfaceDirection {
  FaceId face;
  Vec3 dir;
};

/// Splits the full surface angle at a vertex (2*pi minus its curvature)
/// into the two sides determined by a pair of tangent directions. Returned
/// as (sweep from `first` to `second` in the development orientation,
/// complement); the pair always sums to the full angle.
inline std::pair<double, double> vertex_side_angles(const Tetrahedron& t,
                                                    VertexId v,
                                                    const SurfaceDirection& first,
                                                    const SurfaceDirection& second) {
  // Development of the cone at v: edges to the other vertices in label
  // order; wedge (i, j) is spanned by the face containing v, w_i, w_j.
  std::array<VertexId, 3> targets{};
  int k = 0;
  for (VertexId w : kVertices)
    if (w != v) targets[k++] = w;
  std::array<Vec3, 3> edge_dir;
  for (int i = 0; i < 3; ++i)
    edge_dir[i] = t.position(targets[i]) - t.position(v);

  auto wedge_angle = [&](int i, int j) {
    return angle_between(edge_dir[i], edge_dir[j]);
  };
  const double w01 = wedge_angle(0, 1);
  const double w12 = wedge_angle(1, 2);
  const double w20 = wedge_angle(2, 0);
  const double total = w01 + w12 + w20;

  auto development_coordinate = [&](const SurfaceDirection& sd) {
    if (!contains(sd.face, v))
      throw DirectionNotTangent("declared face does not contain the vertex");
    const double len = norm(sd.dir);
    if (!(len > 0)) throw DirectionNotTangent("zero direction");
    // In-plane check against the declared face.
    const auto fv = face_vertices(sd.face);
    const Vec3 fn = cross(t.position(fv[1]) - t.position(fv[0]),
                          t.position(fv[2]) - t.position(fv[0]));
    if (std::abs(dot(sd.dir, fn)) > 1e-9 * len * norm(fn))
      throw DirectionNotTangent("direction is not tangent to the declared face");

    int i = -1, j = -1;
    for (int e = 0; e < 3; ++e) {
      if (!contains(sd.face, targets[e])) continue;
      (i < 0 ? i : j) = e;
    }
    const double from_i = angle_between(edge_dir[i], sd.dir);
    const double from_j = angle_between(edge_dir[j], sd.dir);
    if (std::abs(from_i + from_j - wedge_angle(i, j)) > 1e-6)
      throw DirectionNotTangent("direction points outside the face wedge");
    // Wedges in development order: (0,1) from phi(e0)=0, (1,2) from
    // phi(e1)=w01, (0,2) from phi(e2)=w01+w12 measured toward e0.
    if (i == 0 && j == 1) return from_i;
    if (i == 1 && j == 2) return w01 + from_i;
    return w01 + w12 + from_j;  // wedge (0,2), measured from e2
  };

  const double phi_a = development_coordinate(first);
  const double phi_b = development_coordinate(second);
  double delta = phi_b - phi_a;
  while (delta < 0) delta += total;
  while (delta >= total) delta -= total;
  return {delta, total - delta};
}

/// Result of the bounded search for an edge-containing 2-vertex
/// quasigeodesic: the closed curve is edge uv plus a vertex-avoiding
/// geodesic arc from v to u.
struct EdgeArc {
  FaceSequence faces;
  std::vector<Vec3> crossings;  // junction crossing points, refolded to 3D
  std::pair<double, double> sides_at_v;  // surface angles split at v
  std::pair<double, double> sides_at_u;
  double arc_length = 0;
};

struct EdgeQGResult {
  VertexId u, v;
  int depth_searched = 0;
  std::optional<EdgeArc> arc;  // empty: NotFoundUpTo(depth_searched)

  bool found() const { return arc.has_value(); }
};

namespace detail {

inline constexpr double kParamTol = 1e-9;

/// Minimum distance between closed 2D segments.
inline double segment_distance_2d(const Vec2& a1, const Vec2& a2,
                                  const Vec2& b1, const Vec2& b2) {
  const Vec2 da = a2 - a1, db = b2 - b1;
  const double d1 = cross(db, a1 - b1);
  const double d2 = cross(db, a2 - b1);
  const double d3 = cross(da, b1 - a1);
  const double d4 = cross(da, b2 - a1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return 0.0;  // proper crossing
  auto point_seg = [](const Vec2& p, const Vec2& s1, const Vec2& s2) {
    const Vec2 d = s2 - s1;
    const double len2 = dot(d, d);
    double tpar = len2 > 0 ? dot(p - s1, d) / len2 : 0.0;
    tpar = std::clamp(tpar, 0.0, 1.0);
    return distance(p, s1 + d * tpar);
  };
  return std::min(std::min(point_seg(a1, b1, b2), point_seg(a2, b1, b2)),
                  std::min(point_seg(b1, a1, a2), point_seg(b2, a1, a2)));
}

struct ArcCandidate {
  std::vector<Vec2> crossings2d;
  double length = 0;
};

/// Straight-segment test inside an unfolded strip: the segment from v's
/// image to u's image must cross every junction edge strictly inside, in
/// increasing order along the segment.
inline std::optional<ArcCandidate> straight_arc(const UnfoldedStrip& strip,
                                                VertexId u, VertexId v) {
  const Vec2 S = strip.faces.front().image_of(v);
  const Vec2 E = strip.faces.back().image_of(u);
  const Vec2 d = E - S;
  ArcCandidate cand;
  cand.length = norm(d);
  double prev_t = 0.0;
  for (const Junction& jn : strip.junctions) {
    const Vec2 e = jn.q_image - jn.p_image;
    const double den = cross(d, e);
    if (std::abs(den) <= 1e-14 * cand.length * norm(e))
      return std::nullopt;  // parallel or collinear: no transversal crossing
    const Vec2 r = jn.p_image - S;
    const double tpar = cross(r, e) / den;
    const double wpar = cross(r, d) / den;
    if (!(tpar > prev_t + 0 && tpar > kParamTol && tpar < 1 - kParamTol))
      return std::nullopt;
    if (!(wpar > kParamTol && wpar < 1 - kParamTol))
      return std::nullopt;  // must avoid the junction's vertex images
    prev_t = tpar;
    cand.crossings2d.push_back(jn.p_image + e * wpar);
  }
  return cand;
}

}  // namespace detail

/// Bounded breadth-first search over face sequences for a simple closed
/// 2-vertex quasigeodesic containing edge (u, v): the arc runs from v to
/// u, crossing junction edges strictly inside, with surface angle at most
/// pi on both sides at each endpoint, and the closed curve simple.
/// Sequences are enumerated by length then lexicographically, immediate
/// backtracking (F, G, F) excluded, so the first hit is the shortest.
inline EdgeQGResult search_edge_quasigeodesic(const Tetrahedron& t, VertexId u,
                                              VertexId v, int max_faces) {
  if (u == v) throw InvalidEdge("edge endpoints must be distinct");
  if (max_faces < 1) throw InvalidEdge("max_faces must be at least 1");

  EdgeQGResult result{u, v, max_faces, std::nullopt};
  const double scale = max_edge_length(t.positions);
  const double contact_tol = 1e-9 * scale;

  // The face used to anchor the closing edge's tangent direction.
  const FaceId edge_face = [&] {
    for (FaceId f : kFaces)
      if (contains(f, u) && contains(f, v)) return f;
    return FaceId::A;
  }();

  std::vector<FaceId> seq;
  std::optional<EdgeArc> found;

  auto test_sequence = [&]() -> std::optional<EdgeArc> {
    // A single-face straight segment from v to u is the edge itself, and
    // an arc crossing edge uv would make the closed curve non-simple.
    if (seq.size() < 2) return std::nullopt;
    for (std::size_t i = 1; i < seq.size(); ++i) {
      const auto [p, q] = shared_edge(seq[i - 1], seq[i]);
      if ((p == u && q == v) || (p == v && q == u)) return std::nullopt;
    }

    const UnfoldedStrip strip = unfold_strip(t, seq);
    auto cand = detail::straight_arc(strip, u, v);
    if (!cand) return std::nullopt;

    EdgeArc arc;
    arc.faces = seq;
    arc.arc_length = cand->length;
    for (std::size_t i = 0; i < cand->crossings2d.size(); ++i)
      arc.crossings.push_back(
          refold_point(t, strip.faces[i], cand->crossings2d[i]));

    // Quasigeodesic side condition at both endpoints; the sequence has at
    // least two faces here, so at least one crossing exists.
    const Vec3 first_target = arc.crossings.front();
    const Vec3 last_target = arc.crossings.back();
    const SurfaceDirection edge_at_v{edge_face, t.position(u) - t.position(v)};
    const SurfaceDirection arc_at_v{seq.front(), first_target - t.position(v)};
    const SurfaceDirection edge_at_u{edge_face, t.position(v) - t.position(u)};
    const SurfaceDirection arc_at_u{seq.back(), last_target - t.position(u)};
    arc.sides_at_v = vertex_side_angles(t, v, edge_at_v, arc_at_v);
    arc.sides_at_u = vertex_side_angles(t, u, edge_at_u, arc_at_u);
    if (arc.sides_at_v.first > kPi + kClassifyTol ||
        arc.sides_at_v.second > kPi + kClassifyTol ||
        arc.sides_at_u.first > kPi + kClassifyTol ||
        arc.sides_at_u.second > kPi + kClassifyTol)
      return std::nullopt;

    // Simplicity on the surface: pieces that land in the same face must
    // not touch. Pieces between junction interiors cannot pass through
    // face corners, and uv-junctions were excluded above, so same-face
    // piece contact is the only remaining self-intersection mode.
    struct Piece {
      FaceId face;
      Vec2 a, b;  // intrinsic coordinates of the canonical face placement
    };
    std::vector<Piece> pieces;
    std::vector<Vec2> pts;
    pts.push_back(strip.faces.front().image_of(v));
    for (const Vec2& c : cand->crossings2d) pts.push_back(c);
    pts.push_back(strip.faces.back().image_of(u));
    // Express each piece in a face-local frame shared by all visits to
    // that face: barycentric transfer through the canonical single-face
    // placement.
    auto to_canonical = [&](const PlacedFace& pf, const Vec2& pt,
                            const UnfoldedStrip& canon) {
      const Vec2 e1 = pf.plane[1] - pf.plane[0];
      const Vec2 e2 = pf.plane[2] - pf.plane[0];
      const Vec2 r = pt - pf.plane[0];
      const double den = cross(e1, e2);
      const double s = cross(r, e2) / den;
      const double w = cross(e1, r) / den;
      const PlacedFace& cf = canon.faces.front();
      return cf.plane[0] + (cf.plane[1] - cf.plane[0]) * s +
             (cf.plane[2] - cf.plane[0]) * w;
    };
    std::array<std::optional<UnfoldedStrip>, 4> canonical;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      auto& canon = canonical[index(seq[i])];
      if (!canon) canon = unfold_strip(t, FaceSequence{seq[i]});
      pieces.push_back(Piece{seq[i],
                             to_canonical(strip.faces[i], pts[i], *canon),
                             to_canonical(strip.faces[i], pts[i + 1], *canon)});
    }
    for (std::size_t i = 0; i < pieces.size(); ++i)
      for (std::size_t j = i + 1; j < pieces.size(); ++j) {
        if (pieces[i].face != pieces[j].face) continue;
        if (detail::segment_distance_2d(pieces[i].a, pieces[i].b, pieces[j].a,
                                        pieces[j].b) <= contact_tol)
          return std::nullopt;
      }
    return arc;
  };

  for (int target_len = 1; target_len <= max_faces && !found; ++target_len) {
    auto dfs = [&](auto&& self) -> void {
      if (found) return;
      const int len = static_cast<int>(seq.size());
      if (len == target_len) {
        if (contains(seq.back(), u))
          if (auto arc = test_sequence()) found = std::move(arc);
        return;
      }
      for (FaceId f : kFaces) {
        if (len >= 1 && f == seq.back()) continue;
        if (len >= 2 && f == seq[len - 2]) continue;  // no (F, G, F)
        if (len == 0 && !contains(f, v)) continue;
        seq.push_back(f);
        self(self);
        seq.pop_back();
        if (found) return;
      }
    };
    dfs(dfs);
  }

  result.arc = std::move(found);
  return result;
}

}  // namespace tetraqg
