#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace tetraqg {

/// The four labeled vertices of a tetrahedron, totally ordered a < b < c < d.
enum class VertexId : std::uint8_t { a = 0, b = 1, c = 2, d = 3 };

/// The four faces; face X is the triangle spanned by the three vertices
/// other than x, so A = bcd, B = acd, C = abd, D = abc.
enum class FaceId : std::uint8_t { A = 0, B = 1, C = 2, D = 3 };

inline constexpr std::array<VertexId, 4> kVertices{VertexId::a, VertexId::b,
                                                   VertexId::c, VertexId::d};
inline constexpr std::array<FaceId, 4> kFaces{FaceId::A, FaceId::B, FaceId::C,
                                              FaceId::D};

constexpr int index(VertexId v) { return static_cast<int>(v); }
constexpr int index(FaceId f) { return static_cast<int>(f); }

constexpr VertexId opposite(FaceId f) { return static_cast<VertexId>(index(f)); }
constexpr FaceId opposite(VertexId v) { return static_cast<FaceId>(index(v)); }

constexpr bool contains(FaceId f, VertexId v) { return index(f) != index(v); }

constexpr char label(VertexId v) { return static_cast<char>('a' + index(v)); }
constexpr char label(FaceId f) { return static_cast<char>('A' + index(f)); }

/// Three vertices of a face in ascending label order.
constexpr std::array<VertexId, 3> face_vertices(FaceId f) {
  std::array<VertexId, 3> out{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != index(f)) out[k++] = static_cast<VertexId>(i);
  return out;
}

/// Three faces incident to a vertex in ascending label order.
constexpr std::array<FaceId, 3> incident_faces(VertexId v) {
  std::array<FaceId, 3> out{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != index(v)) out[k++] = static_cast<FaceId>(i);
  return out;
}

inline constexpr int kAngleCount = 12;

/// Canonical index of the face angle vF among the 12 face angles,
/// lexicographic by vertex then face: aB,aC,aD,bA,bC,bD,cA,cB,cD,dA,dB,dC.
/// Returns -1 when v lies opposite f (no such angle).
constexpr int angle_index(VertexId v, FaceId f) {
  if (!contains(f, v)) return -1;
  int rank = index(f) - (index(f) > index(v) ? 1 : 0);
  return 3 * index(v) + rank;
}

/// Inverse of angle_index.
constexpr std::pair<VertexId, FaceId> angle_pair(int idx) {
  const VertexId v = static_cast<VertexId>(idx / 3);
  int rank = idx % 3;
  int f = rank >= index(v) ? rank + 1 : rank;
  return {v, static_cast<FaceId>(f)};
}

/// Two-letter angle name, e.g. "aB".
inline std::string angle_name(VertexId v, FaceId f) {
  return std::string{label(v), label(f)};
}

inline std::optional<VertexId> parse_vertex(char ch) {
  if (ch >= 'a' && ch <= 'd') return static_cast<VertexId>(ch - 'a');
  return std::nullopt;
}

inline std::optional<FaceId> parse_face(char ch) {
  if (ch >= 'A' && ch <= 'D') return static_cast<FaceId>(ch - 'A');
  return std::nullopt;
}

/// Index 0..5 of an undirected edge {u,v} in the order ab,ac,ad,bc,bd,cd.
constexpr int edge_index(VertexId u, VertexId v) {
  int i = index(u), j = index(v);
  if (i > j) std::swap(i, j);
  // pairs (0,1)(0,2)(0,3)(1,2)(1,3)(2,3)
  constexpr int base[4] = {0, 3, 5, 6};
  return base[i] + (j - i - 1);
}

inline constexpr std::array<std::pair<VertexId, VertexId>, 6> kEdges{{
    {VertexId::a, VertexId::b},
    {VertexId::a, VertexId::c},
    {VertexId::a, VertexId::d},
    {VertexId::b, VertexId::c},
    {VertexId::b, VertexId::d},
    {VertexId::c, VertexId::d},
}};

}  // namespace tetraqg
