#pragma once

#include <cmath>

#include "tetraqg/angles.hpp"
#include "tetraqg/tetrahedron.hpp"

namespace tetraqg::fixtures {

/// Unit regular tetrahedron.
inline Tetrahedron regular() {
  const double s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  return validate_tetrahedron({Vec3{0, 0, 0}, Vec3{1, 0, 0},
                               Vec3{0.5, s3 / 2, 0}, Vec3{0.5, s3 / 6, s6 / 3}});
}

/// Tetrahedron whose only quasigeodesic face boundary is dB.
inline Tetrahedron one_q3() {
  return validate_tetrahedron({Vec3{0, 0, 0}, Vec3{1, 0, 0},
                               Vec3{4.91, 3.24, 0}, Vec3{-3.54, 1.98, 4.58}});
}

/// Tetrahedron with no 2-vertex quasigeodesic through any edge.
inline Tetrahedron no_two_vertex() {
  return validate_tetrahedron({Vec3{0, 0, 0}, Vec3{1, 0, 0},
                               Vec3{4.40, 2.02, 0}, Vec3{-0.97, 0.16, 1.46}});
}

/// Right-angle corner tetrahedron (unit orthoscheme).
inline Tetrahedron orthoscheme() {
  return validate_tetrahedron(
      {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}});
}

inline constexpr double kDegree = kPi / 180.0;

}  // namespace tetraqg::fixtures
