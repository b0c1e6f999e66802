#pragma once

#include <stdexcept>
#include <string>

namespace tetraqg {

/// Coordinates describe a flat or collapsed point set.
struct DegenerateInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// NaN or infinity in the input coordinates.
struct NonFiniteInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Edge lengths violate the metric triangle inequality on some face.
struct InvalidLengths : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A (vertex, face) query where the vertex lies opposite the face.
struct VertexNotOnFace : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Certificate multiplier count does not match the system's row count.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Face sequence is empty or has equal consecutive faces.
struct InvalidSequence : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Degenerate edge query (u == v) or non-positive search depth.
struct InvalidEdge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Direction does not lie in the tangent plane of its declared face.
struct DirectionNotTangent : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Random generator produced 1000 consecutive degenerate draws.
struct RejectionLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Internal solver error: the slack objective is bounded by construction,
/// so an unbounded phase signals a builder bug.
struct UnboundedArtifact : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace tetraqg
