#pragma once

#include <array>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "tetraqg/angles.hpp"
#include "tetraqg/errors.hpp"
#include "tetraqg/ids.hpp"
#include "tetraqg/tetrahedron.hpp"

namespace tetraqg {

/// Deterministic 64-bit generator (splitmix64). Fixed integer arithmetic
/// and a fixed draw order keep sequences identical across platforms.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 mantissa bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Independent substream for trial `index` under `seed`; parallel and
/// serial runs therefore draw identical coordinates per trial.
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 seeder{seed};
  const std::uint64_t a = seeder.next();
  seeder.state = index ^ 0x6A09E667F3BCC909ull;
  const std::uint64_t b = seeder.next();
  return SplitMix64{a ^ (b + 0x9E3779B97F4A7C15ull * (index + 1))};
}

enum class Distribution { UnitCubeUniform, ThinSliver, NearFlat };

inline std::string_view distribution_name(Distribution d) {
  switch (d) {
    case Distribution::UnitCubeUniform: return "unit_cube_uniform";
    case Distribution::ThinSliver: return "thin_sliver";
    case Distribution::NearFlat: return "near_flat";
  }
  return "?";
}

inline std::optional<Distribution> parse_distribution(std::string_view name) {
  if (name == "unit_cube_uniform") return Distribution::UnitCubeUniform;
  if (name == "thin_sliver") return Distribution::ThinSliver;
  if (name == "near_flat") return Distribution::NearFlat;
  return std::nullopt;
}

/// Draws one valid tetrahedron, rejection-sampling degenerate draws from
/// the same stream. Distributions:
///  - unit_cube_uniform: four iid points in [0,1)^3;
///  - thin_sliver: unit cube draw with every z scaled by 1e-3;
///  - near_flat: a,b,c iid in [0,1)^3, then d = a + s(b-a) + t(c-a) with
///    s,t uniform in [-0.5,1.5), lifted 1e-3 along the plane's unit normal.
inline Tetrahedron random_tetrahedron(SplitMix64& rng, Distribution dist) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::array<Vec3, 4> pts{};
    switch (dist) {
      case Distribution::UnitCubeUniform:
        for (Vec3& p : pts) p = {rng.next_unit(), rng.next_unit(), rng.next_unit()};
        break;
      case Distribution::ThinSliver:
        for (Vec3& p : pts)
          p = {rng.next_unit(), rng.next_unit(), rng.next_unit() * 1e-3};
        break;
      case Distribution::NearFlat: {
        for (int i = 0; i < 3; ++i)
          pts[i] = {rng.next_unit(), rng.next_unit(), rng.next_unit()};
        const double s = rng.next_unit() * 2.0 - 0.5;
        const double u = rng.next_unit() * 2.0 - 0.5;
        const Vec3 e1 = pts[1] - pts[0];
        const Vec3 e2 = pts[2] - pts[0];
        const Vec3 n = cross(e1, e2);
        const double nn = norm(n);
        if (nn == 0) continue;
        pts[3] = pts[0] + e1 * s + e2 * u + n * (1e-3 / nn);
        break;
      }
    }
    try {
      return validate_tetrahedron(pts);
    } catch (const DegenerateInput&) {
      continue;
    }
  }
  throw RejectionLimitExceeded(
      "1000 consecutive degenerate draws; distribution is broken");
}

struct TrialConfig {
  long long count = 1;
  std::uint64_t seed = 0;
  Distribution dist = Distribution::UnitCubeUniform;
  unsigned jobs = 1;  // 0 = hardware concurrency
};

/// Per-tetrahedron property evaluation; also the injection hook for tests.
struct TrialOutcome {
  std::array<double, kAngleCount> angles{};
  std::array<double, 4> curvatures{};
  unsigned qg_mask = 0;  // bit index(F) set when dF is a quasigeodesic
  double min_margin = 0;  // best face's worst margin (theorem margin)
  double gauss_bonnet_residual = 0;
  double max_oracle_gap = 0;
  double min_triangle_margin = 0;
  bool theorem_ok = false, triangle_ok = false, failure_curvature_ok = false,
       face_sums_ok = false, gauss_bonnet_ok = false, oracle_ok = false;

  bool all_ok() const {
    return theorem_ok && triangle_ok && failure_curvature_ok && face_sums_ok &&
           gauss_bonnet_ok && oracle_ok;
  }
};

inline TrialOutcome evaluate_tetrahedron(const Tetrahedron& t) {
  TrialOutcome out;
  const AngleTable tab = face_angles(t);
  out.angles = tab.raw();

  out.face_sums_ok = true;
  for (FaceId f : kFaces) {
    double sum = 0;
    for (VertexId v : face_vertices(f)) sum += tab.at(v, f);
    if (std::abs(sum - kPi) > kAngleTol) out.face_sums_ok = false;
  }

  double curv_sum = 0;
  for (VertexId v : kVertices) {
    out.curvatures[index(v)] = curvature(tab, v);
    curv_sum += out.curvatures[index(v)];
  }
  out.gauss_bonnet_residual = std::abs(curv_sum - 4 * kPi);
  out.gauss_bonnet_ok = out.gauss_bonnet_residual <= kAngleTol;

  const Classification cls = quasigeodesic_faces(tab);
  for (FaceId f : kFaces)
    if (cls.faces[index(f)].quasigeodesic) out.qg_mask |= 1u << index(f);
  out.min_margin = cls.best_margin;
  out.theorem_ok = !cls.quasigeodesic_faces.empty();

  out.triangle_ok = true;
  out.min_triangle_margin = std::numeric_limits<double>::infinity();
  for (VertexId v : kVertices)
    for (double m : triangle_inequality_margins(tab, v)) {
      out.min_triangle_margin = std::min(out.min_triangle_margin, m);
      if (m < -kAngleTol) out.triangle_ok = false;
    }

  out.failure_curvature_ok = true;
  for (FaceId f : kFaces)
    for (VertexId v : face_vertices(f))
      if (fails_at(tab, f, v).fails &&
          !(curvature(tab, v) < kPi + kAngleTol))
        out.failure_curvature_ok = false;

  const AngleTable oracle = angles_from_edge_lengths(edge_lengths(t));
  out.oracle_ok = true;
  for (int i = 0; i < kAngleCount; ++i) {
    const double gap = std::abs(tab.raw()[i] - oracle.raw()[i]);
    out.max_oracle_gap = std::max(out.max_oracle_gap, gap);
    if (gap > kAngleTol) out.oracle_ok = false;
  }
  return out;
}

struct Violation {
  long long trial_index;
  std::array<Vec3, 4> coordinates;
  std::string what;
};

struct TrialReport {
  long long trials = 0;
  long long violations = 0;
  std::array<long long, 5> histogram{};  // |quasigeodesic faces| 0..4
  double min_theorem_margin = std::numeric_limits<double>::infinity();
  double max_gauss_bonnet_residual = 0;
  double min_triangle_margin = std::numeric_limits<double>::infinity();
  long long triangle_violations = 0;
  long long failure_curvature_violations = 0;
  long long theorem_violations = 0;
  long long face_sum_violations = 0;
  long long gauss_bonnet_violations = 0;
  long long oracle_violations = 0;
  std::vector<Violation> examples;  // offending coordinates, for replay
};

namespace detail {

/// Fixed 17-significant-digit rendering; round-trip exact for doubles and
/// byte-stable across runs.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline void csv_header(std::ostream& os) {
  os << "seed,index";
  for (int i = 0; i < kAngleCount; ++i) {
    const auto [v, f] = angle_pair(i);
    os << ',' << angle_name(v, f);
  }
  for (VertexId v : kVertices) os << ",omega_" << label(v);
  os << ",qg_mask,min_margin\n";
}

inline void csv_row(std::ostream& os, std::uint64_t seed, long long idx,
                    const TrialOutcome& out) {
  os << seed << ',' << idx;
  for (double a : out.angles) os << ',' << format_double(a);
  for (double c : out.curvatures) os << ',' << format_double(c);
  os << ',' << out.qg_mask << ',' << format_double(out.min_margin) << '\n';
}

inline void merge_outcome(TrialReport& rep, long long idx,
                          const Tetrahedron& t, const TrialOutcome& out) {
  ++rep.trials;
  int qg_count = 0;
  for (int f = 0; f < 4; ++f)
    if (out.qg_mask & (1u << f)) ++qg_count;
  ++rep.histogram[qg_count];
  rep.min_theorem_margin = std::min(rep.min_theorem_margin, out.min_margin);
  rep.max_gauss_bonnet_residual =
      std::max(rep.max_gauss_bonnet_residual, out.gauss_bonnet_residual);
  rep.min_triangle_margin =
      std::min(rep.min_triangle_margin, out.min_triangle_margin);
  if (!out.theorem_ok) ++rep.theorem_violations;
  if (!out.triangle_ok) ++rep.triangle_violations;
  if (!out.failure_curvature_ok) ++rep.failure_curvature_violations;
  if (!out.face_sums_ok) ++rep.face_sum_violations;
  if (!out.gauss_bonnet_ok) ++rep.gauss_bonnet_violations;
  if (!out.oracle_ok) ++rep.oracle_violations;
  if (!out.all_ok()) {
    ++rep.violations;
    if (rep.examples.size() < 32) {
      std::string what;
      if (!out.theorem_ok) what += "theorem ";
      if (!out.triangle_ok) what += "triangle_inequality ";
      if (!out.failure_curvature_ok) what += "failure_curvature ";
      if (!out.face_sums_ok) what += "face_sums ";
      if (!out.gauss_bonnet_ok) what += "gauss_bonnet ";
      if (!out.oracle_ok) what += "oracle ";
      rep.examples.push_back(Violation{idx, t.positions, what});
    }
  }
}

}  // namespace detail

/// Runs seeded property trials. A violation is recorded with the offending
/// coordinates rather than aborting. Trials draw from per-index substreams
/// and the aggregation is commutative, so any job count produces the same
/// report and the same CSV bytes (rows are emitted in index order).
inline TrialReport run_theorem_trials(const TrialConfig& cfg,
                                      std::ostream* csv = nullptr) {
  TrialReport report;
  if (csv) detail::csv_header(*csv);

  struct Row {
    Tetrahedron t;
    TrialOutcome out;
  };

  unsigned jobs = cfg.jobs ? cfg.jobs : std::thread::hardware_concurrency();
  jobs = std::max(1u, jobs);
  const long long n = cfg.count;

  std::vector<Row> rows(static_cast<std::size_t>(n));
  auto work = [&](long long begin, long long end) {
    for (long long i = begin; i < end; ++i) {
      SplitMix64 rng = trial_stream(cfg.seed, static_cast<std::uint64_t>(i));
      Tetrahedron t = random_tetrahedron(rng, cfg.dist);
      rows[static_cast<std::size_t>(i)] = Row{t, evaluate_tetrahedron(t)};
    }
  };
  if (jobs <= 1 || n <= 1) {
    work(0, n);
  } else {
    std::vector<std::future<void>> futures;
    const long long chunk = (n + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const long long begin = static_cast<long long>(j) * chunk;
      const long long end = std::min(n, begin + chunk);
      if (begin >= end) break;
      futures.push_back(
          std::async(std::launch::async, [&work, begin, end] { work(begin, end); }));
    }
    for (auto& f : futures) f.get();
  }

  for (long long i = 0; i < n; ++i) {
    const Row& row = rows[static_cast<std::size_t>(i)];
    detail::merge_outcome(report, i, row.t, row.out);
    if (csv) detail::csv_row(*csv, cfg.seed, i, row.out);
  }
  return report;
}

}  // namespace tetraqg
