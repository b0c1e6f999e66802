#pragma once

#include <array>
#include <cstddef>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tetraqg/angles.hpp"
#include "tetraqg/ids.hpp"
#include "tetraqg/linear_system.hpp"
#include "tetraqg/simplex.hpp"

namespace tetraqg {

/// For each face, the vertex at which it is asserted to fail. witness(F)
/// must be a vertex of F, so there are 3^4 = 81 assignments.
struct WitnessAssignment {
  std::array<VertexId, 4> witness{};

  VertexId at(FaceId f) const { return witness[index(f)]; }

  bool valid() const {
    for (FaceId f : kFaces)
      if (!contains(f, at(f))) return false;
    return true;
  }

  /// e.g. "A-b_B-a_C-d_D-c"; used for certificate file names.
  std::string name() const {
    std::string out;
    for (FaceId f : kFaces) {
      if (!out.empty()) out += '_';
      out += label(f);
      out += '-';
      out += label(at(f));
    }
    return out;
  }

  bool operator==(const WitnessAssignment&) const = default;
};

/// All 81 assignments, lexicographic by face then vertex.
inline std::vector<WitnessAssignment> enumerate_assignments() {
  std::vector<WitnessAssignment> out;
  out.reserve(81);
  for (VertexId wa : face_vertices(FaceId::A))
    for (VertexId wb : face_vertices(FaceId::B))
      for (VertexId wc : face_vertices(FaceId::C))
        for (VertexId wd : face_vertices(FaceId::D))
          out.push_back(WitnessAssignment{{wa, wb, wc, wd}});
  return out;
}

/// Failure pattern taxonomy by number of distinct witness vertices:
/// 4 -> Case1; 2 -> Case2a when one vertex witnesses three faces, else
/// Case2b; 3 -> let b* be the doubled vertex: Case3b when one of b*'s two
/// faces is the face spanned by the three witness vertices, else Case3a.
/// One distinct vertex is impossible (a face never contains its opposite).
enum class CaseLabel { Case1, Case2a, Case2b, Case3a, Case3b };

inline std::string_view case_name(CaseLabel c) {
  switch (c) {
    case CaseLabel::Case1: return "Case1";
    case CaseLabel::Case2a: return "Case2a";
    case CaseLabel::Case2b: return "Case2b";
    case CaseLabel::Case3a: return "Case3a";
    case CaseLabel::Case3b: return "Case3b";
  }
  return "?";
}

inline CaseLabel classify_case(const WitnessAssignment& w) {
  std::array<int, 4> times_witness{};
  for (FaceId f : kFaces) ++times_witness[index(w.at(f))];
  int distinct = 0, max_mult = 0;
  for (int n : times_witness) {
    if (n > 0) ++distinct;
    max_mult = std::max(max_mult, n);
  }
  if (distinct == 4) return CaseLabel::Case1;
  if (distinct == 2) return max_mult == 3 ? CaseLabel::Case2a : CaseLabel::Case2b;

  VertexId doubled = VertexId::a, missing = VertexId::a;
  for (VertexId v : kVertices) {
    if (times_witness[index(v)] == 2) doubled = v;
    if (times_witness[index(v)] == 0) missing = v;
  }
  const FaceId spanned = opposite(missing);  // face of the three witnesses
  const bool doubled_on_spanned = w.at(spanned) == doubled;
  return doubled_on_spanned ? CaseLabel::Case3b : CaseLabel::Case3a;
}

enum class TriangleMode { Strict, Weak, Equality };

/// Flat-vertex pattern for equality mode: for each vertex, optionally the
/// index (0..2, into incident_faces order) of the incident angle that
/// equals the sum of the other two at that flattened vertex.
struct FlatPattern {
  std::array<std::optional<int>, 4> dominant{};

  bool any() const {
    for (const auto& o : dominant)
      if (o) return true;
    return false;
  }

  std::string name() const {
    std::string out;
    for (VertexId v : kVertices) {
      if (!dominant[index(v)]) continue;
      if (!out.empty()) out += '_';
      const FaceId f = incident_faces(v)[*dominant[index(v)]];
      out += angle_name(v, f);
    }
    return out.empty() ? "none" : out;
  }
};

/// All 255 equality-mode patterns: every non-empty subset of vertices,
/// times the 3 possible dominant angles per flattened vertex.
inline std::vector<FlatPattern> enumerate_flat_patterns() {
  std::vector<FlatPattern> out;
  for (int mask = 1; mask < 16; ++mask) {
    std::vector<int> members;
    for (int v = 0; v < 4; ++v)
      if (mask & (1 << v)) members.push_back(v);
    int combos = 1;
    for (std::size_t k = 0; k < members.size(); ++k) combos *= 3;
    for (int c = 0; c < combos; ++c) {
      FlatPattern p;
      int rest = c;
      for (int v : members) {
        p.dominant[v] = rest % 3;
        rest /= 3;
      }
      out.push_back(p);
    }
  }
  return out;
}

/// Constraint system over the 12 face angles in pi-units: four face-sum
/// equalities (each face sums to 1), 12 strict positivity rows, 4 strict
/// failure rows (the two angles at witness(F) outside F sum above 1), and
/// 12 triangle rows at the four vertices whose relation follows the mode.
/// In equality mode the pattern picks which triangle row per flattened
/// vertex becomes an equality; the rest stay weak. Upper bounds angle < 1
/// are implied by positivity plus the face sums and are omitted.
inline RationalLinearSystem build_system(
    const WitnessAssignment& w, TriangleMode mode,
    const std::optional<FlatPattern>& flat = std::nullopt) {
  if (mode == TriangleMode::Equality && !flat)
    throw std::invalid_argument("equality mode requires a flat pattern");

  RationalLinearSystem sys;
  sys.variables.reserve(kAngleCount + 1);
  for (int i = 0; i < kAngleCount; ++i) {
    const auto [v, f] = angle_pair(i);
    sys.variables.push_back(angle_name(v, f));
  }
  sys.variables.push_back("eps");

  for (FaceId f : kFaces) {
    LinearRow& row = sys.add_row(std::string("sum_") + label(f),
                                 Relation::Equal, 1, RowKind::FaceSum);
    for (VertexId v : face_vertices(f)) row.coeffs[angle_index(v, f)] = 1;
  }

  for (int i = 0; i < kAngleCount; ++i) {
    const auto [v, f] = angle_pair(i);
    LinearRow& row = sys.add_row("pos_" + angle_name(v, f),
                                 Relation::StrictGt, 0, RowKind::Positivity);
    row.coeffs[i] = 1;
  }

  for (FaceId f : kFaces) {
    const VertexId v = w.at(f);
    LinearRow& row =
        sys.add_row(std::string("fail_") + label(f) + "_at_" + label(v),
                    Relation::StrictGt, 1, RowKind::Failure);
    for (FaceId g : incident_faces(v))
      if (g != f) row.coeffs[angle_index(v, g)] = 1;
  }

  for (VertexId v : kVertices) {
    const auto fs = incident_faces(v);
    for (int i = 0; i < 3; ++i) {
      Relation rel = Relation::WeakGe;
      if (mode == TriangleMode::Strict) {
        rel = Relation::StrictGt;
      } else if (mode == TriangleMode::Equality) {
        const auto& dom = flat->dominant[index(v)];
        if (dom && *dom == i) rel = Relation::Equal;
      }
      LinearRow& row = sys.add_row("tri_" + angle_name(v, fs[i]), rel, 0,
                                   RowKind::Triangle);
      for (int k = 0; k < 3; ++k)
        row.coeffs[angle_index(v, fs[k])] = (k == i) ? -1 : 1;
    }
  }
  return sys;
}

/// Copy of a system without its triangle rows (used to demonstrate that
/// the triangle inequalities carry the Case 3b refutation).
inline RationalLinearSystem drop_rows(const RationalLinearSystem& sys,
                                      RowKind kind) {
  RationalLinearSystem out;
  out.variables = sys.variables;
  for (const LinearRow& row : sys.rows)
    if (row.kind != kind) out.rows.push_back(row);
  return out;
}

struct SolveRecord {
  bool infeasible = false;
  bool certificate_verified = false;
  InfeasibilityCertificate certificate;
};

struct FlatRecord {
  int variants = 0;
  int infeasible = 0;
  /// Variants proven by re-verifying the weak certificate; the remainder
  /// required a full solve (expected zero).
  int fallback_solves = 0;
  /// Indices into enumerate_flat_patterns() of variants NOT proven
  /// infeasible (expected empty).
  std::vector<int> feasible_patterns;
};

struct AssignmentRecord {
  WitnessAssignment assignment;
  CaseLabel label = CaseLabel::Case1;
  std::optional<SolveRecord> strict_run;
  std::optional<SolveRecord> weak_run;
  std::optional<FlatRecord> flat_run;
};

struct FlatSubsetSummary {
  int vertex_mask = 0;  // bit i set when vertex i is flattened
  int variants = 0;     // across all 81 assignments
  int infeasible = 0;

  std::string vertices() const {
    std::string out;
    for (int v = 0; v < 4; ++v)
      if (vertex_mask & (1 << v)) out += static_cast<char>('a' + v);
    return out;
  }
};

struct TheoremReport {
  std::vector<AssignmentRecord> assignments;
  std::array<int, 5> case_counts{};  // indexed by CaseLabel
  bool ran_strict = false, ran_weak = false, ran_flat = false;
  bool strict_all_infeasible = false;
  bool weak_all_infeasible = false;
  bool flat_all_infeasible = false;
  bool all_certificates_verified = false;
  int flat_fallback_solves = 0;
  std::vector<FlatSubsetSummary> flat_subsets;

  /// Overall verdict: every requested variant infeasible with verified
  /// certificates.
  bool verified() const {
    if (!all_certificates_verified) return false;
    if (ran_strict && !strict_all_infeasible) return false;
    if (ran_weak && !weak_all_infeasible) return false;
    if (ran_flat && !flat_all_infeasible) return false;
    return true;
  }
};

struct TheoremOptions {
  bool strict = true;
  bool weak = true;
  bool flat = true;
  unsigned jobs = 0;  // 0 = hardware concurrency
};

namespace detail {

inline SolveRecord solve_and_check(const RationalLinearSystem& sys) {
  SolveRecord rec;
  FeasibilityOutcome out = solve_feasibility(sys);
  rec.infeasible = !out.feasible();
  if (rec.infeasible) {
    rec.certificate = out.certificate();
    rec.certificate_verified = verify_certificate(sys, rec.certificate);
  }
  return rec;
}

/// Proves every flat variant of one assignment. The weak certificate is
/// re-verified against each variant (variants only turn weak triangle rows
/// into equalities, so a valid weak refutation stays valid); any variant
/// where that re-verification fails is solved outright.
inline FlatRecord run_flat_variants(const WitnessAssignment& w,
                                    const InfeasibilityCertificate* weak_cert,
                                    const std::vector<FlatPattern>& patterns) {
  FlatRecord rec;
  for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
    RationalLinearSystem variant =
        build_system(w, TriangleMode::Equality, patterns[pi]);
    ++rec.variants;
    if (weak_cert && verify_certificate(variant, *weak_cert)) {
      ++rec.infeasible;
      continue;
    }
    ++rec.fallback_solves;
    FeasibilityOutcome out = solve_feasibility(variant);
    if (!out.feasible() && verify_certificate(variant, out.certificate()))
      ++rec.infeasible;
    else
      rec.feasible_patterns.push_back(static_cast<int>(pi));
  }
  return rec;
}

}  // namespace detail

/// Solves every witness assignment in the requested triangle modes and
/// aggregates a machine-checkable report. Assignments are independent and
/// solved concurrently; the report is merged in assignment order, so the
/// result is identical for any job count.
inline TheoremReport verify_theorem(const TheoremOptions& opt = {}) {
  const std::vector<WitnessAssignment> assignments = enumerate_assignments();
  const std::vector<FlatPattern> patterns =
      opt.flat ? enumerate_flat_patterns() : std::vector<FlatPattern>{};
  const bool need_weak = opt.weak || opt.flat;

  TheoremReport report;
  report.ran_strict = opt.strict;
  report.ran_weak = opt.weak;
  report.ran_flat = opt.flat;
  report.assignments.resize(assignments.size());

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      AssignmentRecord rec;
      rec.assignment = assignments[i];
      rec.label = classify_case(assignments[i]);
      if (opt.strict)
        rec.strict_run = detail::solve_and_check(
            build_system(assignments[i], TriangleMode::Strict));
      std::optional<SolveRecord> weak_run;
      if (need_weak)
        weak_run = detail::solve_and_check(
            build_system(assignments[i], TriangleMode::Weak));
      if (opt.weak) rec.weak_run = weak_run;
      if (opt.flat) {
        const InfeasibilityCertificate* donor =
            (weak_run && weak_run->infeasible && weak_run->certificate_verified)
                ? &weak_run->certificate
                : nullptr;
        rec.flat_run =
            detail::run_flat_variants(assignments[i], donor, patterns);
      }
      report.assignments[i] = std::move(rec);
    }
  };

  unsigned jobs = opt.jobs ? opt.jobs : std::thread::hardware_concurrency();
  if (jobs <= 1 || assignments.size() <= 1) {
    work(0, assignments.size());
  } else {
    jobs = std::min<unsigned>(jobs, assignments.size());
    std::vector<std::future<void>> futures;
    const std::size_t chunk = (assignments.size() + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(assignments.size(), begin + chunk);
      if (begin >= end) break;
      futures.push_back(
          std::async(std::launch::async, [&work, begin, end] { work(begin, end); }));
    }
    for (auto& f : futures) f.get();
  }

  report.strict_all_infeasible = opt.strict;
  report.weak_all_infeasible = opt.weak;
  report.flat_all_infeasible = opt.flat;
  report.all_certificates_verified = true;
  for (const AssignmentRecord& rec : report.assignments) {
    ++report.case_counts[static_cast<int>(rec.label)];
    if (rec.strict_run) {
      if (!rec.strict_run->infeasible) report.strict_all_infeasible = false;
      if (rec.strict_run->infeasible && !rec.strict_run->certificate_verified)
        report.all_certificates_verified = false;
    }
    if (rec.weak_run) {
      if (!rec.weak_run->infeasible) report.weak_all_infeasible = false;
      if (rec.weak_run->infeasible && !rec.weak_run->certificate_verified)
        report.all_certificates_verified = false;
    }
    if (rec.flat_run) {
      if (rec.flat_run->infeasible != rec.flat_run->variants)
        report.flat_all_infeasible = false;
      report.flat_fallback_solves += rec.flat_run->fallback_solves;
    }
  }

  if (opt.flat) {
    std::vector<int> pattern_mask(patterns.size(), 0);
    std::map<int, FlatSubsetSummary> by_mask;
    for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
      int mask = 0;
      for (int v = 0; v < 4; ++v)
        if (patterns[pi].dominant[v]) mask |= 1 << v;
      pattern_mask[pi] = mask;
      by_mask[mask].vertex_mask = mask;
      by_mask[mask].variants += static_cast<int>(report.assignments.size());
      by_mask[mask].infeasible += static_cast<int>(report.assignments.size());
    }
    for (const AssignmentRecord& rec : report.assignments)
      if (rec.flat_run)
        for (int pi : rec.flat_run->feasible_patterns)
          --by_mask[pattern_mask[pi]].infeasible;
    for (auto& [mask, summary] : by_mask)
      report.flat_subsets.push_back(summary);
  }
  return report;
}

}  // namespace tetraqg
