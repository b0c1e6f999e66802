#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>

#include "tetraqg/cases.hpp"
#include "tetraqg/linear_system.hpp"
#include "tetraqg/simplex.hpp"

using namespace tetraqg;

namespace {

WitnessAssignment assignment(VertexId a, VertexId b, VertexId c, VertexId d) {
  return WitnessAssignment{{a, b, c, d}};
}

const WitnessAssignment kCase2a =
    assignment(VertexId::b, VertexId::a, VertexId::b, VertexId::b);
const WitnessAssignment kCase3a =
    assignment(VertexId::c, VertexId::d, VertexId::b, VertexId::b);
const WitnessAssignment kCase3b =
    assignment(VertexId::b, VertexId::d, VertexId::b, VertexId::c);

InfeasibilityCertificate named_certificate(
    const RationalLinearSystem& sys,
    const std::map<std::string, Rational>& by_name) {
  InfeasibilityCertificate cert;
  cert.multipliers.assign(sys.rows.size(), Rational(0));
  for (const auto& [name, value] : by_name) {
    bool found = false;
    for (std::size_t i = 0; i < sys.rows.size(); ++i)
      if (sys.rows[i].name == name) {
        cert.multipliers[i] = value;
        found = true;
      }
    REQUIRE(found);
  }
  return cert;
}

}  // namespace

TEST_CASE("enumerate_assignments lists all 81 in canonical order") {
  const auto all = enumerate_assignments();
  REQUIRE(all.size() == 81);
  for (const WitnessAssignment& w : all) REQUIRE(w.valid());

  CHECK(all.front() ==
        assignment(VertexId::b, VertexId::a, VertexId::a, VertexId::a));
  CHECK(all.back() ==
        assignment(VertexId::d, VertexId::d, VertexId::d, VertexId::c));

  std::set<std::string> names;
  for (const WitnessAssignment& w : all) names.insert(w.name());
  CHECK(names.size() == 81);
  CHECK(names.count("A-b_B-d_C-b_D-c") == 1);

  CHECK(enumerate_assignments() == all);
}

TEST_CASE("classify_case reproduces the reference patterns") {
  CHECK(classify_case(assignment(VertexId::b, VertexId::a, VertexId::d,
                                 VertexId::c)) == CaseLabel::Case1);
  CHECK(classify_case(kCase2a) == CaseLabel::Case2a);
  CHECK(classify_case(assignment(VertexId::b, VertexId::a, VertexId::b,
                                 VertexId::a)) == CaseLabel::Case2b);
  CHECK(classify_case(kCase3a) == CaseLabel::Case3a);
  CHECK(classify_case(kCase3b) == CaseLabel::Case3b);
}

TEST_CASE("case group counts over all 81 assignments") {
  std::array<int, 5> counts{};
  for (const WitnessAssignment& w : enumerate_assignments())
    ++counts[static_cast<int>(classify_case(w))];
  CHECK(counts[static_cast<int>(CaseLabel::Case1)] == 9);
  CHECK(counts[static_cast<int>(CaseLabel::Case2a)] == 12);
  CHECK(counts[static_cast<int>(CaseLabel::Case2b)] == 12);
  CHECK(counts[static_cast<int>(CaseLabel::Case3a)] == 24);
  CHECK(counts[static_cast<int>(CaseLabel::Case3b)] == 24);
}

TEST_CASE("build_system row inventory") {
  const RationalLinearSystem strict = build_system(kCase2a, TriangleMode::Strict);
  CHECK(strict.variables.size() == 13);  // 12 angles + eps
  CHECK(strict.rows.size() == 32);
  CHECK(strict.count(Relation::Equal) == 4);
  CHECK(strict.count(Relation::StrictGt) == 28);
  CHECK(strict.count(Relation::WeakGe) == 0);

  const RationalLinearSystem weak = build_system(kCase2a, TriangleMode::Weak);
  CHECK(weak.count(Relation::Equal) == 4);
  CHECK(weak.count(Relation::StrictGt) == 16);  // positivity + failures
  CHECK(weak.count(Relation::WeakGe) == 12);

  CHECK_THROWS_AS(build_system(kCase2a, TriangleMode::Equality),
                  std::invalid_argument);

  FlatPattern flat_a;
  flat_a.dominant[index(VertexId::a)] = 0;  // aB = aC + aD
  const RationalLinearSystem eq =
      build_system(kCase2a, TriangleMode::Equality, flat_a);
  CHECK(eq.count(Relation::Equal) == 5);
  CHECK(eq.count(Relation::WeakGe) == 11);
  const LinearRow* row = eq.find_row("tri_aB");
  REQUIRE(row != nullptr);
  CHECK(row->rel == Relation::Equal);
}

TEST_CASE("failure rows carry the expected coefficients") {
  const RationalLinearSystem sys = build_system(kCase2a, TriangleMode::Strict);
  const LinearRow* fa = sys.find_row("fail_A_at_b");
  REQUIRE(fa != nullptr);
  CHECK(fa->rel == Relation::StrictGt);
  CHECK(fa->rhs == 1);
  CHECK(fa->coeffs[angle_index(VertexId::b, FaceId::C)] == 1);
  CHECK(fa->coeffs[angle_index(VertexId::b, FaceId::D)] == 1);
  CHECK(fa->coeffs[angle_index(VertexId::b, FaceId::A)] == 0);

  const LinearRow* fb = sys.find_row("fail_B_at_a");
  REQUIRE(fb != nullptr);
  CHECK(fb->coeffs[angle_index(VertexId::a, FaceId::C)] == 1);
  CHECK(fb->coeffs[angle_index(VertexId::a, FaceId::D)] == 1);
}

TEST_CASE("face sums linearly force the total angle to 4 in pi-units") {
  const RationalLinearSystem sys = build_system(kCase2a, TriangleMode::Strict);
  std::vector<Rational> total(sys.variables.size(), Rational(0));
  Rational rhs = 0;
  for (const LinearRow& row : sys.rows)
    if (row.kind == RowKind::FaceSum) {
      for (std::size_t j = 0; j < row.coeffs.size(); ++j)
        total[j] += row.coeffs[j];
      rhs += row.rhs;
    }
  for (int i = 0; i < kAngleCount; ++i) CHECK(total[i] == 1);
  CHECK(rhs == 4);
}

TEST_CASE("enumerate_flat_patterns covers 255 subset choices") {
  const auto patterns = enumerate_flat_patterns();
  CHECK(patterns.size() == 255);
  std::set<std::string> names;
  for (const FlatPattern& p : patterns) {
    CHECK(p.any());
    names.insert(p.name());
  }
  CHECK(names.size() == 255);
}

TEST_CASE("the Case 2a strict system is infeasible") {
  const RationalLinearSystem sys = build_system(kCase2a, TriangleMode::Strict);
  const FeasibilityOutcome out = solve_feasibility(sys);
  REQUIRE_FALSE(out.feasible());
  CHECK(verify_certificate(sys, out.certificate()));
}

TEST_CASE("hand certificate mirroring the Case 2a summation") {
  const RationalLinearSystem sys = build_system(kCase2a, TriangleMode::Strict);
  const InfeasibilityCertificate cert = named_certificate(
      sys, {{"fail_A_at_b", Rational(1)},
            {"fail_B_at_a", Rational(1)},
            {"pos_dC", Rational(1)},
            {"pos_cD", Rational(1)},
            {"sum_C", Rational(-1)},
            {"sum_D", Rational(-1)}});
  CHECK(verify_certificate(sys, cert));
}

TEST_CASE("hand certificate mirroring the Case 3a summation") {
  const RationalLinearSystem sys = build_system(kCase3a, TriangleMode::Strict);
  const InfeasibilityCertificate cert = named_certificate(
      sys, {{"fail_B_at_d", Rational(1)},
            {"fail_D_at_b", Rational(1)},
            {"pos_aC", Rational(1)},
            {"pos_cA", Rational(1)},
            {"sum_A", Rational(-1)},
            {"sum_C", Rational(-1)}});
  CHECK(verify_certificate(sys, cert));
}

TEST_CASE("Case 3b becomes feasible once triangle rows are removed") {
  const RationalLinearSystem sys =
      drop_rows(build_system(kCase3b, TriangleMode::Strict), RowKind::Triangle);
  CHECK(sys.rows.size() == 20);
  const FeasibilityOutcome out = solve_feasibility(sys);
  REQUIRE(out.feasible());
  CHECK(satisfies(sys, out.point()));
  // All four failure rows hold strictly at the exact point.
  for (const LinearRow& row : sys.rows) {
    if (row.kind != RowKind::Failure) continue;
    Rational lhs = 0;
    for (std::size_t j = 0; j < row.coeffs.size(); ++j)
      lhs += row.coeffs[j] * out.point().values[j];
    CHECK(lhs > row.rhs);
  }
}

TEST_CASE("pinned Case 3b face-A angles imply the walk-through bounds") {
  // Failure rows plus pins (no triangle rows) must force dC > 2/5,
  // bD > 9/10 and cB > 7/10; proving each by refuting its negation.
  auto pinned = [&]() {
    RationalLinearSystem sys =
        drop_rows(build_system(kCase3b, TriangleMode::Strict), RowKind::Triangle);
    sys.add_row("pin_bA", {{"bA", Rational(1)}}, Relation::Equal, Rational(1, 10));
    sys.add_row("pin_cA", {{"cA", Rational(1)}}, Relation::Equal, Rational(3, 10));
    sys.add_row("pin_dA", {{"dA", Rational(1)}}, Relation::Equal, Rational(6, 10));
    return sys;
  };
  REQUIRE(solve_feasibility(pinned()).feasible());

  const std::map<std::string, Rational> bounds{{"dC", Rational(2, 5)},
                                               {"bD", Rational(9, 10)},
                                               {"cB", Rational(7, 10)}};
  for (const auto& [var, bound] : bounds) {
    RationalLinearSystem negated = pinned();
    // var <= bound, i.e. -var >= -bound.
    negated.add_row("negate_" + var, {{var, Rational(-1)}}, Relation::WeakGe,
                    -bound);
    const FeasibilityOutcome out = solve_feasibility(negated);
    REQUIRE_FALSE(out.feasible());
    CHECK(verify_certificate(negated, out.certificate()));
  }
  // Control: a slack bound stays feasible, so the refutations are sharp.
  RationalLinearSystem control = pinned();
  control.add_row("dC_cap", {{"dC", Rational(-1)}}, Relation::WeakGe,
                  Rational(-1, 2));
  CHECK(solve_feasibility(control).feasible());
}

TEST_CASE("sampled flat variants are infeasible under a full solve") {
  const auto patterns = enumerate_flat_patterns();
  for (const WitnessAssignment& w : {kCase2a, kCase3b}) {
    for (std::size_t pi = 0; pi < patterns.size(); pi += 17) {
      const RationalLinearSystem sys =
          build_system(w, TriangleMode::Equality, patterns[pi]);
      const FeasibilityOutcome out = solve_feasibility(sys);
      REQUIRE_FALSE(out.feasible());
      REQUIRE(verify_certificate(sys, out.certificate()));
    }
  }
}

TEST_CASE("weak certificates transfer to every flat variant of one assignment") {
  const RationalLinearSystem weak = build_system(kCase3b, TriangleMode::Weak);
  const FeasibilityOutcome wout = solve_feasibility(weak);
  REQUIRE_FALSE(wout.feasible());
  for (const FlatPattern& p : enumerate_flat_patterns()) {
    const RationalLinearSystem variant =
        build_system(kCase3b, TriangleMode::Equality, p);
    REQUIRE(verify_certificate(variant, wout.certificate()));
  }
}

TEST_CASE("verify_theorem settles all 81 assignments in every mode") {
  TheoremOptions opt;
  opt.jobs = 1;
  const TheoremReport rep = verify_theorem(opt);
  REQUIRE(rep.assignments.size() == 81);
  CHECK(rep.strict_all_infeasible);
  CHECK(rep.weak_all_infeasible);
  CHECK(rep.flat_all_infeasible);
  CHECK(rep.all_certificates_verified);
  CHECK(rep.flat_fallback_solves == 0);
  CHECK(rep.verified());

  CHECK(rep.case_counts[static_cast<int>(CaseLabel::Case1)] == 9);
  CHECK(rep.case_counts[static_cast<int>(CaseLabel::Case2a)] == 12);
  CHECK(rep.case_counts[static_cast<int>(CaseLabel::Case2b)] == 12);
  CHECK(rep.case_counts[static_cast<int>(CaseLabel::Case3a)] == 24);
  CHECK(rep.case_counts[static_cast<int>(CaseLabel::Case3b)] == 24);

  REQUIRE(rep.flat_subsets.size() == 15);
  long long flat_total = 0;
  for (const FlatSubsetSummary& s : rep.flat_subsets) {
    CHECK(s.infeasible == s.variants);
    flat_total += s.variants;
  }
  CHECK(flat_total == 81LL * 255);

  // Every certificate re-verifies against an independently rebuilt system.
  for (const AssignmentRecord& rec : rep.assignments) {
    REQUIRE(rec.strict_run);
    REQUIRE(rec.weak_run);
    const RationalLinearSystem strict =
        build_system(rec.assignment, TriangleMode::Strict);
    const RationalLinearSystem weak =
        build_system(rec.assignment, TriangleMode::Weak);
    REQUIRE(verify_certificate(strict, rec.strict_run->certificate));
    REQUIRE(verify_certificate(weak, rec.weak_run->certificate));
  }
}

TEST_CASE("solver certificates are deterministic per assignment") {
  for (const WitnessAssignment& w : {kCase2a, kCase3a, kCase3b}) {
    const RationalLinearSystem sys = build_system(w, TriangleMode::Strict);
    const FeasibilityOutcome a = solve_feasibility(sys);
    const FeasibilityOutcome b = solve_feasibility(sys);
    REQUIRE_FALSE(a.feasible());
    CHECK(a.certificate().multipliers == b.certificate().multipliers);
  }
}

TEST_CASE("Case 1 assignments all carry verifying certificates") {
  for (const WitnessAssignment& w : enumerate_assignments()) {
    if (classify_case(w) != CaseLabel::Case1) continue;
    const RationalLinearSystem sys = build_system(w, TriangleMode::Strict);
    const FeasibilityOutcome out = solve_feasibility(sys);
    REQUIRE_FALSE(out.feasible());
    REQUIRE(verify_certificate(sys, out.certificate()));
  }
}
