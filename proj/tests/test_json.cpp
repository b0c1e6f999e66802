#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "fixtures.hpp"
#include "tetraqg/json_io.hpp"

using namespace tetraqg;

TEST_CASE("tetrahedron JSON round trip") {
  const Tetrahedron t = fixtures::one_q3();
  const json j = tetrahedron_to_json(t);
  const Tetrahedron back = parse_tetrahedron(j);
  for (int v = 0; v < 4; ++v) {
    CHECK(back.positions[v].x == t.positions[v].x);
    CHECK(back.positions[v].y == t.positions[v].y);
    CHECK(back.positions[v].z == t.positions[v].z);
  }
}

TEST_CASE("tetrahedron JSON rejects malformed input") {
  CHECK_THROWS_AS(parse_tetrahedron(json::array()), std::invalid_argument);
  CHECK_THROWS_AS(parse_tetrahedron(json{{"vertices", json::object()}}),
                  std::invalid_argument);
  json missing = tetrahedron_to_json(fixtures::regular());
  missing["vertices"].erase("d");
  CHECK_THROWS_AS(parse_tetrahedron(missing), std::invalid_argument);
  json short_coord = tetrahedron_to_json(fixtures::regular());
  short_coord["vertices"]["a"] = {1.0, 2.0};
  CHECK_THROWS_AS(parse_tetrahedron(short_coord), std::invalid_argument);
  json text_coord = tetrahedron_to_json(fixtures::regular());
  text_coord["vertices"]["a"] = {"x", 0.0, 0.0};
  CHECK_THROWS_AS(parse_tetrahedron(text_coord), std::invalid_argument);
  // Degenerate coordinates fail validation on parse.
  json flat = json{{"vertices",
                    {{"a", {0.0, 0.0, 0.0}},
                     {"b", {1.0, 0.0, 0.0}},
                     {"c", {2.0, 0.0, 0.0}},
                     {"d", {3.0, 0.0, 0.0}}}}};
  CHECK_THROWS_AS(parse_tetrahedron(flat), DegenerateInput);
}

TEST_CASE("angle report carries the classification") {
  const json rep = angle_report_json(fixtures::one_q3());
  REQUIRE(rep.contains("angles_rad"));
  REQUIRE(rep.contains("angles_deg"));
  REQUIRE(rep.contains("curvatures_rad"));
  REQUIRE(rep.contains("failures"));
  CHECK(rep["angles_rad"].size() == 12);
  CHECK(rep["failures"].size() == 12);
  REQUIRE(rep["quasigeodesic_faces"].is_array());
  REQUIRE(rep["quasigeodesic_faces"].size() == 1);
  CHECK(rep["quasigeodesic_faces"][0] == "B");
  CHECK(rep["angles_deg"]["aC"].get<double>() ==
        Catch::Approx(125.0).margin(0.5));
}

TEST_CASE("system JSON round trip preserves exact rationals") {
  const WitnessAssignment w{{VertexId::b, VertexId::d, VertexId::b, VertexId::c}};
  const RationalLinearSystem sys = build_system(w, TriangleMode::Weak);
  const json j = system_to_json(sys);

  // Rationals are rendered as plain integer or p/q strings.
  CHECK(j["rows"][0]["rhs"] == "1");
  CHECK(j["variables"].size() == 13);

  const RationalLinearSystem back = system_from_json(j);
  REQUIRE(back.variables == sys.variables);
  REQUIRE(back.rows.size() == sys.rows.size());
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    CHECK(back.rows[i].name == sys.rows[i].name);
    CHECK(back.rows[i].rel == sys.rows[i].rel);
    CHECK(back.rows[i].rhs == sys.rows[i].rhs);
    CHECK(back.rows[i].coeffs == sys.rows[i].coeffs);
    CHECK(back.rows[i].kind == sys.rows[i].kind);
  }

  // The reloaded system solves to the same outcome.
  const FeasibilityOutcome a = solve_feasibility(sys);
  const FeasibilityOutcome b = solve_feasibility(back);
  REQUIRE_FALSE(a.feasible());
  REQUIRE_FALSE(b.feasible());
  CHECK(a.certificate().multipliers == b.certificate().multipliers);
}

TEST_CASE("fractional rationals survive the round trip") {
  RationalLinearSystem sys;
  sys.variables = {"x", "y"};
  LinearRow& row = sys.add_row("mix", Relation::WeakGe, Rational(-7, 3));
  row.coeffs[0] = Rational(22, 7);
  row.coeffs[1] = Rational(-1, 2);
  const json j = system_to_json(sys);
  CHECK(j["rows"][0]["coeffs"]["x"] == "22/7");
  CHECK(j["rows"][0]["coeffs"]["y"] == "-1/2");
  CHECK(j["rows"][0]["rhs"] == "-7/3");
  const RationalLinearSystem back = system_from_json(j);
  CHECK(back.rows[0].coeffs[0] == Rational(22, 7));
  CHECK(back.rows[0].rhs == Rational(-7, 3));
}

TEST_CASE("certificate JSON round trip") {
  const RationalLinearSystem sys = build_system(
      WitnessAssignment{{VertexId::b, VertexId::a, VertexId::b, VertexId::b}},
      TriangleMode::Strict);
  const FeasibilityOutcome out = solve_feasibility(sys);
  REQUIRE_FALSE(out.feasible());
  const json j = certificate_to_json(out.certificate());
  const InfeasibilityCertificate back = certificate_from_json(j);
  CHECK(back.multipliers == out.certificate().multipliers);
  CHECK(verify_certificate(sys, back));

  CHECK_THROWS_AS(certificate_from_json(json::object()), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
}

TEST_CASE("edge search JSON") {
  const json found = edge_result_json(
      search_edge_quasigeodesic(fixtures::regular(), VertexId::a, VertexId::b, 4));
  CHECK(found["edge"] == "ab");
  CHECK(found["outcome"] == "found");
  CHECK(found["depth"] == 2);
  REQUIRE(found["faces"].is_array());
  CHECK(found["faces"][0] == "A");
  CHECK(found["faces"][1] == "B");
  CHECK(found["crossings"].size() == 1);

  const json miss = edge_result_json(search_edge_quasigeodesic(
      fixtures::no_two_vertex(), VertexId::a, VertexId::b, 3));
  CHECK(miss["outcome"] == "not_found_up_to");
  CHECK(miss["max_faces"] == 3);
}

TEST_CASE("theorem report JSON summarizes a strict-only run") {
  TheoremOptions opt;
  opt.weak = false;
  opt.flat = false;
  opt.jobs = 1;
  const TheoremReport rep = verify_theorem(opt);
  const json j = theorem_report_json(rep);
  CHECK(j["verified"] == true);
  CHECK(j["strict_all_infeasible"] == true);
  CHECK_FALSE(j.contains("weak_all_infeasible"));
  CHECK(j["assignments"].size() == 81);
  CHECK(j["case_counts"]["Case1"] == 9);
  CHECK(j["assignments"][0].contains("strict"));
  CHECK_FALSE(j["assignments"][0].contains("weak"));
}
