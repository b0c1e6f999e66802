#pragma once

#include <json.hpp>

#include <cmath>
#include <string>

#include "tetraqg/angles.hpp"
#include "tetraqg/cases.hpp"
#include "tetraqg/ids.hpp"
#include "tetraqg/linear_system.hpp"
#include "tetraqg/tetrahedron.hpp"
#include "tetraqg/trials.hpp"
#include "tetraqg/unfold.hpp"

namespace tetraqg {

using nlohmann::json;

inline json tetrahedron_to_json(const Tetrahedron& t) {
  json vertices = json::object();
  for (VertexId v : kVertices) {
    const Vec3& p = t.position(v);
    vertices[std::string{label(v)}] = {p.x, p.y, p.z};
  }
  return json{{"vertices", vertices}};
}

/// Parses {"vertices": {"a": [x,y,z], ...}} and validates the result.
inline Tetrahedron parse_tetrahedron(const json& j,
                                     double degeneracy_scale = kDegeneracyScale) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_object())
    throw std::invalid_argument("expected an object with a \"vertices\" map");
  std::array<Vec3, 4> pts{};
  for (VertexId v : kVertices) {
    const std::string key{label(v)};
    if (!j["vertices"].contains(key))
      throw std::invalid_argument("missing vertex \"" + key + "\"");
    const json& c = j["vertices"][key];
    if (!c.is_array() || c.size() != 3 || !c[0].is_number() ||
        !c[1].is_number() || !c[2].is_number())
      throw std::invalid_argument("vertex \"" + key +
                                  "\" must be an array of three numbers");
    pts[index(v)] = Vec3{c[0].get<double>(), c[1].get<double>(),
                         c[2].get<double>()};
  }
  return validate_tetrahedron(pts, degeneracy_scale);
}

constexpr double degrees(double radians) { return radians * 180.0 / kPi; }

/// Full angle report: the 12 angles (radians and degrees), curvatures,
/// failure table and the quasigeodesic face set.
inline json angle_report_json(const Tetrahedron& t) {
  const AngleTable tab = face_angles(t);
  const Classification cls = quasigeodesic_faces(tab);

  json rad = json::object(), deg = json::object();
  for (int i = 0; i < kAngleCount; ++i) {
    const auto [v, f] = angle_pair(i);
    rad[angle_name(v, f)] = tab.at(v, f);
    deg[angle_name(v, f)] = degrees(tab.at(v, f));
  }

  json curv_rad = json::object(), curv_deg = json::object();
  for (VertexId v : kVertices) {
    curv_rad[std::string{label(v)}] = curvature(tab, v);
    curv_deg[std::string{label(v)}] = degrees(curvature(tab, v));
  }

  json face_sums = json::object();
  for (FaceId f : kFaces) {
    double sum = 0;
    for (VertexId v : face_vertices(f)) sum += tab.at(v, f);
    face_sums[std::string{label(f)}] = sum;
  }

  json failures = json::array();
  for (FaceId f : kFaces)
    for (VertexId v : face_vertices(f)) {
      const FailureReport r = fails_at(tab, f, v);
      failures.push_back(json{{"face", std::string{label(f)}},
                              {"vertex", std::string{label(v)}},
                              {"exterior_rad", r.exterior_sum},
                              {"exterior_deg", degrees(r.exterior_sum)},
                              {"fails", r.fails},
                              {"margin_rad", r.margin}});
    }

  json qg = json::array();
  for (FaceId f : cls.quasigeodesic_faces) qg.push_back(std::string{label(f)});

  json margins = json::object();
  for (FaceId f : kFaces)
    margins[std::string{label(f)}] = cls.faces[index(f)].margin;

  return json{{"angles_rad", rad},
              {"angles_deg", deg},
              {"curvatures_rad", curv_rad},
              {"curvatures_deg", curv_deg},
              {"face_sums_rad", face_sums},
              {"failures", failures},
              {"quasigeodesic_faces", qg},
              {"face_margins_rad", margins}};
}

inline json system_to_json(const RationalLinearSystem& sys) {
  json rows = json::array();
  for (const LinearRow& row : sys.rows) {
    json coeffs = json::object();
    for (std::size_t j = 0; j < row.coeffs.size(); ++j)
      if (!row.coeffs[j].is_zero())
        coeffs[sys.variables[j]] = to_string(row.coeffs[j]);
    rows.push_back(json{{"name", row.name},
                        {"coeffs", coeffs},
                        {"rel", std::string(relation_symbol(row.rel))},
                        {"rhs", to_string(row.rhs)}});
  }
  return json{{"variables", sys.variables}, {"rows", rows}};
}

inline RationalLinearSystem system_from_json(const json& j) {
  if (!j.is_object() || !j.contains("variables") || !j.contains("rows"))
    throw std::invalid_argument("expected \"variables\" and \"rows\"");
  RationalLinearSystem sys;
  for (const json& v : j["variables"]) sys.variables.push_back(v.get<std::string>());
  for (const json& jr : j["rows"]) {
    const std::string rel = jr.at("rel").get<std::string>();
    Relation r;
    if (rel == "=")
      r = Relation::Equal;
    else if (rel == ">=")
      r = Relation::WeakGe;
    else if (rel == ">")
      r = Relation::StrictGt;
    else
      throw std::invalid_argument("unknown relation: " + rel);
    const std::string name = jr.contains("name") ? jr["name"].get<std::string>() : "";
    RowKind kind = RowKind::Custom;
    if (name.starts_with("sum_")) kind = RowKind::FaceSum;
    else if (name.starts_with("pos_")) kind = RowKind::Positivity;
    else if (name.starts_with("fail_")) kind = RowKind::Failure;
    else if (name.starts_with("tri_")) kind = RowKind::Triangle;
    LinearRow& row = sys.add_row(name, r,
                                 parse_rational(jr.at("rhs").get<std::string>()),
                                 kind);
    for (const auto& [var, val] : jr.at("coeffs").items()) {
      const int idx = sys.var_index(var);
      if (idx < 0) throw std::invalid_argument("row references unknown variable: " + var);
      row.coeffs[idx] = parse_rational(val.get<std::string>());
    }
  }
  return sys;
}

inline json certificate_to_json(const InfeasibilityCertificate& cert) {
  json mults = json::array();
  for (const Rational& m : cert.multipliers) mults.push_back(to_string(m));
  return json{{"multipliers", mults}};
}

inline InfeasibilityCertificate certificate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("multipliers") || !j["multipliers"].is_array())
    throw std::invalid_argument("expected a \"multipliers\" array");
  InfeasibilityCertificate cert;
  for (const json& m : j["multipliers"])
    cert.multipliers.push_back(parse_rational(m.get<std::string>()));
  return cert;
}

inline json theorem_report_json(const TheoremReport& rep) {
  json assignments = json::array();
  for (const AssignmentRecord& rec : rep.assignments) {
    json a = json::object();
    json witness = json::object();
    for (FaceId f : kFaces)
      witness[std::string{label(f)}] = std::string{label(rec.assignment.at(f))};
    a["witness"] = witness;
    a["name"] = rec.assignment.name();
    a["case"] = std::string(case_name(rec.label));
    auto solve_json = [](const SolveRecord& s) {
      return json{{"status", s.infeasible ? "infeasible" : "feasible"},
                  {"certificate_verified", s.certificate_verified}};
    };
    if (rec.strict_run) a["strict"] = solve_json(*rec.strict_run);
    if (rec.weak_run) a["weak"] = solve_json(*rec.weak_run);
    if (rec.flat_run)
      a["flat"] = json{{"variants", rec.flat_run->variants},
                       {"infeasible", rec.flat_run->infeasible},
                       {"fallback_solves", rec.flat_run->fallback_solves}};
    assignments.push_back(a);
  }

  json counts = json::object();
  for (int c = 0; c < 5; ++c)
    counts[std::string(case_name(static_cast<CaseLabel>(c)))] =
        rep.case_counts[c];

  json flat_subsets = json::array();
  for (const FlatSubsetSummary& s : rep.flat_subsets)
    flat_subsets.push_back(json{{"vertices", s.vertices()},
                                {"variants", s.variants},
                                {"infeasible", s.infeasible}});

  json j{{"assignments", assignments},
         {"case_counts", counts},
         {"verified", rep.verified()}};
  if (rep.ran_strict) j["strict_all_infeasible"] = rep.strict_all_infeasible;
  if (rep.ran_weak) j["weak_all_infeasible"] = rep.weak_all_infeasible;
  if (rep.ran_flat) {
    j["flat_all_infeasible"] = rep.flat_all_infeasible;
    j["flat_subsets"] = flat_subsets;
    j["flat_fallback_solves"] = rep.flat_fallback_solves;
  }
  return j;
}

inline json edge_result_json(const EdgeQGResult& res) {
  json j{{"edge", std::string{label(res.u), label(res.v)}},
         {"max_faces", res.depth_searched},
         {"outcome", res.found() ? "found" : "not_found_up_to"}};
  if (res.found()) {
    const EdgeArc& arc = *res.arc;
    json faces = json::array();
    for (FaceId f : arc.faces) faces.push_back(std::string{label(f)});
    json crossings = json::array();
    for (const Vec3& c : arc.crossings) crossings.push_back({c.x, c.y, c.z});
    j["faces"] = faces;
    j["depth"] = arc.faces.size();
    j["crossings"] = crossings;
    j["arc_length"] = arc.arc_length;
    j["side_angles_rad"] =
        json{{"u", {arc.sides_at_u.first, arc.sides_at_u.second}},
             {"v", {arc.sides_at_v.first, arc.sides_at_v.second}}};
    j["side_angles_deg"] =
        json{{"u", {degrees(arc.sides_at_u.first), degrees(arc.sides_at_u.second)}},
             {"v", {degrees(arc.sides_at_v.first), degrees(arc.sides_at_v.second)}}};
  }
  return j;
}

}  // namespace tetraqg
