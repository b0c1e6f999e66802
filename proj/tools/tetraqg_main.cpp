#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tetraqg/tetraqg.hpp"

namespace {

using namespace tetraqg;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

Tetrahedron load_tetrahedron(const std::string& path) {
  try {
    return parse_tetrahedron(load_json(path));
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

int cmd_angles(const std::string& file) {
  const Tetrahedron t = load_tetrahedron(file);
  std::cout << angle_report_json(t).dump(2) << "\n";
  return 0;
}

int cmd_classify(const std::string& file, bool as_json) {
  const Tetrahedron t = load_tetrahedron(file);
  const Classification cls = quasigeodesic_faces(face_angles(t));
  if (as_json) {
    std::cout << angle_report_json(t).dump(2) << "\n";
  } else {
    std::string line;
    for (FaceId f : cls.quasigeodesic_faces) {
      if (!line.empty()) line += ' ';
      line += label(f);
    }
    std::cout << line << "\n";
  }
  // An empty set would contradict the theorem: flag it.
  return cls.quasigeodesic_faces.empty() ? 1 : 0;
}

void emit_certificates(const TheoremReport& rep, const std::string& dir,
                       const std::optional<std::string>& systems_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  if (systems_dir) fs::create_directories(*systems_dir);
  const std::vector<FlatPattern> patterns = enumerate_flat_patterns();
  for (const AssignmentRecord& rec : rep.assignments) {
    const std::string base = rec.assignment.name();
    auto write = [](const fs::path& p, const json& j) {
      std::ofstream out(p);
      out << j.dump(2) << "\n";
    };
    if (rec.strict_run && rec.strict_run->infeasible)
      write(fs::path(dir) / (base + ".cert.json"),
            certificate_to_json(rec.strict_run->certificate));
    if (rec.weak_run && rec.weak_run->infeasible)
      write(fs::path(dir) / (base + ".weak.cert.json"),
            certificate_to_json(rec.weak_run->certificate));
    if (rec.flat_run && rec.weak_run && rec.weak_run->infeasible) {
      json flat = certificate_to_json(rec.weak_run->certificate);
      json verified = json::array();
      for (const FlatPattern& p : patterns) verified.push_back(p.name());
      flat["verified_patterns"] = verified;
      write(fs::path(dir) / (base + ".flat.cert.json"), flat);
    }
    if (systems_dir) {
      if (rec.strict_run)
        write(fs::path(*systems_dir) / (base + ".system.json"),
              system_to_json(build_system(rec.assignment, TriangleMode::Strict)));
      if (rec.weak_run)
        write(fs::path(*systems_dir) / (base + ".weak.system.json"),
              system_to_json(build_system(rec.assignment, TriangleMode::Weak)));
    }
  }
}

void print_theorem_table(const TheoremReport& rep) {
  std::map<CaseLabel, std::vector<const AssignmentRecord*>> groups;
  for (const AssignmentRecord& rec : rep.assignments)
    groups[rec.label].push_back(&rec);

  auto solve_text = [](const std::optional<SolveRecord>& s) -> std::string {
    if (!s) return "-";
    if (!s->infeasible) return "FEASIBLE";
    return s->certificate_verified ? "infeasible(cert ok)"
                                   : "infeasible(CERT BAD)";
  };

  for (const auto& [label_, rows] : groups) {
    std::cout << case_name(label_) << " (" << rows.size() << " assignments)\n";
    for (const AssignmentRecord* rec : rows) {
      std::cout << "  " << rec->assignment.name()
                << "  strict: " << solve_text(rec->strict_run)
                << "  weak: " << solve_text(rec->weak_run);
      if (rec->flat_run)
        std::cout << "  flat: " << rec->flat_run->infeasible << "/"
                  << rec->flat_run->variants;
      std::cout << "\n";
    }
  }

  const int n = static_cast<int>(rep.assignments.size());
  auto count_infeasible = [&](bool strict_mode) {
    int k = 0;
    for (const AssignmentRecord& rec : rep.assignments) {
      const auto& run = strict_mode ? rec.strict_run : rec.weak_run;
      if (run && run->infeasible && run->certificate_verified) ++k;
    }
    return k;
  };
  std::cout << "\n";
  if (rep.ran_strict)
    std::cout << "strict: " << count_infeasible(true) << "/" << n
              << " infeasible\n";
  if (rep.ran_weak)
    std::cout << "weak: " << count_infeasible(false) << "/" << n
              << " infeasible\n";
  if (rep.ran_flat) {
    long long inf = 0, tot = 0;
    for (const AssignmentRecord& rec : rep.assignments)
      if (rec.flat_run) {
        inf += rec.flat_run->infeasible;
        tot += rec.flat_run->variants;
      }
    std::cout << "flat: " << inf << "/" << tot << " variants infeasible";
    if (rep.flat_fallback_solves)
      std::cout << " (" << rep.flat_fallback_solves << " full solves)";
    std::cout << "\n";
    std::cout << "flat subsets:";
    for (const FlatSubsetSummary& s : rep.flat_subsets)
      std::cout << " " << s.vertices() << "=" << s.infeasible << "/"
                << s.variants;
    std::cout << "\n";
  }
  std::cout << "case counts:";
  for (int c = 0; c < 5; ++c)
    std::cout << " " << case_name(static_cast<CaseLabel>(c)) << "="
              << rep.case_counts[c];
  std::cout << "\nverdict: "
            << (rep.verified() ? "theorem verified" : "NOT VERIFIED") << "\n";
}

int cmd_verify_cases(const std::string& mode, const std::string& certs_dir,
                     const std::string& systems_dir, bool as_json,
                     unsigned jobs) {
  TheoremOptions opt;
  opt.jobs = jobs;
  if (mode == "strict") {
    opt.strict = true, opt.weak = false, opt.flat = false;
  } else if (mode == "weak") {
    opt.strict = false, opt.weak = true, opt.flat = false;
  } else if (mode == "flat") {
    opt.strict = false, opt.weak = false, opt.flat = true;
  } else if (mode == "all") {
    opt.strict = opt.weak = opt.flat = true;
  } else {
    throw std::invalid_argument("unknown mode: " + mode);
  }

  const TheoremReport rep = verify_theorem(opt);
  if (!certs_dir.empty())
    emit_certificates(rep, certs_dir,
                      systems_dir.empty()
                          ? std::nullopt
                          : std::optional<std::string>(systems_dir));
  if (as_json)
    std::cout << theorem_report_json(rep).dump(2) << "\n";
  else
    print_theorem_table(rep);
  return rep.verified() ? 0 : 1;
}

int cmd_edge_qg(const std::string& file, int max_faces,
                const std::string& edge) {
  const Tetrahedron t = load_tetrahedron(file);
  std::vector<std::pair<VertexId, VertexId>> edges;
  if (!edge.empty()) {
    if (edge.size() != 2) throw std::invalid_argument("edge must be two vertex letters, e.g. ab");
    auto u = parse_vertex(edge[0]), v = parse_vertex(edge[1]);
    if (!u || !v || *u == *v) throw std::invalid_argument("bad edge: " + edge);
    edges.emplace_back(*u, *v);
  } else {
    edges.assign(kEdges.begin(), kEdges.end());
  }
  json out = json::array();
  for (auto [u, v] : edges)
    out.push_back(edge_result_json(search_edge_quasigeodesic(t, u, v, max_faces)));
  std::cout << json{{"max_faces", max_faces}, {"edges", out}}.dump(2) << "\n";
  return 0;
}

int cmd_random_test(long long count, std::uint64_t seed,
                    const std::string& dist_name, const std::string& report_path,
                    unsigned jobs) {
  const auto dist = parse_distribution(dist_name);
  if (!dist) throw std::invalid_argument("unknown distribution: " + dist_name);
  TrialConfig cfg;
  cfg.count = count;
  cfg.seed = seed;
  cfg.dist = *dist;
  cfg.jobs = jobs;

  std::optional<std::ofstream> csv;
  if (!report_path.empty()) {
    csv.emplace(report_path, std::ios::binary);
    if (!*csv) throw std::invalid_argument("cannot open report file: " + report_path);
  }
  const TrialReport rep = run_theorem_trials(cfg, csv ? &*csv : nullptr);

  std::cout << "trials: " << rep.trials << " (" << distribution_name(*dist)
            << ", seed " << seed << ")\n"
            << "violations: " << rep.violations << "\n"
            << "histogram |qg faces| 1..4: " << rep.histogram[1] << " "
            << rep.histogram[2] << " " << rep.histogram[3] << " "
            << rep.histogram[4] << "\n"
            << "min theorem margin: " << detail::format_double(rep.min_theorem_margin)
            << " rad\n"
            << "min triangle margin: " << detail::format_double(rep.min_triangle_margin)
            << " rad\n"
            << "max gauss-bonnet residual: "
            << detail::format_double(rep.max_gauss_bonnet_residual) << "\n";
  for (const Violation& v : rep.examples) {
    std::cout << "violation at trial " << v.trial_index << " [" << v.what
              << "] coords:";
    for (const Vec3& p : v.coordinates)
      std::cout << " (" << detail::format_double(p.x) << ","
                << detail::format_double(p.y) << ","
                << detail::format_double(p.z) << ")";
    std::cout << "\n";
  }
  return rep.violations == 0 ? 0 : 1;
}

int cmd_check_cert(const std::string& system_file, const std::string& cert_file) {
  RationalLinearSystem sys;
  InfeasibilityCertificate cert;
  try {
    sys = system_from_json(load_json(system_file));
    cert = certificate_from_json(load_json(cert_file));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad input: ") + e.what());
  }
  const bool ok = verify_certificate(sys, cert);
  std::cout << (ok ? "certificate VALID: system is infeasible"
                   : "certificate INVALID")
            << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tetraqg: tetrahedron face-angle geometry, exact-rational case "
      "verification of the 3-vertex quasigeodesic theorem, and a bounded "
      "search for edge-containing 2-vertex quasigeodesics"};
  app.require_subcommand(1);

  std::string file, edge, mode = "all", certs_dir, systems_dir, dist = "unit_cube_uniform", report_path;
  std::string sys_file, cert_file;
  bool as_json = false;
  int max_faces = 12;
  long long count = 10000;
  std::uint64_t seed = 0;
  unsigned jobs = 0;

  CLI::App* angles = app.add_subcommand("angles", "emit the angle/curvature/failure report for a tetrahedron JSON file");
  angles->add_option("file", file, "tetrahedron JSON file")->required();

  CLI::App* classify = app.add_subcommand("classify", "list the faces whose boundaries are quasigeodesics");
  classify->add_option("file", file, "tetrahedron JSON file")->required();
  classify->add_flag("--json", as_json, "emit the full JSON report");

  CLI::App* verify = app.add_subcommand("verify-cases", "prove all 81 failure assignments infeasible with checkable certificates");
  verify->add_option("--mode", mode, "strict|weak|flat|all (default all)");
  verify->add_option("--emit-certs", certs_dir, "write certificate JSON files to this directory");
  verify->add_option("--emit-systems", systems_dir, "write system JSON files to this directory (with --emit-certs)");
  verify->add_flag("--json", as_json, "emit the report as JSON");
  verify->add_option("--jobs", jobs, "worker threads (default: hardware)");

  CLI::App* edgeqg = app.add_subcommand("edge-qg", "search for 2-vertex quasigeodesics through each edge");
  edgeqg->add_option("file", file, "tetrahedron JSON file")->required();
  edgeqg->add_option("--max-faces", max_faces, "search depth in faces (default 12)");
  edgeqg->add_option("--edge", edge, "restrict to one edge, e.g. ab");

  CLI::App* random = app.add_subcommand("random-test", "seeded property trials of the face-angle invariants");
  random->add_option("--count", count, "number of trials (default 10000)");
  random->add_option("--seed", seed, "RNG seed (default 0)");
  random->add_option("--dist", dist, "unit_cube_uniform|thin_sliver|near_flat");
  random->add_option("--report", report_path, "write per-trial CSV to this file");
  random->add_option("--jobs", jobs, "worker threads (default: hardware)");

  CLI::App* check = app.add_subcommand("check-cert", "re-verify an infeasibility certificate against its system");
  check->add_option("system", sys_file, "system JSON file")->required();
  check->add_option("certificate", cert_file, "certificate JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*angles) return cmd_angles(file);
    if (*classify) return cmd_classify(file, as_json);
    if (*verify) return cmd_verify_cases(mode, certs_dir, systems_dir, as_json, jobs);
    if (*edgeqg) return cmd_edge_qg(file, max_faces, edge);
    if (*random) return cmd_random_test(count, seed, dist, report_path, jobs);
    if (*check) return cmd_check_cert(sys_file, cert_file);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
