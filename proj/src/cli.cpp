#include "reeb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "reeb/circulation.hpp"
#include "reeb/equivalence.hpp"
#include "reeb/errors.hpp"
#include "reeb/extraction.hpp"
#include "reeb/fuzz.hpp"
#include "reeb/graph_core.hpp"
#include "reeb/realization.hpp"
#include "reeb/reeb_graph.hpp"
#include "reeb/surface.hpp"

namespace reeb::cli {

namespace {

using nlohmann::json;

struct Outcome {
  json payload;
  int exit_code = 0;
  std::string diagnostics;
  std::string raw;  // non-JSON payload
};

json error_object(const std::string& code, const std::string& message) {
  return {{"error", code}, {"message", message}};
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << text;
  if (!out) throw DataError("cannot write " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Outcome emit(const json& payload, const std::string& output) {
  if (output.empty()) return {payload, 0, "", ""};
  write_text(output, dump(payload));
  return {json{{"output", output}}, 0, "", ""};
}

int graph_samples(const MeasuredReebGraph& g) {
  int k = 1;
  for (const auto& e : g.edges) k = std::max(k, e.profile.samples());
  return k;
}

MatchTolerances tolerances(double tol_f, double tol_mass) {
  MatchTolerances t;
  t.tol_f = tol_f;
  t.tol_mass = tol_mass;
  return t;
}

// Extraction of the mesh whose graph is isomorphic to `g`, with the edge map
// from extracted ids to the ids of `g`.
struct Aligned {
  Extraction ex;
  std::map<int, int> to_given;
  std::map<int, int> to_extracted;
};

Aligned align(const PLSurface& s, const MeasuredReebGraph& g, int samples, const MatchTolerances& tol) {
  Aligned a{extract(s, samples > 0 ? samples : graph_samples(g)), {}, {}};
  const auto iso = match_measured(a.ex.graph, g, tol);
  if (!iso.isomorphic())
    throw DataError("graph does not match the mesh: " + to_string(iso.obstruction->kind) + ": " +
                    iso.obstruction->detail);
  a.to_given = iso.edge_map;
  for (const auto& [x, y] : iso.edge_map) a.to_extracted[y] = x;
  return a;
}

CirculationFunction transport(const CirculationFunction& c, const std::map<int, int>& m) {
  CirculationFunction out;
  for (const auto& [id, lim] : c.limits) {
    const auto it = m.find(id);
    if (it == m.end()) throw DataError("edge " + std::to_string(id) + " is not in the graph");
    out.limits[it->second] = lim;
  }
  return out;
}

XiClass transport(const XiClass& x, const std::map<int, int>& m) {
  XiClass out;
  out.coords = x.coords;
  for (const auto& cycle : x.basis) {
    std::vector<int> mapped;
    for (int s : cycle) {
      const auto it = m.find(std::abs(s));
      if (it == m.end()) throw DataError("edge " + std::to_string(std::abs(s)) + " is not in the graph");
      mapped.push_back(s > 0 ? it->second : -it->second);
    }
    out.basis.push_back(mapped);
  }
  return out;
}

json check_json(const CirculationCheck& c) {
  json r = json::object();
  for (const auto& [k, v] : c.residuals) r[k] = v;
  return {{"ok", c.ok}, {"max_residual", c.max_residual}, {"residuals", r}};
}

Outcome cmd_validate(const std::string& mesh) {
  const auto report = validate_simple_morse(load_mesh_file(mesh));
  return {to_json(report), report.is_simple_morse ? 0 : 1, "", ""};
}

Outcome cmd_extract(const std::string& mesh, int samples, const std::string& output) {
  return emit(graph_to_json(extract_reeb(load_mesh_file(mesh), samples)), output);
}

Outcome cmd_invariants(const std::string& path) {
  const auto g = load_graph_file(path);
  json j;
  j["sigma"] = sigma(g);
  json cycles = json::array();
  for (const auto& c : boundary_cycles(g)) cycles.push_back({{"edges", c.edges}, {"vertices", c.vertices}});
  j["boundary_cycles"] = cycles;
  j["genus_realize"] = genus(g, GenusMethod::Realize);
  j["genus_formula_value"] = genus_formula_value(g);
  try {
    j["genus_formula"] = genus(g, GenusMethod::Formula);
    j["genus_formula_error"] = nullptr;
  } catch (const NonIntegerFormulaValue& e) {
    j["genus_formula"] = nullptr;
    j["genus_formula_error"] = error_object(e.code(), e.what());
  }
  const auto h = homology_dims(g);
  j["homology"] = {{"h1_gamma", h.h1_gamma}, {"h1_dashed", h.h1_dashed}, {"h1_rel", h.h1_rel},
                   {"h0_dashed", h.h0_dashed}, {"h0_solid", h.h0_solid}, {"h0_intersection", h.h0_intersection}};
  j["orbit_moduli_dimension"] = orbit_moduli_dimension(g);
  j["total_mass"] = g.total_mass();
  return {j, 0, "", ""};
}

Outcome cmd_compare(const std::string& a, const std::string& b, bool augmented, const MatchTolerances& tol) {
  GraphIsomorphism iso;
  if (augmented)
    iso = match_augmented(augmented_from_json(read_json(a)), augmented_from_json(read_json(b)), tol);
  else
    iso = match_measured(load_graph_file(a), load_graph_file(b), tol);
  std::string diag;
  if (!iso.isomorphic()) diag = "not isomorphic: " + to_string(iso.obstruction->kind) + "\n";
  return {to_json(iso), iso.isomorphic() ? 0 : 1, diag, ""};
}

Outcome cmd_circulation_solve(const std::string& path) {
  const auto g = load_graph_file(path);
  try {
    const auto sol = solve_circulations(g);
    json basis = json::array();
    for (const auto& b : sol.basis) basis.push_back(to_json(b));
    return {{{"particular", to_json(sol.particular)}, {"basis", basis}}, 0, "", ""};
  } catch (const NoSolution& e) {
    return {error_object(e.code(), e.what()), 1, std::string(e.what()) + "\n", ""};
  }
}

Outcome cmd_circulation_check(const std::string& path, double tol) {
  const auto a = augmented_from_json(read_json(path));
  const auto c = check_circulation(a.graph, a.circulation, tol);
  return {check_json(c), c.ok ? 0 : 1, "", ""};
}

Outcome cmd_xi(const std::string& mesh, const std::string& form, const std::string& graph, int samples,
               const MatchTolerances& tol, const std::string& output) {
  const auto s = load_mesh_file(mesh);
  const auto g = load_graph_file(graph);
  const auto a = one_form_from_json(s, read_json(form));
  const auto al = align(s, g, samples, tol);
  AugmentedCirculationGraph aug;
  aug.graph = g;
  aug.circulation = transport(circulation_of_form(s, a, al.ex), al.to_given);
  aug.xi = transport(xi_class(s, a, al.ex), al.to_given);
  return emit(to_json(aug), output);
}

Outcome cmd_synthesize(const std::string& mesh, const std::string& graph, const std::string& targets, int samples,
                       const MatchTolerances& tol, const std::string& output) {
  const auto s = load_mesh_file(mesh);
  const auto g = load_graph_file(graph);
  const auto t = read_json(targets);
  if (!t.is_object() || !t.contains("circulation")) throw DataError("targets need a \"circulation\" object");
  const auto c = circulation_from_json(t.at("circulation"));
  const XiClass xi = t.contains("xi") ? xi_from_json(t.at("xi")) : XiClass{};
  const auto al = align(s, g, samples, tol);
  const auto form =
      synthesize_form(s, al.ex, transport(c, al.to_extracted), transport(xi, al.to_extracted));
  return emit(to_json(s, form), output);
}

Outcome cmd_realize(const std::string& graph, int resolution, const std::string& output) {
  return emit(mesh_to_json(realize(load_graph_file(graph), resolution).surface), output);
}

Outcome cmd_dot(const std::string& graph) {
  return {json(), 0, "", to_dot(load_graph_file(graph))};
}

Outcome cmd_fuzz(int cases, std::uint64_t seed, const std::vector<std::string>& suites) {
  const auto names = suites.empty() ? fuzz::suite_names() : suites;
  json list = json::array();
  bool ok = true;
  std::ostringstream diag;
  for (const auto& n : names) {
    const auto r = fuzz::run_suite(n, cases, seed);
    ok = ok && r.failed == 0;
    list.push_back({{"name", r.name}, {"passed", r.passed}, {"failed", r.failed}, {"failures", r.failures}});
    diag << r.name << ": " << r.passed << " passed, " << r.failed << " failed\n";
  }
  return {{{"seed", seed}, {"cases", cases}, {"suites", list}}, ok ? 0 : 1, diag.str(), ""};
}

}  // namespace

Result run(const std::vector<std::string>& args) {
  CLI::App app{"Measured Reeb graphs and augmented circulation graphs of simple Morse fields", "reeb-orbit"};
  app.require_subcommand(1);

  std::string p1, p2, p3, output;
  int samples = 64, match_samples = 0, resolution = 8, cases = 50;
  std::uint64_t seed = 1;
  double tol_f = -1.0, tol_mass = 1e-6, tol_check = 1e-9;
  bool augmented = false;
  std::vector<std::string> suites;
  const MatchTolerances defaults;
  double tol_circ = defaults.tol_circulation;

  auto* validate = app.add_subcommand("validate", "Check that a mesh field is simple Morse");
  validate->add_option("mesh", p1, "Mesh JSON")->required();

  auto* extract_cmd = app.add_subcommand("extract", "Measured Reeb graph of a mesh field");
  extract_cmd->add_option("mesh", p1, "Mesh JSON")->required();
  extract_cmd->add_option("--samples", samples, "Profile samples per edge")->check(CLI::PositiveNumber);
  extract_cmd->add_option("-o", output, "Output file");

  auto* invariants = app.add_subcommand("invariants", "Topological invariants of a graph");
  invariants->add_option("graph", p1, "Graph JSON")->required();

  auto* compare = app.add_subcommand("compare", "Decide isomorphism of two graphs");
  compare->add_option("g1", p1, "First graph")->required();
  compare->add_option("g2", p2, "Second graph")->required();
  compare->add_flag("--augmented", augmented, "Compare augmented circulation graphs");
  compare->add_option("--tol-f", tol_f, "Absolute tolerance on vertex values");
  compare->add_option("--tol-mass", tol_mass, "Relative tolerance on measures");
  compare->add_option("--tol-circulation", tol_circ, "Relative tolerance on circulations and xi");

  auto* circulation = app.add_subcommand("circulation", "Circulation functions on a graph");
  circulation->require_subcommand(1);
  auto* solve = circulation->add_subcommand("solve", "Particular solution and homogeneous basis");
  solve->add_option("graph", p1, "Graph JSON")->required();
  auto* check = circulation->add_subcommand("check", "Check the circulation of an augmented graph");
  check->add_option("augmented", p1, "Augmented graph JSON")->required();
  check->add_option("--tol", tol_check, "Residual tolerance");

  auto* xi = app.add_subcommand("xi", "Augmented circulation graph of a one-form");
  xi->add_option("mesh", p1, "Mesh JSON")->required();
  xi->add_option("form", p2, "One-form JSON")->required();
  xi->add_option("graph", p3, "Graph JSON of the mesh")->required();

  auto* synth = app.add_subcommand("synthesize", "One-form with prescribed circulation and xi");
  synth->add_option("mesh", p1, "Mesh JSON")->required();
  synth->add_option("graph", p2, "Graph JSON of the mesh")->required();
  synth->add_option("targets", p3, "JSON with \"circulation\" and optional \"xi\"")->required();

  for (auto* sub : {xi, synth}) {
    sub->add_option("--samples", match_samples, "Profile samples used to re-extract the mesh (default: those of the graph)")->check(CLI::PositiveNumber);
    sub->add_option("--tol-f", tol_f, "Absolute tolerance on vertex values");
    sub->add_option("--tol-mass", tol_mass, "Relative tolerance on measures");
    sub->add_option("-o", output, "Output file");
  }

  auto* realize_cmd = app.add_subcommand("realize", "Mesh realizing a graph");
  realize_cmd->add_option("graph", p1, "Graph JSON")->required();
  realize_cmd->add_option("--resolution", resolution, "Vertices per level component")->check(CLI::Range(4, 1 << 16));
  realize_cmd->add_option("-o", output, "Output file");

  auto* dot = app.add_subcommand("dot", "Graphviz rendering of a graph");
  dot->add_option("graph", p1, "Graph JSON")->required();

  auto* fuzz_cmd = app.add_subcommand("fuzz", "Randomized property suites");
  fuzz_cmd->add_option("--cases", cases, "Cases per suite")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--seed", seed, "Seed");
  fuzz_cmd->add_option("--suite", suites, "Suites to run (default all)");

  Result result;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    result.out = dump(error_object("UsageError", e.what()));
    result.err = err.str();
    result.exit_code = 2;
    return result;
  }
  MatchTolerances tol = tolerances(tol_f, tol_mass);
  tol.tol_circulation = tol_circ;

  try {
    Outcome o;
    if (validate->parsed()) o = cmd_validate(p1);
    else if (extract_cmd->parsed()) o = cmd_extract(p1, samples, output);
    else if (invariants->parsed()) o = cmd_invariants(p1);
    else if (compare->parsed()) o = cmd_compare(p1, p2, augmented, tol);
    else if (solve->parsed()) o = cmd_circulation_solve(p1);
    else if (check->parsed()) o = cmd_circulation_check(p1, tol_check);
    else if (xi->parsed()) o = cmd_xi(p1, p2, p3, match_samples, tol, output);
    else if (synth->parsed()) o = cmd_synthesize(p1, p2, p3, match_samples, tol, output);
    else if (realize_cmd->parsed()) o = cmd_realize(p1, resolution, output);
    else if (dot->parsed()) o = cmd_dot(p1);
    else if (fuzz_cmd->parsed()) o = cmd_fuzz(cases, seed, suites);
    result.out = o.raw.empty() ? dump(o.payload) : o.raw;
    result.err = o.diagnostics;
    result.exit_code = o.exit_code;
  } catch (const Error& e) {
    result.out = dump(error_object(e.code(), e.what()));
    result.err = e.code() + ": " + e.what() + "\n";
    result.exit_code = 2;
  } catch (const std::exception& e) {
    result.out = dump(error_object("Error", e.what()));
    result.err = std::string(e.what()) + "\n";
    result.exit_code = 2;
  }
  return result;
}

}  // namespace reeb::cli
