// One line per acceptance criterion. Exit status is 0 when every criterion
// passes, except those named with --known-failure, which must fail.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "reeb/asymptotics.hpp"
#include "reeb/circulation.hpp"
#include "reeb/errors.hpp"
#include "reeb/extraction.hpp"
#include "reeb/fuzz.hpp"
#include "reeb/graph_core.hpp"
#include "reeb/mesh_factory.hpp"
#include "reeb/realization.hpp"
#include "support.hpp"

using namespace reeb;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  std::function<Verdict()> check;
};

std::uint64_t g_seed = 20261018;

Verdict from_suite(const std::string& name, int cases) {
  const auto r = fuzz::run_suite(name, cases, g_seed);
  std::ostringstream os;
  os << name << " " << r.passed << "/" << cases;
  if (!r.failures.empty()) os << "; first failure " << r.failures.front();
  return {r.failed == 0, os.str()};
}

Verdict all_of(std::vector<Verdict> vs) {
  Verdict out;
  for (const auto& v : vs) {
    out.pass = out.pass && v.pass;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += v.detail;
  }
  return out;
}

MeasuredReebGraph graph(const std::string& name) { return load_graph_file(fixture(name)); }

Verdict boundary_cycles_check() {
  auto edges = [](const MeasuredReebGraph& g) {
    std::vector<std::vector<int>> out;
    for (const auto& c : boundary_cycles(g)) out.push_back(c.edges);
    return out;
  };
  const std::vector<std::vector<int>> expect_a{{1, 3, 6, 7, 7, 5, 2, 1}, {2, 4, 3}, {5, 6, 4}};
  const std::vector<std::vector<int>> expect_b{{1, 3, 6, 7, 7, 5, 4, 3, 2, 5, 6, 4, 2, 1}};
  const auto a = edges(graph("fig4a")), b = edges(graph("fig4b"));
  return {a == expect_a && b == expect_b,
          "fig4a " + std::to_string(a.size()) + " cycles, fig4b " + std::to_string(b.size()) + " cycles"};
}

Verdict orbit_dimension_check() {
  const int a = orbit_moduli_dimension(graph("fig4a")), f = orbit_moduli_dimension(graph("fig2"));
  return {a == 2 && f == 1, "fig4a " + std::to_string(a) + ", fig2 " + std::to_string(f)};
}

Verdict realization_check() {
  std::vector<Verdict> vs{from_suite("realize_roundtrip", 50)};
  for (const auto& [name, gg, bb] : std::vector<std::tuple<std::string, int, int>>{
           {"fig2", 1, 1}, {"fig4a", 0, 3}, {"fig4b", 1, 1}}) {
    const auto t = topology_summary(realize(graph(name)).surface);
    vs.push_back({t.genus == gg && t.boundary_component_count == bb,
                  name + " (" + std::to_string(t.genus) + "," + std::to_string(t.boundary_component_count) + ")"});
  }
  return all_of(vs);
}

MeasuredReebGraph parabola(int n) {
  meshes::Grid g;
  g.nx = 2 * n;
  g.ny = n;
  g.x0 = -1;
  g.y0 = 0;
  g.f = [](double x, double y) { return y + (x + 0.05) * (x + 0.05); };
  return extract_reeb(meshes::grid_surface(g), 64);
}

MeasuredReebGraph saddle(int n) {
  meshes::Grid g;
  g.nx = g.ny = n;
  g.x0 = g.y0 = -1;
  g.f = [](double x, double y) { return (x + 0.03) * (y + 0.05); };
  return extract_reeb(meshes::grid_surface(g), 64);
}

VertexId lowest(const MeasuredReebGraph& g) {
  VertexId best = g.vertices[0].id;
  for (const auto& v : g.vertices)
    if (v.f < g.vertex(best).f) best = v.id;
  return best;
}

VertexId first_of(const MeasuredReebGraph& g, VertexType t) {
  for (const auto& v : g.vertices)
    if (v.type == t) return v.id;
  throw DataError("no vertex of type " + to_string(t));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

Verdict asymptotics_check() {
  std::vector<Verdict> vs;
  {
    const auto c = parabola(100), f = parabola(200);
    if (c.vertex(lowest(c)).type != VertexType::I) return {false, "parabola minimum is not type I"};
    const auto a = fit_vertex_asymptotics(c, lowest(c)), b = fit_vertex_asymptotics(f, lowest(f));
    const bool in = b.exponent_estimate >= 1.45 && b.exponent_estimate <= 1.55;
    const bool better = std::abs(b.exponent_estimate - 1.5) <= std::abs(a.exponent_estimate - 1.5);
    vs.push_back({in && better, "I exponent " + fmt(a.exponent_estimate) + " -> " + fmt(b.exponent_estimate)});
  }
  {
    const auto c = extract_reeb(meshes::icosphere(3), 64), f = extract_reeb(meshes::icosphere(4), 64);
    const auto a = fit_vertex_asymptotics(c, lowest(c)), b = fit_vertex_asymptotics(f, lowest(f));
    const bool in = b.exponent_estimate >= 0.95 && b.exponent_estimate <= 1.05;
    const bool better = std::abs(b.exponent_estimate - 1.0) <= std::abs(a.exponent_estimate - 1.0);
    vs.push_back({in && better, "VII exponent " + fmt(a.exponent_estimate) + " -> " + fmt(b.exponent_estimate)});
  }
  {
    const auto c = saddle(100), f = saddle(200);
    const auto a = fit_vertex_asymptotics(c, first_of(c, VertexType::IV));
    const auto b = fit_vertex_asymptotics(f, first_of(f, VertexType::IV));
    auto ratio = [](const AsymptoticFit& x) {
      return x.model_residuals.at(AsymptoticModel::Log) / x.model_residuals.at(AsymptoticModel::Sqrt);
    };
    const bool ok = ratio(a) < 0.5 && ratio(b) < 0.5 && b.model == AsymptoticModel::Log &&
                    b.model_residuals.at(AsymptoticModel::Log) <= a.model_residuals.at(AsymptoticModel::Log);
    vs.push_back({ok, "IV log/sqrt residual ratio " + fmt(ratio(a)) + " -> " + fmt(ratio(b))});
  }
  return all_of(vs);
}

Verdict conservation_check() {
  std::vector<Verdict> vs{from_suite("measure_conservation", 200)};
  std::vector<std::pair<std::string, PLSurface>> meshes{
      {"icosphere", meshes::icosphere(3)},
      {"two-hole disk", meshes::disk_with_two_holes(24)},
      {"holed torus", meshes::standing_torus_with_hole(24, 16)},
      {"flat torus", meshes::flat_torus(20)},
  };
  for (auto name : {"fig2", "fig4a", "fig4b", "closed_torus"}) meshes.emplace_back(name, realize(graph(name)).surface);
  int ok = 0;
  for (const auto& [name, s] : meshes) {
    const double m = extract_reeb(s, 32).total_mass();
    if (std::abs(m - s.total_area()) <= 1e-9 * s.total_area()) ++ok;
    else vs.push_back({false, name});
  }
  vs.push_back({true, "model meshes " + std::to_string(ok) + "/" + std::to_string(meshes.size())});
  return all_of(vs);
}

Verdict formula_check() {
  std::vector<Verdict> vs;
  const auto f2 = graph("fig2");
  bool threw = false;
  try {
    genus(f2, GenusMethod::Formula);
  } catch (const NonIntegerFormulaValue&) {
    threw = true;
  }
  vs.push_back({genus_formula_value(f2) == 4.5 && threw && genus(f2) == 1,
                "fig2 formula " + fmt(genus_formula_value(f2)) + " vs realize " + std::to_string(genus(f2))});
  for (const auto& [name, formula, real] :
       std::vector<std::tuple<std::string, int, int>>{{"fig4a", 1, 0}, {"fig4b", 2, 1}}) {
    const auto g = graph(name);
    const int f = genus(g, GenusMethod::Formula), r = genus(g);
    vs.push_back({f == formula && r == real, name + " formula " + std::to_string(f) + " vs realize " + std::to_string(r)});
  }
  return all_of(vs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> known;
  app.add_option("--seed", g_seed, "Fuzzer seed");
  app.add_option("--known-failure", known, "Criterion expected to fail");
  CLI11_PARSE(app, argc, argv);
  const std::set<int> expected_fail(known.begin(), known.end());

  const std::vector<Criterion> criteria{
      {1, "boundary cycles on the fig4 fixtures", boundary_cycles_check},
      {2, "orbit moduli dimensions", orbit_dimension_check},
      {3, "homology identity h1_rel + h1_dashed = h1_gamma - h0_dashed + 1",
       [] { return from_suite("remark_identity", 200); }},
      {4, "sigma equals boundary count", [] { return from_suite("sigma_boundary", 50); }},
      {5, "graphs invariant under area-preserving remaps", [] { return from_suite("remap_invariance", 50); }},
      {6, "realize then extract round trip", realization_check},
      {7, "circulation existence and basis size", [] { return from_suite("circulation_existence", 200); }},
      {8, "synthesis round trip, exact and closed perturbations", [] { return from_suite("synthesis_roundtrip", 50); }},
      {9, "measure asymptotics at vertices", asymptotics_check},
      {10, "measure conservation", conservation_check},
      {11, "genus formula against realization", formula_check},
  };

  bool ok = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool known_fail = expected_fail.count(c.number) > 0;
    std::cout << "criterion " << c.number << ": " << (v.pass ? "PASS" : "FAIL") << (known_fail ? " (known failure)" : "")
              << " | " << c.title << " | " << v.detail << " | " << fmt(secs) << " s" << std::endl;
    ok = ok && (v.pass != known_fail);
  }
  return ok ? 0 : 1;
}
