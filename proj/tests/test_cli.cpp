#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "reeb/cli.hpp"
#include "support.hpp"

using nlohmann::json;
using reeb::cli::run;

namespace {
std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("reeb_orbit_test_" + name)).string();
}
}  // namespace

TEST_CASE("compare exit codes") {
  auto r = run({"compare", fixture("fig2"), fixture("fig2")});
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out).at("isomorphic") == true);
  r = run({"compare", fixture("fig4a"), fixture("fig4b")});
  CHECK(r.exit_code == 1);
  CHECK(json::parse(r.out).at("obstruction").at("kind") == "CYCLIC_ORDER");
}

TEST_CASE("invariants payload") {
  const auto r = run({"invariants", fixture("fig2")});
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("orbit_moduli_dimension") == 1);
  CHECK(j.at("sigma") == 1);
  CHECK(j.at("genus_realize") == 1);
  CHECK(j.at("genus_formula").is_null());
  CHECK(j.at("genus_formula_error").at("error") == "NonIntegerFormulaValue");
  CHECK(j.at("homology").at("h1_rel") == 1);
}

TEST_CASE("usage and data errors exit with 2") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {}, {"frobnicate"}, {"compare", fixture("fig2")}, {"invariants", "/nonexistent.json"},
           {"realize", fixture("fig2"), "--resolution", "2"}}) {
    const auto r = run(args);
    CHECK(r.exit_code == 2);
    CHECK(json::parse(r.out).contains("error"));
  }
  CHECK(run({"--help"}).exit_code == 0);
}

TEST_CASE("realize, extract and compare through files") {
  const auto mesh = temp_path("mesh.json"), graph = temp_path("graph.json");
  REQUIRE(run({"realize", fixture("fig4b"), "-o", mesh, "--resolution", "6"}).exit_code == 0);
  CHECK(run({"validate", mesh}).exit_code == 0);
  REQUIRE(run({"extract", mesh, "--samples", "8", "-o", graph}).exit_code == 0);
  CHECK(run({"compare", graph, fixture("fig4b")}).exit_code == 0);
  CHECK(run({"compare", graph, fixture("fig4a")}).exit_code == 1);
  std::remove(mesh.c_str());
  std::remove(graph.c_str());
}

TEST_CASE("circulation commands") {
  auto r = run({"circulation", "solve", fixture("closed_torus")});
  CHECK(r.exit_code == 1);
  CHECK(json::parse(r.out).at("error") == "NoSolution");
  r = run({"circulation", "solve", fixture("fig2")});
  REQUIRE(r.exit_code == 0);
  const auto sol = json::parse(r.out);
  CHECK(sol.at("basis").size() == 1);

  auto aug = json::parse(std::ifstream(fixture("fig2")));
  aug["circulation"] = sol.at("particular");
  aug["xi"] = {{"basis", json::array()}, {"coords", json::array()}};
  const auto path = temp_path("aug.json");
  std::ofstream(path) << aug.dump();
  CHECK(run({"circulation", "check", path}).exit_code == 0);
  aug["circulation"]["2"][1] = 5.0;
  std::ofstream(path) << aug.dump();
  CHECK(run({"circulation", "check", path}).exit_code == 1);
  std::remove(path.c_str());
}

TEST_CASE("synthesize then xi reproduces the targets") {
  const auto mesh = temp_path("m2.json"), graph = temp_path("g2.json"), targets = temp_path("t2.json"),
             form = temp_path("f2.json"), aug = temp_path("a2.json");
  REQUIRE(run({"realize", fixture("fig2"), "-o", mesh}).exit_code == 0);
  REQUIRE(run({"extract", mesh, "--samples", "8", "-o", graph}).exit_code == 0);
  const auto sol = json::parse(run({"circulation", "solve", graph}).out);
  std::ofstream(targets) << json{{"circulation", sol.at("particular")}}.dump();
  REQUIRE(run({"synthesize", mesh, graph, targets, "-o", form}).exit_code == 0);
  REQUIRE(run({"xi", mesh, form, graph, "-o", aug}).exit_code == 0);
  const auto a = json::parse(std::ifstream(aug));
  for (const auto& [id, lim] : sol.at("particular").items()) {
    CHECK(a.at("circulation").at(id)[0].get<double>() == doctest::Approx(lim[0].get<double>()).epsilon(1e-6));
    CHECK(a.at("circulation").at(id)[1].get<double>() == doctest::Approx(lim[1].get<double>()).epsilon(1e-6));
  }
  CHECK(run({"circulation", "check", aug}).exit_code == 0);
  for (const auto& p : {mesh, graph, targets, form, aug}) std::remove(p.c_str());
}

TEST_CASE("dot and fuzz payloads are deterministic") {
  const auto d = run({"dot", fixture("fig4a")});
  CHECK(d.exit_code == 0);
  CHECK(d.out.rfind("digraph", 0) == 0);
  const auto a = run({"fuzz", "--cases", "4", "--seed", "3", "--suite", "sigma_boundary", "--suite", "match_properties"});
  const auto b = run({"fuzz", "--cases", "4", "--seed", "3", "--suite", "sigma_boundary", "--suite", "match_properties"});
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out).at("suites").size() == 2);
}
