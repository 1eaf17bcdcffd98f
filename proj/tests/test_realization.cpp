#include <doctest.h>

#include <cmath>

#include "reeb/equivalence.hpp"
#include "reeb/errors.hpp"
#include "reeb/extraction.hpp"
#include "reeb/realization.hpp"
#include "support.hpp"

using namespace reeb;

namespace {
struct Expect {
  const char* name;
  int genus;
  int boundaries;
};
}  // namespace

TEST_CASE("realized fixtures have the expected topology") {
  for (const auto& [name, g_expect, b_expect] :
       {Expect{"fig2", 1, 1}, Expect{"fig4a", 0, 3}, Expect{"fig4b", 1, 1}, Expect{"closed_torus", 1, 0}}) {
    CAPTURE(name);
    const auto g = load_graph_file(fixture(name));
    const auto r = realize(g);
    const auto t = topology_summary(r.surface);
    CHECK(t.genus == g_expect);
    CHECK(t.boundary_component_count == b_expect);
    CHECK(t.total_area == doctest::Approx(g.total_mass()).epsilon(1e-12));
    CHECK(validate_simple_morse(r.surface).is_simple_morse);
    const auto s = surface_of(g);
    CHECK(s.genus == g_expect);
    CHECK(s.boundary_component_count == b_expect);
  }
}

TEST_CASE("witness areas equal edge masses") {
  const auto g = load_graph_file(fixture("fig2"));
  const auto r = realize(g, 6);
  double total = 0.0;
  for (const auto& e : g.edges) {
    CHECK(r.witness.edge_area.at(e.id) == doctest::Approx(e.mass).epsilon(1e-9));
    double sum = 0.0;
    for (int t : r.witness.edge_triangles.at(e.id)) sum += r.surface.area(t);
    total += sum;
  }
  for (const auto& v : g.vertices) {
    CHECK(r.surface.f(r.surface.index_of(r.witness.vertex_of.at(v.id))) == v.f);
    for (int t : r.witness.vertex_triangles.at(v.id)) total += r.surface.area(t);
  }
  CHECK(total == doctest::Approx(r.surface.total_area()).epsilon(1e-12));
}

TEST_CASE("realize then extract gives the graph back") {
  for (auto name : {"fig2", "fig4a", "fig4b", "closed_torus"}) {
    CAPTURE(name);
    const auto g = load_graph_file(fixture(name));
    for (int res : {4, 8, 12}) {
      const auto s = realize(g, res).surface;
      const auto back = extract_reeb(s, g.edges.front().profile.samples());
      const auto iso = match_measured(back, g);
      CHECK(iso.isomorphic());
    }
  }
}

TEST_CASE("cyclic order is realized with its chirality") {
  const auto a = load_graph_file(fixture("fig4a"));
  const auto b = load_graph_file(fixture("fig4b"));
  const auto ea = extract_reeb(realize(a).surface, 8);
  const auto eb = extract_reeb(realize(b).surface, 8);
  CHECK(match_measured(ea, a).isomorphic());
  const auto iso = match_measured(eb, a);
  REQUIRE(iso.obstruction);
  CHECK(iso.obstruction->kind == ObstructionKind::CYCLIC_ORDER);
}

TEST_CASE("resolution below four is rejected") {
  CHECK_THROWS_AS(realize(load_graph_file(fixture("fig2")), 3), DataError);
}
