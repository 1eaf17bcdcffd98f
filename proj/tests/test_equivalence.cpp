#include <doctest.h>

#include <random>

#include "reeb/circulation.hpp"
#include "reeb/equivalence.hpp"
#include "reeb/errors.hpp"
#include "reeb/fuzz.hpp"
#include "support.hpp"

using namespace reeb;

namespace {
std::optional<ObstructionKind> kind(const GraphIsomorphism& iso) {
  if (!iso.obstruction) return std::nullopt;
  return iso.obstruction->kind;
}

AugmentedCirculationGraph augment(const MeasuredReebGraph& g, std::vector<double> coords) {
  AugmentedCirculationGraph a;
  a.graph = g;
  a.circulation = solve_circulations(g).particular;
  a.xi.basis = dashed_cycle_basis(g);
  a.xi.coords = std::move(coords);
  return a;
}
}  // namespace

TEST_CASE("a graph is isomorphic to itself") {
  for (auto name : {"fig2", "fig4a", "fig4b", "closed_torus"}) {
    const auto g = load_graph_file(fixture(name));
    const auto iso = match_measured(g, g);
    CHECK(iso.isomorphic());
    for (const auto& [a, b] : iso.vertex_map) CHECK(a == b);
  }
}

TEST_CASE("renumbered copies are matched through the renumbering") {
  std::mt19937_64 rng(11);
  for (auto name : {"fig2", "fig4a", "fig4b"}) {
    const auto g = load_graph_file(fixture(name));
    const auto h = fuzz::permuted(g, rng);
    const auto iso = match_measured(g, h);
    REQUIRE(iso.isomorphic());
    for (const auto& e : g.edges) {
      const auto& e2 = h.edge(iso.edge_map.at(e.id));
      CHECK(e2.tail == iso.vertex_map.at(e.tail));
      CHECK(e2.head == iso.vertex_map.at(e.head));
      CHECK(e2.mass == e.mass);
    }
  }
}

TEST_CASE("obstructions in their fixed order") {
  const auto g = load_graph_file(fixture("fig2"));

  auto h = g;
  for (auto& e : h.edges) {
    e.mass *= 2;
    for (auto& c : e.profile.cumulative) c *= 2;
  }
  CHECK(kind(match_measured(g, h)) == ObstructionKind::MEASURE);

  h = g;
  h.vertices[2].f += 0.01;
  CHECK(kind(match_measured(g, h)) == ObstructionKind::F_VALUES);
  CHECK(match_measured(g, h, {0.1, 1e-6, 1e-6}).isomorphic());

  h = g;
  h.edges[3].style = Style::Solid;
  CHECK(kind(match_measured(g, h)) == ObstructionKind::STYLE);

  h = g;
  h.vertices[1].type = VertexType::V;
  CHECK(kind(match_measured(g, h)) == ObstructionKind::TYPES);

  h = g;
  h.edges[1].head = 2;
  CHECK(kind(match_measured(g, h)) == ObstructionKind::ADJACENCY);

  const auto a = load_graph_file(fixture("fig4a"));
  const auto b = load_graph_file(fixture("fig4b"));
  CHECK(kind(match_measured(a, b)) == ObstructionKind::CYCLIC_ORDER);
}

TEST_CASE("mass tolerance is relative") {
  const auto g = load_graph_file(fixture("fig2"));
  auto h = g;
  for (auto& c : h.edges[0].profile.cumulative) c *= 1 + 1e-8;
  h.edges[0].mass = h.edges[0].profile.mass();
  CHECK(match_measured(g, h).isomorphic());
  CHECK(kind(match_measured(g, h, {-1, 1e-10, 1e-6})) == ObstructionKind::MEASURE);
}

TEST_CASE("vertices closer than tol_f are ambiguous") {
  const auto g = load_graph_file(fixture("fig2"));
  CHECK_THROWS_AS(match_measured(g, g, {0.5, 1e-6, 1e-6}), AmbiguousMatching);
}

TEST_CASE("augmented graphs") {
  const auto fig2 = load_graph_file(fixture("fig2"));
  const auto x = augment(fig2, {});
  CHECK(match_augmented(x, x).isomorphic());
  auto y = x;
  y.circulation.limits.at(2).first += 0.01;
  CHECK(kind(match_augmented(x, y)) == ObstructionKind::CIRCULATION);

  const auto a = load_graph_file(fixture("fig4a"));
  const auto p = augment(a, {1.0, 2.0});
  CHECK(match_augmented(p, p).isomorphic());
  CHECK(kind(match_augmented(p, augment(a, {1.0, 3.0}))) == ObstructionKind::XI);

  // Same class in another basis: reversing a basis cycle flips its coordinate.
  auto q = p;
  std::reverse(q.xi.basis[0].begin(), q.xi.basis[0].end());
  for (int& s : q.xi.basis[0]) s = -s;
  q.xi.coords[0] = -q.xi.coords[0];
  CHECK(match_augmented(p, q).isomorphic());

  const auto b = load_graph_file(fixture("fig4b"));
  CHECK(kind(match_augmented(p, augment(b, {1.0, 2.0}))) == ObstructionKind::CYCLIC_ORDER);
}

TEST_CASE("isomorphism json") {
  const auto a = load_graph_file(fixture("fig4a"));
  const auto j = to_json(match_measured(a, load_graph_file(fixture("fig4b"))));
  CHECK(j.at("isomorphic") == false);
  CHECK(j.at("obstruction").at("kind") == "CYCLIC_ORDER");
  const auto k = to_json(match_measured(a, a));
  CHECK(k.at("obstruction").is_null());
  CHECK(k.at("edge_map").size() == a.edges.size());
}
