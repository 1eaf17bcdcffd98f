#include <doctest.h>

#include <random>

#include "reeb/errors.hpp"
#include "reeb/fuzz.hpp"
#include "reeb/graph_core.hpp"

using namespace reeb;

TEST_CASE("random graphs are valid") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto g = fuzz::random_graph(rng);
    CHECK_NOTHROW(validate_graph(g));
    CHECK(graph_to_json(graph_from_json(graph_to_json(g))) == graph_to_json(g));
  }
  fuzz::GraphOptions o;
  o.require_dashed = true;
  for (int i = 0; i < 50; ++i) CHECK(homology_dims(fuzz::random_graph(rng, o)).h0_dashed >= 1);
  o = {};
  o.allow_dashed = false;
  for (int i = 0; i < 50; ++i) CHECK(homology_dims(fuzz::random_graph(rng, o)).h0_dashed == 0);
}

TEST_CASE("random surfaces are simple Morse") {
  std::mt19937_64 rng(9);
  for (auto kind : {fuzz::SurfaceKind::Planar, fuzz::SurfaceKind::Torus, fuzz::SurfaceKind::Realized}) {
    fuzz::SurfaceOptions o;
    o.kinds = {kind};
    for (int i = 0; i < 5; ++i) CHECK(validate_simple_morse(fuzz::random_surface(rng, o)).is_simple_morse);
  }
  fuzz::SurfaceOptions o;
  o.require_boundary = true;
  for (int i = 0; i < 5; ++i) CHECK(topology_summary(fuzz::random_surface(rng, o)).boundary_component_count > 0);
}

TEST_CASE("suites are deterministic across thread counts") {
  for (const auto& name : fuzz::suite_names()) {
    CAPTURE(name);
    const auto a = fuzz::run_suite(name, 6, 42, 1);
    const auto b = fuzz::run_suite(name, 6, 42, 4);
    CHECK(a.passed + a.failed == 6);
    CHECK(a.passed == b.passed);
    CHECK(a.failures == b.failures);
  }
  CHECK_THROWS_AS(fuzz::run_suite("nonsense", 1, 1), DataError);
}
