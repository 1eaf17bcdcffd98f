#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reeb/circulation.hpp"
#include "reeb/errors.hpp"
#include "reeb/extraction.hpp"
#include "reeb/graph_core.hpp"
#include "reeb/mesh_factory.hpp"
#include "support.hpp"

using namespace reeb;
using std::numbers::pi;

namespace {

// Cochain of x dy: exact for the piecewise-linear interpolant of x and y.
DiscreteOneForm x_dy(const PLSurface& s) {
  DiscreteOneForm a = zero_form(s);
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const auto& p = s.xy(s.edge(e).a);
    const auto& q = s.xy(s.edge(e).b);
    a.value[e] = 0.5 * (p[0] + q[0]) * (q[1] - p[1]);
  }
  return a;
}

// Cochain of d(angle about c), winding-wrapped per edge.
DiscreteOneForm d_angle(const PLSurface& s, double cx, double cy) {
  DiscreteOneForm a = zero_form(s);
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const auto& p = s.xy(s.edge(e).a);
    const auto& q = s.xy(s.edge(e).b);
    double d = std::atan2(q[1] - cy, q[0] - cx) - std::atan2(p[1] - cy, p[0] - cx);
    if (d > pi) d -= 2 * pi;
    if (d < -pi) d += 2 * pi;
    a.value[e] = d;
  }
  return a;
}

// Two holes and a dip, giving a solid edge next to the dashed cycles.
PLSurface holed_disk_with_dip() {
  meshes::Grid g;
  g.nx = g.ny = 40;
  g.holes = {{0.15, 0.4, 0.4, 0.75}, {0.6, 0.85, 0.2, 0.55}};
  g.f = [](double x, double y) {
    return y + 0.05 * x - 0.15 * std::exp(-((x - 0.45) * (x - 0.45) + (y - 0.15) * (y - 0.15)) / 0.004);
  };
  return meshes::grid_surface(g);
}

double shoelace(const PLSurface& s, const std::vector<int>& loop) {
  double a = 0.0;
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
    const auto& p = s.xy(loop[i]);
    const auto& q = s.xy(loop[i + 1]);
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

}  // namespace

TEST_CASE("edge moment") {
  const auto g = load_graph_file(fixture("closed_torus"));
  for (const auto& e : g.edges) {
    const auto& p = e.profile;
    CHECK(edge_moment(g, e.id) == doctest::Approx(p.moment()));
  }
  MeasuredReebGraph h = g;
  for (auto& e : h.edges) {
    const double lo = h.vertex(e.tail).f, hi = h.vertex(e.head).f;
    e.profile = MeasureProfile::uniform(lo, hi, e.mass, 8);
  }
  for (const auto& e : h.edges)
    CHECK(edge_moment(h, e.id) ==
          doctest::Approx(e.mass * (h.vertex(e.tail).f + h.vertex(e.head).f) / 2));
}

TEST_CASE("circulations on fig2") {
  const auto g = load_graph_file(fixture("fig2"));
  const auto sol = solve_circulations(g);
  CHECK(check_circulation(g, sol.particular).ok);
  CHECK(static_cast<int>(sol.basis.size()) == homology_dims(g).h1_rel);
  CHECK(sol.particular.limits.size() == 4);
  // Minimum and maximum: the limit at a disk centre vanishes.
  CHECK(sol.particular.limits.at(1).first == doctest::Approx(0.0));
  CHECK(sol.particular.limits.at(6).second == doctest::Approx(0.0));
  // Newton-Leibniz along a solid edge: difference of limits is the moment.
  for (const auto& [id, lim] : sol.particular.limits)
    CHECK(lim.second - lim.first == doctest::Approx(edge_moment(g, id)));
  for (const auto& b : sol.basis) {
    auto c = sol.particular;
    for (auto& [id, lim] : c.limits) {
      lim.first += 2.5 * b.limits.at(id).first;
      lim.second += 2.5 * b.limits.at(id).second;
    }
    CHECK(check_circulation(g, c).ok);
  }
  auto bad = sol.particular;
  bad.limits.at(2).second += 0.1;
  const auto chk = check_circulation(g, bad);
  CHECK_FALSE(chk.ok);
  CHECK(chk.max_residual == doctest::Approx(0.1));
}

TEST_CASE("closed torus needs zero moment") {
  auto g = load_graph_file(fixture("closed_torus"));
  CHECK_THROWS_AS(solve_circulations(g), NoSolution);
  // Shift f so the total moment vanishes.
  double moment = 0.0;
  for (const auto& e : g.edges) moment += edge_moment(g, e.id);
  const double shift = moment / g.total_mass();
  auto j = graph_to_json(g);
  for (auto& v : j["vertices"]) v["f"] = v["f"].get<double>() - shift;
  const auto h = graph_from_json(j);
  const auto sol = solve_circulations(h);
  CHECK(sol.basis.size() == 1);
  CHECK(check_circulation(h, sol.particular).ok);
}

TEST_CASE("dashed-only graphs carry no circulation") {
  const auto g = load_graph_file(fixture("fig4a"));
  const auto sol = solve_circulations(g);
  CHECK(sol.particular.limits.empty());
  CHECK(sol.basis.empty());
  const auto basis = dashed_cycle_basis(g);
  CHECK(basis.size() == 2);
  XiClass xi{basis, {1.0, -2.0}};
  CHECK(evaluate_xi(g, xi, basis[1]) == doctest::Approx(-2.0));
  std::vector<int> reversed;
  for (auto it = basis[0].rbegin(); it != basis[0].rend(); ++it) reversed.push_back(-*it);
  CHECK(evaluate_xi(g, xi, reversed) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(evaluate_xi(g, xi, {1}), DataError);
}

TEST_CASE("orbit moduli dimension") {
  CHECK(orbit_moduli_dimension(load_graph_file(fixture("fig2"))) == 1);
  CHECK(orbit_moduli_dimension(load_graph_file(fixture("fig4a"))) == 2);
  CHECK(orbit_moduli_dimension(load_graph_file(fixture("closed_torus"))) == 1);
}

TEST_CASE("circulation json round trip") {
  const auto g = load_graph_file(fixture("fig2"));
  AugmentedCirculationGraph a{g, solve_circulations(g).particular, {}};
  const auto b = augmented_from_json(to_json(a));
  CHECK(b.circulation == a.circulation);
  CHECK(graph_to_json(b.graph) == graph_to_json(g));
}

TEST_CASE("vorticity and level integrals of x dy on a disk") {
  const auto s = meshes::polar_disk(24, [](double x, double y) { return x * x + y * y + 0.1 * x; });
  const auto a = x_dy(s);
  for (double w : vorticity(s, a)) CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
  const auto exact = exact_form(s, std::vector<double>(s.vertex_count(), 0.0));
  for (double w : vorticity(s, exact)) CHECK(w == 0.0);

  const auto ex = extract(s, 32);
  const auto& edge = ex.graph.edges[0];
  REQUIRE(edge.style == Style::Solid);
  REQUIRE(ex.graph.vertex(edge.tail).type == VertexType::VII);
  const int id = edge.id;
  for (double c : {0.1013, 0.3017, 0.7031}) {
    // Sublevel on the left: counterclockwise, so the circulation is the
    // enclosed area.
    double below = 0.0;
    for (std::size_t t = 0; t < s.triangle_count(); ++t) {
      const auto& v = s.triangle(t);
      below += clipped_area(s.area(t), s.f(v[0]), s.f(v[1]), s.f(v[2]), c);
    }
    CHECK(circulation_from_form(s, a, ex, id, c) == doctest::Approx(below).epsilon(1e-12));
  }
}

TEST_CASE("exact forms have zero circulation and xi") {
  const auto s = meshes::disk_with_two_holes(24);
  const auto ex = extract(s, 16);
  std::vector<double> pot;
  for (std::size_t v = 0; v < s.vertex_count(); ++v) pot.push_back(std::sin(3 * s.xy(v)[0]) + s.xy(v)[1]);
  const auto a = exact_form(s, pot);
  for (const auto& [id, lim] : circulation_of_form(s, a, ex).limits) {
    CHECK(std::abs(lim.first) < 1e-12);
    CHECK(std::abs(lim.second) < 1e-12);
  }
  for (double x : xi_class(s, a, ex).coords) CHECK(std::abs(x) < 1e-12);
}

TEST_CASE("xi of angle forms counts windings about the holes") {
  const auto s = meshes::disk_with_two_holes(24);
  const auto ex = extract(s, 16);
  const auto lifted = lift_dashed_graph(s, ex);
  const auto basis = dashed_cycle_basis(ex.graph);
  REQUIRE(basis.size() == 2);
  const std::array<std::array<double, 2>, 2> centres{{{0.275, 0.575}, {0.725, 0.375}}};
  std::array<std::array<double, 2>, 2> w{};
  for (int h = 0; h < 2; ++h) {
    const auto xi = xi_class(s, d_angle(s, centres[h][0], centres[h][1]), ex);
    REQUIRE(xi.basis == basis);
    for (int i = 0; i < 2; ++i) {
      w[h][i] = xi.coords[i] / (2 * pi);
      CHECK(w[h][i] == doctest::Approx(std::round(w[h][i])).epsilon(1e-9));
    }
  }
  // The two basis cycles separate the two holes.
  CHECK(std::abs(std::round(w[0][0] * w[1][1] - w[0][1] * w[1][0])) == 1.0);
  // Winding oracle: signed area of the lifted cycle decides the sign.
  for (int i = 0; i < 2; ++i) {
    const auto loop = lift_cycle(lifted, ex.graph, basis[i]);
    REQUIRE(loop.front() == loop.back());
    const double area = shoelace(s, loop);
    const double total = std::round(w[0][i]) + std::round(w[1][i]);
    if (total != 0.0) CHECK((area > 0) == (total > 0));
  }
}

TEST_CASE("closed cochain basis") {
  const auto s = meshes::disk_with_two_holes(12);
  const auto basis = closed_cochain_basis(s);
  CHECK(basis.size() == 2);
  for (const auto& h : basis)
    for (double w : vorticity(s, h)) CHECK(std::abs(w) < 1e-9);
  const auto t = meshes::flat_torus(10);
  const auto tb = closed_cochain_basis(t);
  CHECK(tb.size() == 2);
  for (const auto& h : tb)
    for (double w : vorticity(t, h)) CHECK(std::abs(w) < 1e-9);
}

TEST_CASE("synthesis reproduces prescribed circulation and xi") {
  const auto s = holed_disk_with_dip();
  const auto ex = extract(s, 16);
  const auto sol = solve_circulations(ex.graph);
  auto target = sol.particular;
  for (std::size_t k = 0; k < sol.basis.size(); ++k)
    for (auto& [id, lim] : target.limits) {
      lim.first += (0.3 + k) * sol.basis[k].limits.at(id).first;
      lim.second += (0.3 + k) * sol.basis[k].limits.at(id).second;
    }
  REQUIRE(target.limits.size() == 1);
  const XiClass xi{dashed_cycle_basis(ex.graph), {0.7, -1.3}};
  const auto a = synthesize_form(s, ex, target, xi);
  const auto c = circulation_of_form(s, a, ex);
  for (const auto& [id, lim] : target.limits) {
    CHECK(c.limits.at(id).first == doctest::Approx(lim.first).epsilon(1e-6));
    CHECK(c.limits.at(id).second == doctest::Approx(lim.second).epsilon(1e-6));
  }
  const auto got = xi_class(s, a, ex);
  CHECK(got.coords[0] == doctest::Approx(0.7).epsilon(1e-6));
  CHECK(got.coords[1] == doctest::Approx(-1.3).epsilon(1e-6));

  auto bad = target;
  bad.limits.begin()->second.second += 1.0;
  CHECK_THROWS_AS(synthesize_form(s, ex, bad, xi), InfeasibleTarget);
}

TEST_CASE("one-form json") {
  const auto s = meshes::unit_square();
  auto a = zero_form(s);
  for (std::size_t e = 0; e < a.value.size(); ++e) a.value[e] = 0.5 * e - 1;
  const auto j = to_json(s, a);
  CHECK(j.at("edges").size() == s.edge_count());
  CHECK(one_form_from_json(s, j).value == a.value);
}

