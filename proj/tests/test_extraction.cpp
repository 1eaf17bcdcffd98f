#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "reeb/errors.hpp"
#include "reeb/extraction.hpp"
#include "reeb/graph_core.hpp"
#include "reeb/mesh_factory.hpp"

using namespace reeb;

namespace {

using Poly = std::vector<std::array<double, 3>>;  // (x, y, f) in reference coordinates

Poly clip(const Poly& p, double c, bool keep_above) {
  Poly out;
  const int n = static_cast<int>(p.size());
  for (int i = 0; i < n; ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % n];
    const bool ina = keep_above ? a[2] >= c : a[2] <= c;
    const bool inb = keep_above ? b[2] >= c : b[2] <= c;
    if (ina) out.push_back(a);
    if (ina != inb) {
      const double t = (c - a[2]) / (b[2] - a[2]);
      out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), c});
    }
  }
  return out;
}

// area of {a <= f <= b} in triangle t by polygon clipping
double slab_area(const PLSurface& s, int t, double a, double b) {
  const auto& c = s.triangle(t);
  Poly p{{0, 0, s.f(c[0])}, {1, 0, s.f(c[1])}, {0, 1, s.f(c[2])}};
  p = clip(clip(p, a, true), b, false);
  double twice = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& u = p[i];
    const auto& v = p[(i + 1) % p.size()];
    twice += u[0] * v[1] - v[0] * u[1];
  }
  return std::abs(twice) * s.area(t);  // reference triangle has area 1/2
}

// area of the component of f^-1[a, b] that contains triangle t0
double component_area(const PLSurface& s, double a, double b, int t0) {
  const int T = static_cast<int>(s.triangle_count());
  std::vector<int> parent(T);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int e = 0; e < static_cast<int>(s.edge_count()); ++e) {
    const auto& me = s.edge(e);
    if (me.tri_count < 2) continue;
    const double lo = std::min(s.f(me.a), s.f(me.b)), hi = std::max(s.f(me.a), s.f(me.b));
    if (lo < b && hi > a) parent[find(me.tri[0])] = find(me.tri[1]);
  }
  double area = 0;
  for (int t = 0; t < T; ++t)
    if (find(t) == find(t0)) area += slab_area(s, t, a, b);
  return area;
}

}  // namespace

TEST_CASE("level transitions") {
  auto c = classify_level_transition({0, 0, 0, 1, true});
  CHECK(c.first == VertexType::I);
  CHECK(c.second == Orientation::AsInTable);
  c = classify_level_transition({0, 2, 0, 1, true});
  CHECK(c.first == VertexType::II);
  CHECK(c.second == Orientation::AsInTable);
  c = classify_level_transition({1, 0, 0, 1, true});
  CHECK(c.first == VertexType::III);
  CHECK(c.second == Orientation::FReversed);
  c = classify_level_transition({0, 2, 0, 2, false});
  CHECK(c.first == VertexType::IV);
  c = classify_level_transition({1, 0, 2, 0, false});
  CHECK(c.first == VertexType::VI);
  CHECK(c.second == Orientation::FReversed);
  CHECK_THROWS_AS(classify_level_transition({2, 2, 0, 0, false}), UnclassifiableTransition);
  CHECK_THROWS_AS(classify_level_transition({0, 0, 0, 1, false}), UnclassifiableTransition);
}

TEST_CASE("clipped area closed form") {
  CHECK(clipped_area(2.0, 0, 1, 2, -1) == 0.0);
  CHECK(clipped_area(2.0, 0, 1, 2, 3) == 2.0);
  CHECK(clipped_area(2.0, 0, 1, 2, 1) == doctest::Approx(1.0));
  CHECK(clipped_area(1.0, 0, 0, 1, 0.5) == doctest::Approx(0.75));
}

TEST_CASE("disk with a linear field") {
  auto s = meshes::polar_disk(8, [](double x, double) { return x; });
  auto g = extract_reeb(s);
  REQUIRE(g.vertices.size() == 2);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.vertices[0].type == VertexType::I);
  CHECK(g.vertices[1].type == VertexType::I);
  CHECK(g.vertices[1].orientation == Orientation::FReversed);
  CHECK(g.edges[0].style == Style::Dashed);
  CHECK(g.edges[0].mass == doctest::Approx(s.total_area()).epsilon(1e-12));
  CHECK_NOTHROW(validate_graph(g));
}

TEST_CASE("sphere with the height") {
  auto s = meshes::icosphere(3);
  auto g = extract_reeb(s);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.vertices[0].type == VertexType::VII);
  CHECK(g.edges[0].style == Style::Solid);
  CHECK(sigma(g) == 0);
}

TEST_CASE("torus with one hole") {
  auto s = meshes::standing_torus_with_hole(48, 32);
  auto ex = extract(s, 32);
  const auto& g = ex.graph;
  CHECK_NOTHROW(validate_graph(g));
  REQUIRE(g.vertices.size() == 6);
  const VertexType types[] = {VertexType::VII, VertexType::VI, VertexType::III,
                              VertexType::V,   VertexType::III, VertexType::VII};
  const Orientation orients[] = {Orientation::AsInTable, Orientation::FReversed,
                                 Orientation::FReversed, Orientation::AsInTable,
                                 Orientation::AsInTable, Orientation::FReversed};
  for (int i = 0; i < 6; ++i) {
    CHECK(g.vertices[i].type == types[i]);
    CHECK(g.vertices[i].orientation == orients[i]);
  }
  std::set<std::tuple<VertexId, VertexId, Style>> edges;
  for (const auto& e : g.edges) edges.insert({e.tail, e.head, e.style});
  std::set<std::tuple<VertexId, VertexId, Style>> expected{
      {0, 1, Style::Solid}, {1, 3, Style::Solid},  {1, 2, Style::Solid},
      {2, 3, Style::Dashed}, {3, 4, Style::Dashed}, {4, 5, Style::Solid}};
  CHECK(edges == expected);
  CHECK(sigma(g) == 1);
  CHECK(std::abs(g.total_mass() - s.total_area()) <= 1e-9 * s.total_area());
  CHECK(g.vertices.size() == validate_simple_morse(s).critical_points.size());
}

TEST_CASE("disk with two holes") {
  auto s = meshes::disk_with_two_holes(40);
  auto g = extract_reeb(s, 16);
  CHECK_NOTHROW(validate_graph(g));
  CHECK(g.vertices.size() == 6);
  CHECK(g.edges.size() == 7);
  CHECK(sigma(g) == 3);
  for (const auto& e : g.edges) CHECK(e.style == Style::Dashed);
  REQUIRE(g.cyclic_orders.size() == 4);
  // B splits, C splits the left branch, D and E merge
  CHECK(g.cyclic_orders.at(1) == std::vector<int>{1, 3, 2});
  CHECK(g.cyclic_orders.at(2) == std::vector<int>{2, 4, 5});
}

TEST_CASE("cyclic order on the mirrored disk") {
  // mirror x -> -x reverses the orientation of the surface
  auto s = meshes::disk_with_two_holes(40);
  auto vs = s.vertices();
  auto ts = s.triangles();
  for (auto& t : ts) std::swap(t.v[1], t.v[2]);
  auto m = PLSurface::build(vs, ts);
  auto g = extract_reeb(s, 8);
  auto h = extract_reeb(m, 8);
  for (const auto& [v, order] : g.cyclic_orders) {
    auto rev = order;
    std::reverse(rev.begin(), rev.end());
    std::rotate(rev.begin(), std::min_element(rev.begin(), rev.end()), rev.end());
    CHECK(h.cyclic_orders.at(v) == rev);
  }
  CHECK(sigma(h) == 3);
}

TEST_CASE("flat torus") {
  auto s = meshes::flat_torus(24);
  auto g = extract_reeb(s);
  CHECK(g.vertices.size() == 4);
  CHECK(g.edges.size() == 4);
  CHECK(homology_dims(g).h1_gamma == 1);
  CHECK(g.vertices[1].type == VertexType::VI);
}

TEST_CASE("profile increments against polygon clipping") {
  for (const auto& s : {meshes::standing_torus_with_hole(36, 24), meshes::disk_with_two_holes(30),
                        meshes::flat_torus(20)}) {
    auto ex = extract(s, 16);
    const auto& g = ex.graph;
    for (const auto& e : g.edges) {
      const auto& p = e.profile;
      for (auto [k1, k2] : {std::pair{1, 15}, std::pair{3, 7}, std::pair{8, 13}}) {
        const double a = p.grid(k1), b = p.grid(k2);
        const double mid = 0.5 * (a + b) + 1e-7 * (b - a);
        int t0 = -1;
        for (int t = 0; t < static_cast<int>(s.triangle_count()) && t0 < 0; ++t) {
          const auto& c = s.triangle(t);
          const double lo = std::min({s.f(c[0]), s.f(c[1]), s.f(c[2])});
          const double hi = std::max({s.f(c[0]), s.f(c[1]), s.f(c[2])});
          if (lo < mid && hi > mid && ex.edge_at(t, mid) == e.id) t0 = t;
        }
        REQUIRE(t0 >= 0);
        const double oracle = component_area(s, a, b, t0);
        const double got = p.cumulative[k2] - p.cumulative[k1];
        CHECK(std::abs(got - oracle) <= 1e-9 * oracle);
      }
      for (int k = 0; k < p.samples(); ++k) CHECK(p.cumulative[k + 1] > p.cumulative[k]);
    }
  }
}

TEST_CASE("level tracing") {
  auto sphere = meshes::icosphere(2);
  int t = 0;
  while (true) {
    const auto& c = sphere.triangle(t);
    const double lo = std::min({sphere.f(c[0]), sphere.f(c[1]), sphere.f(c[2])});
    const double hi = std::max({sphere.f(c[0]), sphere.f(c[1]), sphere.f(c[2])});
    if (lo < 0.123 && hi > 0.123) break;
    ++t;
  }
  auto curve = trace_level(sphere, 0.123, t);
  CHECK(curve.closed);
  CHECK(curve.points.size() == curve.triangles.size());

  auto disk = meshes::polar_disk(6, [](double x, double y) { return x + 0.1 * y; });
  for (t = 0;; ++t) {
    const auto& c = disk.triangle(t);
    const double lo = std::min({disk.f(c[0]), disk.f(c[1]), disk.f(c[2])});
    const double hi = std::max({disk.f(c[0]), disk.f(c[1]), disk.f(c[2])});
    if (lo < 0.0501 && hi > 0.0501) break;
  }
  auto open = trace_level(disk, 0.0501, t);
  CHECK_FALSE(open.closed);
  CHECK(open.points.size() == open.triangles.size() + 1);
  CHECK(disk.edge(open.points.front().edge).boundary());
  CHECK(disk.edge(open.points.back().edge).boundary());
  CHECK_THROWS_AS(trace_level(disk, disk.f(disk.triangle(t)[0]), t), LevelOnVertex);
}

TEST_CASE("extraction refuses degenerate fields") {
  std::vector<SurfaceVertex> vs{{0, 0.0, {0, 0}}};
  for (int i = 0; i < 6; ++i) vs.push_back({i + 1, i % 2 ? -1.0 - i : 1.0 + i, {}});
  std::vector<SurfaceTriangle> ts;
  for (int i = 0; i < 6; ++i) ts.push_back({{0, i + 1, (i + 1) % 6 + 1}, 1.0});
  auto s = PLSurface::build(vs, ts);
  CHECK_THROWS_AS(extract_reeb(s), NotSimpleMorse);
}

TEST_CASE("relabeling and refinement keep the graph shape") {
  auto s = meshes::standing_torus_with_hole(30, 20);
  auto g = extract_reeb(s, 8);
  std::mt19937_64 rng(3);
  for (const auto& t : {remap(s, random_relabel(s, rng)), remap(s, BarycentricRefine{})}) {
    auto h = extract_reeb(t, 8);
    REQUIRE(h.edges.size() == g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      CHECK(h.edges[i].mass == doctest::Approx(g.edges[i].mass).epsilon(1e-9));
      CHECK(h.edges[i].style == g.edges[i].style);
    }
  }
}
