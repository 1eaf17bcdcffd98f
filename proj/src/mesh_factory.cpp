#include "reeb/mesh_factory.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "reeb/errors.hpp"

namespace reeb::meshes {

namespace {

using Vec3 = std::array<double, 3>;

double flat_area(const std::vector<double>& a, const std::vector<double>& b,
                 const std::vector<double>& c) {
  if (a.size() == 2)
    return 0.5 * std::abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
  Vec3 u{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  Vec3 v{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  Vec3 w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  return 0.5 * std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
}

}  // namespace

PLSurface grid_surface(const Grid& g) {
  const int vx = g.periodic_x ? g.nx : g.nx + 1;
  const int vy = g.periodic_y ? g.ny : g.ny + 1;
  const double hx = (g.x1 - g.x0) / g.nx, hy = (g.y1 - g.y0) / g.ny;
  auto vid = [&](int i, int j) { return (j % vy) * vx + (i % vx); };

  std::vector<bool> used(vx * vy, false);
  std::vector<SurfaceTriangle> tris;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double cx = g.x0 + (i + 0.5) * hx, cy = g.y0 + (j + 0.5) * hy;
      bool removed = false;
      for (const auto& h : g.holes)
        if (cx > h[0] && cx < h[1] && cy > h[2] && cy < h[3]) removed = true;
      if (removed) continue;
      const int p00 = vid(i, j), p10 = vid(i + 1, j), p11 = vid(i + 1, j + 1),
                p01 = vid(i, j + 1);
      std::array<std::array<int, 3>, 2> cell;
      std::array<std::array<double, 2>, 2> centre;
      if ((i + j) % 2 == 0) {
        cell = {{{p00, p10, p11}, {p00, p11, p01}}};
        centre = {{{cx + hx / 6, cy - hy / 6}, {cx - hx / 6, cy + hy / 6}}};
      } else {
        cell = {{{p00, p10, p01}, {p10, p11, p01}}};
        centre = {{{cx - hx / 6, cy - hy / 6}, {cx + hx / 6, cy + hy / 6}}};
      }
      for (int k = 0; k < 2; ++k) {
        double a = 0.5 * hx * hy;
        if (g.density) a *= g.density(centre[k][0], centre[k][1]);
        tris.push_back({{cell[k][0], cell[k][1], cell[k][2]}, a});
        for (int c : cell[k]) used[c] = true;
      }
    }
  std::vector<SurfaceVertex> vs;
  for (int j = 0; j < vy; ++j)
    for (int i = 0; i < vx; ++i) {
      const int id = vid(i, j);
      if (!used[id]) continue;
      const double x = g.x0 + i * hx, y = g.y0 + j * hy;
      vs.push_back({id, g.f(x, y), {x, y}});
    }
  return PLSurface::build(std::move(vs), std::move(tris));
}

PLSurface unit_square(double f0, double f1, double f2, double f3) {
  std::vector<SurfaceVertex> vs{
      {0, f0, {0, 0}}, {1, f1, {1, 0}}, {2, f2, {1, 1}}, {3, f3, {0, 1}}};
  std::vector<SurfaceTriangle> ts{{{0, 1, 2}, 0.5}, {{0, 2, 3}, 0.5}};
  return PLSurface::build(std::move(vs), std::move(ts));
}

PLSurface polar_disk(int rings, const Field& f) {
  using std::numbers::pi;
  std::vector<SurfaceVertex> vs;
  std::vector<std::vector<int>> ring_ids;
  vs.push_back({0, f(0, 0), {0, 0}});
  ring_ids.push_back({0});
  int next = 1;
  for (int k = 1; k <= rings; ++k) {
    const double r = static_cast<double>(k) / rings;
    std::vector<int> ids;
    for (int m = 0; m < 6 * k; ++m) {
      const double t = 2 * pi * m / (6 * k);
      const double x = r * std::cos(t), y = r * std::sin(t);
      vs.push_back({next, f(x, y), {x, y}});
      ids.push_back(next++);
    }
    ring_ids.push_back(ids);
  }
  std::vector<SurfaceTriangle> ts;
  auto area_of = [&](int a, int b, int c) { return flat_area(vs[a].xy, vs[b].xy, vs[c].xy); };
  for (int m = 0; m < 6; ++m) {
    const int a = ring_ids[1][m], b = ring_ids[1][(m + 1) % 6];
    ts.push_back({{0, a, b}, area_of(0, a, b)});
  }
  // zip ring k-1 and ring k by angle
  for (int k = 2; k <= rings; ++k) {
    const auto& in = ring_ids[k - 1];
    const auto& out = ring_ids[k];
    const int ni = static_cast<int>(in.size()), no = static_cast<int>(out.size());
    int i = 0, o = 0;
    while (i < ni || o < no) {
      const double ti = static_cast<double>(i + 1) / ni, to = static_cast<double>(o + 1) / no;
      const int a = in[i % ni], b = out[o % no];
      if (o < no && (i >= ni || to <= ti)) {
        const int c = out[(o + 1) % no];
        ts.push_back({{a, b, c}, area_of(a, b, c)});
        ++o;
      } else {
        const int c = in[(i + 1) % ni];
        ts.push_back({{a, b, c}, area_of(a, b, c)});
        ++i;
      }
    }
  }
  return PLSurface::build(std::move(vs), std::move(ts));
}

namespace {

struct SphereMesh {
  std::vector<Vec3> p;
  std::vector<std::array<int, 3>> t;
};

SphereMesh base_icosahedron() {
  const double g = (1 + std::sqrt(5.0)) / 2;
  SphereMesh m;
  m.p = {{-1, g, 0}, {1, g, 0}, {-1, -g, 0}, {1, -g, 0}, {0, -1, g}, {0, 1, g},
         {0, -1, -g}, {0, 1, -g}, {g, 0, -1}, {g, 0, 1}, {-g, 0, -1}, {-g, 0, 1}};
  m.t = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
         {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
         {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (auto& q : m.p) {
    const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
    for (double& c : q) c /= n;
  }
  return m;
}

SphereMesh subdivide(const SphereMesh& m) {
  SphereMesh out;
  out.p = m.p;
  std::map<std::pair<int, int>, int> mid;
  auto midpoint = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto it = mid.find(key);
    if (it != mid.end()) return it->second;
    Vec3 q{};
    for (int k = 0; k < 3; ++k) q[k] = 0.5 * (m.p[a][k] + m.p[b][k]);
    const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
    for (double& c : q) c /= n;
    out.p.push_back(q);
    const int id = static_cast<int>(out.p.size()) - 1;
    mid.emplace(key, id);
    return id;
  };
  for (const auto& t : m.t) {
    const int a = midpoint(t[0], t[1]), b = midpoint(t[1], t[2]), c = midpoint(t[2], t[0]);
    out.t.push_back({t[0], a, c});
    out.t.push_back({t[1], b, a});
    out.t.push_back({t[2], c, b});
    out.t.push_back({a, b, c});
  }
  return out;
}

PLSurface sphere_surface(const SphereMesh& m) {
  std::vector<SurfaceVertex> vs;
  for (int i = 0; i < static_cast<int>(m.p.size()); ++i)
    vs.push_back({i, m.p[i][2], {m.p[i][0], m.p[i][1], m.p[i][2]}});
  std::vector<SurfaceTriangle> ts;
  for (const auto& t : m.t)
    ts.push_back({{t[0], t[1], t[2]}, flat_area(vs[t[0]].xy, vs[t[1]].xy, vs[t[2]].xy)});
  return PLSurface::build(std::move(vs), std::move(ts));
}

}  // namespace

PLSurface icosahedron() { return sphere_surface(base_icosahedron()); }

PLSurface icosphere(int subdivisions, std::mt19937_64* rng) {
  auto m = base_icosahedron();
  for (int i = 0; i < subdivisions; ++i) m = subdivide(m);
  if (rng) {
    // random rotation from a unit quaternion
    std::normal_distribution<double> n(0.0, 1.0);
    double q[4];
    double s = 0;
    for (double& c : q) {
      c = n(*rng);
      s += c * c;
    }
    s = std::sqrt(s);
    for (double& c : q) c /= s;
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    const double R[3][3] = {{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
                            {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
                            {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}};
    for (auto& p : m.p) {
      Vec3 r{};
      for (int i = 0; i < 3; ++i) r[i] = R[i][0] * p[0] + R[i][1] * p[1] + R[i][2] * p[2];
      p = r;
    }
  }
  return sphere_surface(m);
}

PLSurface standing_torus_with_hole(int n_theta, int n_phi) {
  using std::numbers::pi;
  const double R = 2.0, r = 1.0;
  Grid g;
  g.nx = n_theta;
  g.ny = n_phi;
  g.x0 = 0;
  g.x1 = 2 * pi;
  g.y0 = 0;
  g.y1 = 2 * pi;
  g.periodic_x = g.periodic_y = true;
  g.holes = {{0.55 * pi, 0.8 * pi, 0.3 * pi, 0.7 * pi}};
  g.f = [=](double t, double p) {
    return -(R + r * std::cos(p)) * std::cos(t) + 0.05 * r * std::sin(p) + 0.02 * std::sin(t);
  };
  g.density = [=](double, double p) { return r * (R + r * std::cos(p)); };
  return grid_surface(g);
}

PLSurface disk_with_two_holes(int n) {
  Grid g;
  g.nx = g.ny = n;
  g.x0 = 0;
  g.x1 = 1;
  g.y0 = 0;
  g.y1 = 1;
  g.holes = {{0.15, 0.4, 0.4, 0.75}, {0.6, 0.85, 0.2, 0.55}};
  g.f = [](double x, double y) { return y + 0.05 * x; };
  return grid_surface(g);
}

PLSurface flat_torus(int n) {
  using std::numbers::pi;
  Grid g;
  g.nx = g.ny = n;
  g.x0 = 0;
  g.x1 = 2 * pi;
  g.y0 = 0;
  g.y1 = 2 * pi;
  g.periodic_x = g.periodic_y = true;
  g.f = [](double x, double y) { return std::cos(x) + 0.6 * std::cos(y); };
  return grid_surface(g);
}

}  // namespace reeb::meshes
