#include "reeb/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <thread>

#include <Eigen/Dense>

#include "reeb/circulation.hpp"
#include "reeb/equivalence.hpp"
#include "reeb/errors.hpp"
#include "reeb/extraction.hpp"
#include "reeb/graph_core.hpp"
#include "reeb/mesh_factory.hpp"
#include "reeb/realization.hpp"

namespace reeb::fuzz {

namespace {

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}
int uniform_int(std::mt19937_64& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

// consumed (dashed, solid) and produced (dashed, solid) level components
struct Event {
  VertexType type;
  Orientation orientation;
  int cd, cs, pd, ps;
};

constexpr auto A = Orientation::AsInTable;
constexpr auto R = Orientation::FReversed;

const std::vector<Event>& events() {
  static const std::vector<Event> all = {
      {VertexType::I, A, 0, 0, 1, 0},   {VertexType::I, R, 1, 0, 0, 0},   {VertexType::II, A, 2, 0, 1, 0},
      {VertexType::II, R, 1, 0, 2, 0},  {VertexType::III, A, 1, 0, 0, 1}, {VertexType::III, R, 0, 1, 1, 0},
      {VertexType::IV, A, 2, 0, 2, 0},  {VertexType::V, A, 1, 1, 1, 0},   {VertexType::V, R, 1, 0, 1, 1},
      {VertexType::VI, A, 0, 2, 0, 1},  {VertexType::VI, R, 0, 1, 0, 2},  {VertexType::VII, A, 0, 0, 0, 1},
      {VertexType::VII, R, 0, 1, 0, 0},
  };
  return all;
}

struct Pending {
  int edge_id;
  VertexId tail;
  Style style;
};

std::optional<MeasuredReebGraph> try_graph(std::mt19937_64& rng, const GraphOptions& o) {
  MeasuredReebGraph g;
  std::vector<Pending> active;
  std::vector<int> uf;  // union-find over vertices
  std::function<int(int)> root = [&](int x) { return uf[x] == x ? x : uf[x] = root(uf[x]); };
  int next_edge = 1;
  double f = 0.0;
  std::map<int, Pending> closed;  // edge id -> pending it came from
  std::map<int, VertexId> heads;

  auto apply = [&](const Event& ev, std::vector<int> take) {
    f += uniform(rng, 0.5, 1.5);
    const VertexId v = static_cast<VertexId>(g.vertices.size());
    g.vertices.push_back({v, f, ev.type, ev.orientation});
    uf.push_back(static_cast<int>(v));
    std::vector<int> below, above;
    std::sort(take.rbegin(), take.rend());
    for (int i : take) {
      const auto p = active[i];
      active.erase(active.begin() + i);
      closed[p.edge_id] = p;
      heads[p.edge_id] = v;
      uf[root(static_cast<int>(p.tail))] = root(static_cast<int>(v));
      below.push_back(p.edge_id);
    }
    for (int k = 0; k < ev.pd + ev.ps; ++k) {
      active.push_back({next_edge, v, k < ev.pd ? Style::Dashed : Style::Solid});
      above.push_back(next_edge++);
    }
    if (ev.type == VertexType::II) {
      std::vector<int> ids = below;
      ids.insert(ids.end(), above.begin(), above.end());
      std::shuffle(ids.begin(), ids.end(), rng);
      g.cyclic_orders[v] = ids;
    } else if (ev.type == VertexType::IV) {
      if (uniform_int(rng, 0, 1)) std::swap(above[0], above[1]);
      g.cyclic_orders[v] = {below[0], above[0], below[1], above[1]};
    }
  };

  auto pick = [&](Style s, int count, std::vector<int>& out) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(active.size()); ++i)
      if (active[i].style == s && std::find(out.begin(), out.end(), i) == out.end()) idx.push_back(i);
    if (static_cast<int>(idx.size()) < count) return false;
    std::shuffle(idx.begin(), idx.end(), rng);
    out.insert(out.end(), idx.begin(), idx.begin() + count);
    return true;
  };
  auto allowed = [&](const Event& ev) {
    if (!o.allow_dashed && (ev.cd || ev.pd)) return false;
    if (!o.allow_solid && (ev.cs || ev.ps)) return false;
    return true;
  };

  const int n = uniform_int(rng, o.min_events, o.max_events);
  for (int step = 0; step < n; ++step) {
    std::vector<std::pair<const Event*, std::vector<int>>> options;
    for (const auto& ev : events()) {
      if (!allowed(ev)) continue;
      std::vector<int> take;
      if (!pick(Style::Dashed, ev.cd, take) || !pick(Style::Solid, ev.cs, take)) continue;
      const bool death = ev.pd + ev.ps == 0;
      if (death) {
        // keep every started graph component reachable from the active set
        const int r = root(static_cast<int>(active[take[0]].tail));
        int same = 0;
        for (const auto& p : active) same += root(static_cast<int>(p.tail)) == r;
        if (same < 2) continue;
      }
      if (!active.empty() && ev.cd + ev.cs == 0 && step > 0 && uniform_int(rng, 0, 2)) continue;
      options.emplace_back(&ev, take);
    }
    if (options.empty()) break;
    const auto& [ev, take] = options[uniform_int(rng, 0, static_cast<int>(options.size()) - 1)];
    apply(*ev, take);
  }
  if (active.empty()) {
    std::vector<const Event*> births;
    for (const auto& ev : events())
      if (allowed(ev) && ev.cd + ev.cs == 0) births.push_back(&ev);
    apply(*births[uniform_int(rng, 0, static_cast<int>(births.size()) - 1)], {});
  }
  while (!active.empty()) {
    if (active.size() == 1) {
      apply(events()[active[0].style == Style::Dashed ? 1 : 12], {0});
      continue;
    }
    std::vector<int> two{0, 1};
    std::shuffle(active.begin(), active.end(), rng);
    const bool d0 = active[0].style == Style::Dashed, d1 = active[1].style == Style::Dashed;
    if (d0 && d1) apply(events()[2], two);
    else if (!d0 && !d1) apply(events()[9], two);
    else apply(events()[7], d0 ? std::vector<int>{1, 0} : two);
  }

  for (const auto& [id, p] : closed) {
    GraphEdge e;
    e.id = id;
    e.tail = p.tail;
    e.head = heads.at(id);
    e.style = p.style;
    e.profile.f_lo = g.vertices[e.tail].f;
    e.profile.f_hi = g.vertices[e.head].f;
    const double mass = uniform(rng, 0.5, 2.0);
    std::vector<double> w(o.samples);
    for (auto& x : w) x = uniform(rng, 0.5, 1.5);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    e.profile.cumulative.assign(1, 0.0);
    for (double x : w) e.profile.cumulative.push_back(e.profile.cumulative.back() + mass * x / total);
    e.profile.cumulative.back() = mass;
    e.mass = mass;
    g.edges.push_back(std::move(e));
  }
  if (o.require_dashed &&
      std::none_of(g.edges.begin(), g.edges.end(), [](const auto& e) { return e.style == Style::Dashed; }))
    return std::nullopt;
  const bool all_solid =
      std::all_of(g.edges.begin(), g.edges.end(), [](const auto& e) { return e.style == Style::Solid; });
  if (all_solid && uniform(rng, 0.0, 1.0) < o.zero_moment_probability) {
    double moment = 0.0;
    for (const auto& e : g.edges) moment += e.profile.moment();
    const double shift = -moment / g.total_mass();
    for (auto& v : g.vertices) v.f += shift;
    for (auto& e : g.edges) {
      e.profile.f_lo += shift;
      e.profile.f_hi += shift;
    }
  }
  try {
    validate_graph(g);
  } catch (const InvalidGraph&) {
    return std::nullopt;
  }
  return g;
}

std::vector<std::array<double, 4>> random_holes(std::mt19937_64& rng, int n, double x0, double h, bool margin) {
  std::vector<std::array<int, 4>> cells;
  const int want = uniform_int(rng, 0, 2);
  const int lo = margin ? 2 : 0;
  for (int tries = 0; tries < 20 && static_cast<int>(cells.size()) < want; ++tries) {
    const int w = uniform_int(rng, 2, std::max(2, n / 4)), hgt = uniform_int(rng, 2, std::max(2, n / 4));
    const int i0 = uniform_int(rng, lo, n - lo - w), j0 = uniform_int(rng, lo, n - lo - hgt);
    std::array<int, 4> c{i0, i0 + w, j0, j0 + hgt};
    bool clear = true;
    for (const auto& d : cells)
      if (c[0] < d[1] + 2 && d[0] < c[1] + 2 && c[2] < d[3] + 2 && d[2] < c[3] + 2) clear = false;
    if (!margin && (c[1] >= n - 1 || c[3] >= n - 1)) clear = false;
    if (clear) cells.push_back(c);
  }
  std::vector<std::array<double, 4>> boxes;
  for (const auto& c : cells) boxes.push_back({x0 + c[0] * h, x0 + c[1] * h, x0 + c[2] * h, x0 + c[3] * h});
  return boxes;
}

PLSurface planar(std::mt19937_64& rng) {
  meshes::Grid g;
  g.nx = g.ny = uniform_int(rng, 14, 22);
  g.holes = random_holes(rng, g.nx, 0.0, 1.0 / g.nx, true);
  const double a = uniform(rng, -1, 1), b = uniform(rng, -1, 1);
  std::vector<std::array<double, 4>> bumps(uniform_int(rng, 0, 3));
  for (auto& p : bumps) p = {uniform(rng, 0, 1), uniform(rng, 0, 1), uniform(rng, -1, 1), uniform(rng, 0.12, 0.3)};
  g.f = [=](double x, double y) {
    double v = a * x + b * y;
    for (const auto& p : bumps) v += p[2] * std::exp(-((x - p[0]) * (x - p[0]) + (y - p[1]) * (y - p[1])) / (p[3] * p[3]));
    return v;
  };
  const double k = uniform(rng, 0.0, 0.4), ph = uniform(rng, 0, 6);
  g.density = [=](double x, double y) { return 1.0 + k * std::sin(3 * x + ph) * std::cos(2 * y); };
  return meshes::grid_surface(g);
}

PLSurface torus(std::mt19937_64& rng) {
  using std::numbers::pi;
  meshes::Grid g;
  g.nx = g.ny = uniform_int(rng, 14, 20);
  g.x0 = g.y0 = 0;
  g.x1 = g.y1 = 2 * pi;
  g.periodic_x = g.periodic_y = true;
  g.holes = random_holes(rng, g.nx, 0.0, 2 * pi / g.nx, false);
  std::vector<std::array<double, 4>> waves(uniform_int(rng, 2, 4));
  for (auto& w : waves) {
    int k = 0, l = 0;
    while (k == 0 && l == 0) {
      k = uniform_int(rng, -1, 1);
      l = uniform_int(rng, 0, 2);
    }
    w = {static_cast<double>(k), static_cast<double>(l), uniform(rng, -1, 1), uniform(rng, 0, 2 * pi)};
  }
  g.f = [=](double x, double y) {
    double v = 0.0;
    for (const auto& w : waves) v += w[2] * std::cos(w[0] * x + w[1] * y + w[3]);
    return v;
  };
  const double k = uniform(rng, 0.0, 0.4);
  g.density = [=](double x, double y) { return 1.0 + k * std::sin(x) * std::cos(y); };
  return meshes::grid_surface(g);
}

}  // namespace

MeasuredReebGraph random_graph(std::mt19937_64& rng, const GraphOptions& o) {
  for (int tries = 0; tries < 1000; ++tries)
    if (auto g = try_graph(rng, o)) return *g;
  throw DataError("could not draw a graph with the requested options");
}

PLSurface random_surface(std::mt19937_64& rng, const SurfaceOptions& o) {
  for (int tries = 0; tries < 200; ++tries) {
    const auto kind = o.kinds[uniform_int(rng, 0, static_cast<int>(o.kinds.size()) - 1)];
    try {
      PLSurface s;
      if (kind == SurfaceKind::Planar) {
        s = planar(rng);
      } else if (kind == SurfaceKind::Torus) {
        s = torus(rng);
      } else {
        GraphOptions go;
        go.samples = 8;
        go.max_events = 6;
        go.require_dashed = o.require_boundary;
        s = realize(random_graph(rng, go), 4).surface;
      }
      if (o.require_boundary && s.boundary_loops().empty()) continue;
      const auto report = validate_simple_morse(s);
      if (!report.is_simple_morse) continue;
      // keep critical values apart well beyond the matching tolerance
      const auto& cp = report.critical_points;
      const double range = cp.back().f - cp.front().f;
      bool separated = true;
      for (std::size_t i = 1; i < cp.size(); ++i) separated &= cp[i].f - cp[i - 1].f > 1e-6 * range;
      if (separated) return s;
    } catch (const Error&) {
    }
  }
  throw DataError("could not draw a simple Morse surface");
}

MeasuredReebGraph permuted(const MeasuredReebGraph& g, std::mt19937_64& rng) {
  std::vector<VertexId> vids;
  for (const auto& v : g.vertices) vids.push_back(v.id + 100);
  std::vector<int> eids;
  for (const auto& e : g.edges) eids.push_back(e.id + 100);
  std::shuffle(vids.begin(), vids.end(), rng);
  std::shuffle(eids.begin(), eids.end(), rng);
  std::map<VertexId, VertexId> vm;
  std::map<int, int> em;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) vm[g.vertices[i].id] = vids[i];
  for (std::size_t i = 0; i < g.edges.size(); ++i) em[g.edges[i].id] = eids[i];
  MeasuredReebGraph out = g;
  for (auto& v : out.vertices) v.id = vm.at(v.id);
  for (auto& e : out.edges) {
    e.id = em.at(e.id);
    e.tail = vm.at(e.tail);
    e.head = vm.at(e.head);
  }
  std::shuffle(out.vertices.begin(), out.vertices.end(), rng);
  std::shuffle(out.edges.begin(), out.edges.end(), rng);
  out.cyclic_orders.clear();
  for (const auto& [v, order] : g.cyclic_orders) {
    std::vector<int> o;
    for (int id : order) o.push_back(em.at(id));
    std::rotate(o.begin(), o.begin() + uniform_int(rng, 0, static_cast<int>(o.size()) - 1), o.end());
    out.cyclic_orders[vm.at(v)] = o;
  }
  return out;
}

int thread_budget() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("REEB_ORBIT_THREADS")) {
    const int k = std::atoi(env);
    if (k > 0) n = k;
  }
  return std::max(1, n);
}

// ---------------------------------------------------------------------------
// Suites

namespace {

using Outcome = std::optional<std::string>;  // failure detail

bool rel_close(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

Outcome remark_identity(std::mt19937_64& rng) {
  GraphOptions o;
  o.require_dashed = true;
  const auto g = random_graph(rng, o);
  const auto h = homology_dims(g);
  if (h.h1_rel + h.h1_dashed == h.h1_gamma - h.h0_dashed + 1) return std::nullopt;
  return "h1_rel " + std::to_string(h.h1_rel) + " + h1_dashed " + std::to_string(h.h1_dashed) + " != h1_gamma " +
         std::to_string(h.h1_gamma) + " - h0_dashed " + std::to_string(h.h0_dashed) + " + 1";
}

Outcome sigma_boundary(std::mt19937_64& rng) {
  const auto s = random_surface(rng);
  const int sg = sigma(extract_reeb(s, 16));
  const int b = topology_summary(s).boundary_component_count;
  if (sg == b) return std::nullopt;
  return "sigma " + std::to_string(sg) + " vs " + std::to_string(b) + " boundary components";
}

Outcome remap_invariance(std::mt19937_64& rng) {
  const auto s = random_surface(rng);
  const auto g = extract_reeb(s, 16);
  MatchTolerances tol;
  tol.tol_mass = 1e-6;
  std::vector<std::pair<std::string, MapSpec>> maps = {
      {"relabel", random_relabel(s, rng)}, {"shear", Shear{0.3}}, {"refine", BarycentricRefine{}}};
  for (const auto& [name, spec] : maps) {
    PLSurface r;
    try {
      r = remap(s, spec);
    } catch (const UnsupportedMap&) {
      continue;
    }
    const auto m = match_measured(g, extract_reeb(r, 16), tol);
    if (!m.isomorphic()) return name + ": " + to_string(m.obstruction->kind) + " " + m.obstruction->detail;
  }
  return std::nullopt;
}

Outcome realize_roundtrip(std::mt19937_64& rng) {
  const auto g = random_graph(rng);
  const auto r = realize(g, 8);
  MatchTolerances tol;
  tol.tol_mass = 1e-6;
  const auto m = match_measured(g, extract_reeb(r.surface, g.edges[0].profile.samples()), tol);
  if (!m.isomorphic()) return "round trip: " + to_string(m.obstruction->kind) + " " + m.obstruction->detail;
  const auto t = topology_summary(r.surface);
  if (t.boundary_component_count != sigma(g))
    return "boundary " + std::to_string(t.boundary_component_count) + " vs sigma " + std::to_string(sigma(g));
  if (t.genus != genus(g)) return "genus " + std::to_string(t.genus) + " vs " + std::to_string(genus(g));
  if (!rel_close(t.total_area, g.total_mass(), 1e-9)) return "area differs from total mass";
  return std::nullopt;
}

Outcome circulation_existence(std::mt19937_64& rng) {
  GraphOptions o;
  const int mode = uniform_int(rng, 0, 2);
  if (mode == 0) {
    o.allow_dashed = false;
    o.zero_moment_probability = 0.5;
  }
  const auto g = random_graph(rng, o);
  bool has_dashed = false;
  double moment = 0.0;
  for (const auto& e : g.edges) {
    has_dashed |= e.style == Style::Dashed;
    moment += edge_moment(g, e.id);
  }
  const bool predicate = has_dashed || std::abs(moment) <= 1e-9 * g.total_mass() * g.f_range();
  try {
    const auto sol = solve_circulations(g);
    if (!predicate) return std::string("solved although the total moment is ") + std::to_string(moment);
    const int h1_rel = homology_dims(g).h1_rel;
    if (static_cast<int>(sol.basis.size()) != h1_rel)
      return "basis size " + std::to_string(sol.basis.size()) + " vs h1_rel " + std::to_string(h1_rel);
    if (!check_circulation(g, sol.particular).ok) return std::string("particular solution fails its check");
  } catch (const NoSolution& e) {
    if (predicate) return std::string("no solution although the predicate holds: ") + e.what();
  }
  return std::nullopt;
}

AugmentedCirculationGraph augmented(const PLSurface& s, const DiscreteOneForm& a, const Extraction& ex) {
  return {ex.graph, circulation_of_form(s, a, ex), xi_class(s, a, ex)};
}

Outcome synthesis_roundtrip(std::mt19937_64& rng) {
  SurfaceOptions so;
  so.require_boundary = true;
  // the lift of the dashed graph needs a mesh that separates critical levels
  PLSurface s;
  Extraction ex;
  for (int tries = 0;; ++tries) {
    s = random_surface(rng, so);
    ex = extract(s, 32);
    try {
      lift_dashed_graph(s, ex);
      break;
    } catch (const DataError&) {
      if (tries == 50) throw;
    }
  }
  const auto& g = ex.graph;
  const auto sol = solve_circulations(g);
  auto target = sol.particular;
  for (const auto& b : sol.basis) {
    const double k = uniform(rng, -2, 2);
    for (const auto& [id, lim] : b.limits) {
      target.limits[id].first += k * lim.first;
      target.limits[id].second += k * lim.second;
    }
  }
  XiClass xi;
  xi.basis = dashed_cycle_basis(g);
  for (std::size_t i = 0; i < xi.basis.size(); ++i) xi.coords.push_back(uniform(rng, -2, 2));

  const auto a = synthesize_form(s, ex, target, xi);
  const auto got = augmented(s, a, ex);
  for (const auto& [id, lim] : target.limits) {
    const auto& l = got.circulation.limits.at(id);
    if (!rel_close(l.first, lim.first, 1e-6) || !rel_close(l.second, lim.second, 1e-6))
      return "circulation of edge " + std::to_string(id) + " not reproduced";
  }
  for (std::size_t i = 0; i < xi.coords.size(); ++i)
    if (!rel_close(got.xi.coords[i], xi.coords[i], 1e-6)) return "xi coordinate " + std::to_string(i) + " not reproduced";

  std::vector<double> phi(s.vertex_count());
  for (auto& x : phi) x = uniform(rng, -1, 1);
  const auto shifted = augmented(s, a + exact_form(s, phi), ex);
  for (const auto& [id, lim] : got.circulation.limits) {
    const auto& l = shifted.circulation.limits.at(id);
    if (!rel_close(l.first, lim.first, 1e-12) || !rel_close(l.second, lim.second, 1e-12))
      return "exact cochain changed the circulation of edge " + std::to_string(id);
  }
  for (std::size_t i = 0; i < got.xi.coords.size(); ++i)
    if (!rel_close(shifted.xi.coords[i], got.xi.coords[i], 1e-12)) return "exact cochain changed xi";
  if (!match_augmented(got, shifted).isomorphic()) return std::string("exact cochain changed the orbit");

  if (xi.basis.empty()) return std::nullopt;
  // closed cochain keeping C and moving xi
  const auto H = closed_cochain_basis(s);
  std::vector<int> solid;
  for (const auto& e : g.edges)
    if (e.style == Style::Solid) solid.push_back(e.id);
  Eigen::MatrixXd M(static_cast<Eigen::Index>(solid.size()), static_cast<Eigen::Index>(H.size()));
  Eigen::MatrixXd X(static_cast<Eigen::Index>(xi.basis.size()), static_cast<Eigen::Index>(H.size()));
  for (std::size_t k = 0; k < H.size(); ++k) {
    for (std::size_t i = 0; i < solid.size(); ++i)
      M(i, k) = circulation_from_form(s, H[k], ex, solid[i], reference_level(s, g, solid[i]));
    const auto x = xi_class(s, H[k], ex);
    for (std::size_t j = 0; j < x.coords.size(); ++j) X(j, k) = x.coords[j];
  }
  Eigen::MatrixXd N = Eigen::MatrixXd::Identity(X.cols(), X.cols());
  if (!solid.empty()) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = 1e-9 * std::max(1.0, sv.size() ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cut) ++rank;
    N = svd.matrixV().rightCols(M.cols() - rank);
  }
  const Eigen::MatrixXd XN = X * N;
  Eigen::Index j = 0, c = 0;
  if (N.cols() == 0 || XN.cwiseAbs().maxCoeff(&j, &c) < 1e-9)
    return std::string("no closed cochain moves xi while fixing C");
  const Eigen::VectorXd z = N.col(c) / XN(j, c);
  DiscreteOneForm h = zero_form(s);
  for (std::size_t k = 0; k < H.size(); ++k) h = h + H[k] * z(static_cast<Eigen::Index>(k));
  const auto moved = match_augmented(got, augmented(s, a + h, ex));
  if (!moved.obstruction || moved.obstruction->kind != ObstructionKind::XI)
    return "closed perturbation reported " + (moved.obstruction ? to_string(moved.obstruction->kind) : std::string("isomorphic"));
  return std::nullopt;
}

Outcome measure_conservation(std::mt19937_64& rng) {
  const auto s = random_surface(rng);
  const auto g = extract_reeb(s, 16);
  if (std::abs(g.total_mass() - s.total_area()) <= 1e-9 * s.total_area()) return std::nullopt;
  return "mass " + std::to_string(g.total_mass()) + " vs area " + std::to_string(s.total_area());
}

Outcome match_properties(std::mt19937_64& rng) {
  const auto g = random_graph(rng);
  if (!match_measured(g, g).isomorphic()) return std::string("not reflexive");
  auto h = g;
  h.edges[uniform_int(rng, 0, static_cast<int>(h.edges.size()) - 1)].profile.cumulative.back() *= 1.01;
  for (auto& e : h.edges) e.mass = e.profile.mass();
  const auto gh = match_measured(g, h), hg = match_measured(h, g);
  if (gh.isomorphic() != hg.isomorphic() ||
      (gh.obstruction && gh.obstruction->kind != hg.obstruction->kind))
    return std::string("not symmetric");
  const auto b = permuted(g, rng), c = permuted(b, rng);
  if (!match_measured(g, b).isomorphic() || !match_measured(b, c).isomorphic())
    return std::string("renumbered copy not isomorphic");
  if (!match_measured(g, c).isomorphic()) return std::string("not transitive");
  const auto again = match_measured(g, h);
  if (again.isomorphic() != gh.isomorphic() || (again.obstruction && again.obstruction->kind != gh.obstruction->kind))
    return std::string("not deterministic");
  return std::nullopt;
}

const std::map<std::string, std::function<Outcome(std::mt19937_64&)>>& suites() {
  static const std::map<std::string, std::function<Outcome(std::mt19937_64&)>> all = {
      {"remark_identity", remark_identity},
      {"sigma_boundary", sigma_boundary},
      {"remap_invariance", remap_invariance},
      {"realize_roundtrip", realize_roundtrip},
      {"circulation_existence", circulation_existence},
      {"synthesis_roundtrip", synthesis_roundtrip},
      {"measure_conservation", measure_conservation},
      {"match_properties", match_properties},
  };
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : suites()) out.push_back(name);
  return out;
}

SuiteResult run_suite(const std::string& name, int cases, std::uint64_t seed, int threads) {
  const auto it = suites().find(name);
  if (it == suites().end()) throw DataError("unknown fuzz suite " + name);
  if (threads <= 0) threads = thread_budget();
  std::vector<Outcome> outcomes(std::max(0, cases));
  std::uint32_t tag = 2166136261u;  // FNV-1a of the suite name
  for (unsigned char ch : name) tag = (tag ^ ch) * 16777619u;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < cases; i = next++) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      try {
        outcomes[i] = it->second(rng);
      } catch (const std::exception& e) {
        outcomes[i] = std::string("exception: ") + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min(threads, cases); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SuiteResult r;
  r.name = name;
  for (int i = 0; i < cases; ++i) {
    if (!outcomes[i]) {
      ++r.passed;
    } else {
      ++r.failed;
      r.failures.push_back("case " + std::to_string(i) + ": " + *outcomes[i]);
    }
  }
  return r;
}

}  // namespace reeb::fuzz
