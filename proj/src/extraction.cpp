#include "reeb/extraction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "reeb/errors.hpp"

namespace reeb {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::pair<VertexType, Orientation> classify_level_transition(const LevelTransition& t) {
  const Incidence seen{t.below_circles, t.below_segments, t.above_circles, t.above_segments};
  for (int k = 1; k <= 7; ++k) {
    const auto type = static_cast<VertexType>(k);
    const bool boundary_type = k <= 3;
    for (auto o : {Orientation::AsInTable, Orientation::FReversed}) {
      if (type == VertexType::IV && o == Orientation::FReversed) continue;
      if (expected_incidence(type, o) == seen) {
        if (boundary_type != t.on_boundary)
          throw UnclassifiableTransition("transition matches type " + to_string(type) +
                                         " but the critical point is " +
                                         (t.on_boundary ? "on" : "off") + " the boundary");
        return {type, o};
      }
    }
  }
  throw UnclassifiableTransition(
      "no vertex type for transition (" + std::to_string(t.below_circles) + " circles, " +
      std::to_string(t.below_segments) + " segments) -> (" + std::to_string(t.above_circles) +
      " circles, " + std::to_string(t.above_segments) + " segments)");
}

double clipped_area(double A, double f0, double f1, double f2, double c) {
  if (f0 > f1) std::swap(f0, f1);
  if (f1 > f2) std::swap(f1, f2);
  if (f0 > f1) std::swap(f0, f1);
  if (c <= f0) return 0.0;
  if (c >= f2) return A;
  if (c <= f1) return A * (c - f0) * (c - f0) / ((f1 - f0) * (f2 - f0));
  return A * (1.0 - (f2 - c) * (f2 - c) / ((f2 - f0) * (f2 - f1)));
}

int Extraction::slab_of(double c) const {
  const auto& v = graph.vertices;
  // graph vertices are sorted by f
  auto it = std::upper_bound(v.begin(), v.end(), c,
                             [](double x, const GraphVertex& g) { return x < g.f; });
  if (it == v.begin() || it == v.end()) return -1;
  const int j = static_cast<int>(it - v.begin()) - 1;
  if (v[j].f == c) return -1;
  return j;
}

int Extraction::edge_at(int t, double c) const {
  const int j = slab_of(c);
  if (j < 0) return 0;
  auto it = slab_edges[j].find(t);
  return it == slab_edges[j].end() ? 0 : it->second;
}

std::vector<int> critical_component_edges(const PLSurface& s, int v) {
  const int level = s.rank(v);
  auto crossing = [&](int e) {
    const int a = s.rank(s.edge(e).a), b = s.rank(s.edge(e).b);
    return std::min(a, b) < level && std::max(a, b) > level;
  };
  std::vector<int> stack, out;
  std::set<int> seen;
  for (int t : s.star(v))
    for (int k = 0; k < 3; ++k) {
      const int e = s.triangle_edge(t, k);
      if (crossing(e) && seen.insert(e).second) stack.push_back(e);
    }
  while (!stack.empty()) {
    const int e = stack.back();
    stack.pop_back();
    out.push_back(e);
    const auto& me = s.edge(e);
    for (int i = 0; i < me.tri_count; ++i)
      for (int k = 0; k < 3; ++k) {
        const int e2 = s.triangle_edge(me.tri[i], k);
        if (crossing(e2) && seen.insert(e2).second) stack.push_back(e2);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Extraction extract(const PLSurface& s, int samples) {
  if (samples < 1) throw DataError("samples must be positive");
  const auto report = validate_simple_morse(s);
  if (!report.is_simple_morse) {
    std::string msg = "field is not simple Morse";
    if (!report.violations.empty()) msg += ": " + report.violations.front().message;
    throw NotSimpleMorse(msg);
  }

  Extraction ex;
  for (const auto& c : report.critical_points) ex.mesh_vertex.push_back(s.index_of(c.vertex));
  std::sort(ex.mesh_vertex.begin(), ex.mesh_vertex.end(),
            [&](int a, int b) { return s.rank(a) < s.rank(b); });
  const int m = static_cast<int>(ex.mesh_vertex.size());
  for (int v : ex.mesh_vertex) ex.critical_rank.push_back(s.rank(v));
  const auto& cr = ex.critical_rank;
  const int slabs = m - 1;

  // pieces
  const int T = static_cast<int>(s.triangle_count());
  std::vector<int> rlo(T), rhi(T), jlo(T), jhi(T), offset(T + 1, 0);
  for (int t = 0; t < T; ++t) {
    const auto& c = s.triangle(t);
    rlo[t] = std::min({s.rank(c[0]), s.rank(c[1]), s.rank(c[2])});
    rhi[t] = std::max({s.rank(c[0]), s.rank(c[1]), s.rank(c[2])});
    // slab j overlaps iff rlo < cr[j+1] and rhi > cr[j]
    jlo[t] = static_cast<int>(std::upper_bound(cr.begin() + 1, cr.end(), rlo[t]) - cr.begin()) - 1;
    jhi[t] = static_cast<int>(std::lower_bound(cr.begin(), cr.end(), rhi[t]) - cr.begin()) - 1;
    jhi[t] = std::min(jhi[t], slabs - 1);
    offset[t + 1] = offset[t] + std::max(0, jhi[t] - jlo[t] + 1);
  }
  auto piece = [&](int t, int j) {
    return (j < jlo[t] || j > jhi[t]) ? -1 : offset[t] + (j - jlo[t]);
  };
  const int P = offset[T];
  UnionFind uf(P);

  for (int e = 0; e < static_cast<int>(s.edge_count()); ++e) {
    const auto& me = s.edge(e);
    if (me.tri_count != 2) continue;
    const int ea = std::min(s.rank(me.a), s.rank(me.b)), eb = std::max(s.rank(me.a), s.rank(me.b));
    for (int j = 0; j < slabs; ++j) {
      if (!(ea < cr[j + 1] && eb > cr[j])) continue;
      uf.unite(piece(me.tri[0], j), piece(me.tri[1], j));
    }
  }

  // merge across each interior critical level away from its level component
  for (int j = 1; j + 1 < m; ++j) {
    const int v = ex.mesh_vertex[j];
    const int level = cr[j];
    std::vector<bool> in_component(T, false);
    for (int t : s.star(v)) in_component[t] = true;
    for (int e : critical_component_edges(s, v))
      for (int i = 0; i < s.edge(e).tri_count; ++i) in_component[s.edge(e).tri[i]] = true;
    for (int t = 0; t < T; ++t) {
      if (in_component[t] || !(rlo[t] < level && rhi[t] > level)) continue;
      uf.unite(piece(t, j - 1), piece(t, j));
    }
  }

  // groups
  std::map<int, int> group_of_root;
  struct Group {
    int jmin = std::numeric_limits<int>::max();
    int jmax = -1;
    int first_piece = std::numeric_limits<int>::max();
    bool dashed = false;
    std::vector<std::pair<int, int>> pieces;  // (triangle, slab)
  };
  std::vector<Group> groups;
  for (int t = 0; t < T; ++t)
    for (int j = jlo[t]; j <= jhi[t]; ++j) {
      const int p = piece(t, j);
      const int r = uf.find(p);
      auto [it, fresh] = group_of_root.emplace(r, static_cast<int>(groups.size()));
      if (fresh) groups.emplace_back();
      auto& g = groups[it->second];
      g.jmin = std::min(g.jmin, j);
      g.jmax = std::max(g.jmax, j);
      g.first_piece = std::min(g.first_piece, p);
      g.pieces.emplace_back(t, j);
    }
  std::vector<int> piece_group(P);
  for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi)
    for (auto [t, j] : groups[gi].pieces) piece_group[piece(t, j)] = gi;
  for (int e = 0; e < static_cast<int>(s.edge_count()); ++e) {
    const auto& me = s.edge(e);
    if (!me.boundary()) continue;
    const int ea = std::min(s.rank(me.a), s.rank(me.b)), eb = std::max(s.rank(me.a), s.rank(me.b));
    for (int j = 0; j < slabs; ++j)
      if (ea < cr[j + 1] && eb > cr[j]) groups[piece_group[piece(me.tri[0], j)]].dashed = true;
  }

  std::vector<int> order(groups.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ga = groups[a];
    const auto& gb = groups[b];
    return std::tie(ga.jmin, ga.jmax, ga.first_piece) < std::tie(gb.jmin, gb.jmax, gb.first_piece);
  });

  auto& G = ex.graph;
  for (int j = 0; j < m; ++j) G.vertices.push_back({j, s.f(ex.mesh_vertex[j]), VertexType::I, Orientation::AsInTable});
  std::vector<int> edge_id(groups.size());
  ex.slab_edges.assign(std::max(slabs, 0), {});
  for (int k = 0; k < static_cast<int>(order.size()); ++k) {
    const auto& g = groups[order[k]];
    edge_id[order[k]] = k + 1;
    GraphEdge e;
    e.id = k + 1;
    e.tail = g.jmin;
    e.head = g.jmax + 1;
    e.style = g.dashed ? Style::Dashed : Style::Solid;
    const double flo = G.vertices[e.tail].f, fhi = G.vertices[e.head].f;
    e.profile.f_lo = flo;
    e.profile.f_hi = fhi;
    e.profile.cumulative.assign(samples + 1, 0.0);
    double mass = 0.0;
    for (auto [t, j] : g.pieces) {
      const auto& c = s.triangle(t);
      const double f0 = s.f(c[0]), f1 = s.f(c[1]), f2 = s.f(c[2]), A = s.area(t);
      const double lo = G.vertices[j].f, hi = G.vertices[j + 1].f;
      const double base = clipped_area(A, f0, f1, f2, lo);
      mass += clipped_area(A, f0, f1, f2, hi) - base;
      for (int q = 1; q < samples; ++q) {
        const double x = e.profile.grid(q);
        if (x <= lo) continue;
        e.profile.cumulative[q] += clipped_area(A, f0, f1, f2, std::min(x, hi)) - base;
      }
      ex.slab_edges[j][t] = e.id;
    }
    e.mass = mass;
    e.profile.cumulative[samples] = mass;
    G.edges.push_back(std::move(e));
  }

  for (int j = 0; j < m; ++j) {
    LevelTransition lt;
    lt.on_boundary = s.on_boundary(ex.mesh_vertex[j]);
    for (const auto& e : G.edges) {
      const bool solid = e.style == Style::Solid;
      if (e.head == j) (solid ? lt.below_circles : lt.below_segments)++;
      if (e.tail == j) (solid ? lt.above_circles : lt.above_segments)++;
    }
    auto [type, o] = classify_level_transition(lt);
    G.vertices[j].type = type;
    G.vertices[j].orientation = o;
  }
  for (const auto& v : G.vertices)
    if (v.type == VertexType::II || v.type == VertexType::IV)
      G.cyclic_orders[v.id] = cyclic_order(s, ex, v.id);
  return ex;
}

MeasuredReebGraph extract_reeb(const PLSurface& s, int samples) { return extract(s, samples).graph; }

// ---------------------------------------------------------------------------

LevelCurve trace_level(const PLSurface& s, double c, int t0) {
  auto crossings = [&](int t) {
    const auto& tri = s.triangle(t);
    for (int k = 0; k < 3; ++k)
      if (s.f(tri[k]) == c)
        throw LevelOnVertex("level " + std::to_string(c) + " passes through vertex " +
                            std::to_string(s.id(tri[k])));
    std::vector<int> out;
    for (int k = 0; k < 3; ++k) {
      const int e = s.triangle_edge(t, k);
      const double fa = s.f(s.edge(e).a), fb = s.f(s.edge(e).b);
      if ((fa - c) * (fb - c) < 0) out.push_back(e);
    }
    return out;
  };
  auto point = [&](int e) {
    const double fa = s.f(s.edge(e).a), fb = s.f(s.edge(e).b);
    return LevelPoint{e, (c - fa) / (fb - fa)};
  };
  auto across = [&](int e, int t) {
    const auto& me = s.edge(e);
    if (me.tri_count < 2) return -1;
    return me.tri[0] == t ? me.tri[1] : me.tri[0];
  };

  auto start = crossings(t0);
  if (start.size() != 2) throw DataError("triangle does not cross the level");
  // walk forward out of t0 through start[1]
  std::vector<int> fwd_edges{start[1]};
  std::vector<int> fwd_tris;
  bool closed = false;
  int t = t0, e = start[1];
  while (true) {
    const int n = across(e, t);
    if (n < 0) break;
    if (n == t0) {
      closed = true;
      break;
    }
    auto cr = crossings(n);
    const int e2 = cr[0] == e ? cr[1] : cr[0];
    fwd_tris.push_back(n);
    fwd_edges.push_back(e2);
    t = n;
    e = e2;
  }
  LevelCurve curve;
  curve.closed = closed;
  std::vector<int> back_edges, back_tris;
  if (!closed) {
    t = t0;
    e = start[0];
    while (true) {
      const int n = across(e, t);
      if (n < 0) break;
      auto cr = crossings(n);
      const int e2 = cr[0] == e ? cr[1] : cr[0];
      back_tris.push_back(n);
      back_edges.push_back(e2);
      t = n;
      e = e2;
    }
  }
  // assemble: back (reversed), start[0], t0, start[1], forward
  for (int i = static_cast<int>(back_edges.size()) - 1; i >= 0; --i) {
    curve.points.push_back(point(back_edges[i]));
    curve.triangles.push_back(back_tris[i]);
  }
  curve.points.push_back(point(start[0]));
  curve.triangles.push_back(t0);
  for (std::size_t i = 0; i < fwd_edges.size(); ++i) {
    curve.points.push_back(point(fwd_edges[i]));
    if (i < fwd_tris.size()) curve.triangles.push_back(fwd_tris[i]);
  }
  if (closed) {
    // the last forward edge is start[0]; drop the duplicate point
    curve.points.pop_back();
  }
  return curve;
}

LevelCurve trace_level_oriented(const PLSurface& s, double c, int t) {
  auto curve = trace_level(s, c, t);
  if (curve.points.size() < 2) return curve;
  // reference chart: corners at (0,0), (1,0), (0,1)
  const int t0 = curve.triangles.front();
  const auto& tri = s.triangle(t0);
  auto pos = [&](const LevelPoint& p) {
    const auto& me = s.edge(p.edge);
    std::array<double, 2> out{0.0, 0.0};
    const std::array<std::array<double, 2>, 3> corner{{{0, 0}, {1, 0}, {0, 1}}};
    for (int k = 0; k < 3; ++k) {
      const double w = tri[k] == me.a ? 1.0 - p.t : tri[k] == me.b ? p.t : 0.0;
      out[0] += w * corner[k][0];
      out[1] += w * corner[k][1];
    }
    return out;
  };
  const auto P = pos(curve.points[0]), Q = pos(curve.points[1]);
  const int i0 = tri[0], i1 = tri[1], i2 = tri[2];
  const double gx = s.f(i1) - s.f(i0), gy = s.f(i2) - s.f(i0);
  const double dx = Q[0] - P[0], dy = Q[1] - P[1];
  // sublevel on the left: gradient against the left normal (-dy, dx)
  if (gx * -dy + gy * dx < 0) return curve;
  LevelCurve rev;
  rev.closed = curve.closed;
  const int n = static_cast<int>(curve.points.size());
  if (curve.closed) {
    // segment i joins points[i] and points[i + 1 mod n]
    for (int i = 0; i < n; ++i) rev.points.push_back(curve.points[(n - i) % n]);
    for (int i = 0; i < n; ++i) rev.triangles.push_back(curve.triangles[(2 * n - 1 - i) % n]);
  } else {
    rev.points.assign(curve.points.rbegin(), curve.points.rend());
    rev.triangles.assign(curve.triangles.rbegin(), curve.triangles.rend());
  }
  return rev;
}

// ---------------------------------------------------------------------------

std::vector<int> cyclic_order(const PLSurface& s, const Extraction& ex, VertexId v, double eps) {
  const auto& G = ex.graph;
  const auto& gv = G.vertex(v);
  auto incident = G.incident(v, Style::Dashed);
  if (incident.size() < 3) return incident;

  double gap = std::numeric_limits<double>::infinity();
  for (const auto& w : G.vertices)
    if (w.id != v) gap = std::min(gap, std::abs(w.f - gv.f));
  if (eps <= 0.0) eps = gap / 3.0;
  eps = std::min(eps, gap / 3.0);

  auto on_vertex = [&](double c) {
    for (int i = 0; i < static_cast<int>(s.vertex_count()); ++i)
      if (s.f(i) == c) return true;
    return false;
  };
  int tries = 0;
  while (on_vertex(gv.f - eps) || on_vertex(gv.f + eps)) {
    eps *= 0.5;
    if (++tries > 40) throw SlabTooWide("cannot place slab levels off the mesh vertices");
  }
  const double lo = gv.f - eps, hi = gv.f + eps;

  // crossings of lo/hi along each oriented boundary loop
  struct Crossing {
    int loop, pos;  // boundary edge from loop[pos] to loop[pos+1]
    double level;
    int edge_id;
    bool exit;
    int partner = -1;
  };
  std::vector<Crossing> xs;
  std::map<std::pair<int, int>, int> at;  // (mesh edge, level index) -> crossing
  const auto& loops = s.boundary_loops();
  for (int L = 0; L < static_cast<int>(loops.size()); ++L) {
    const auto& loop = loops[L];
    const int n = static_cast<int>(loop.size());
    for (int p = 0; p < n; ++p) {
      const int a = loop[p], b = loop[(p + 1) % n];
      const int me = s.edge_between(a, b);
      const int t = s.edge(me).tri[0];
      for (int li = 0; li < 2; ++li) {
        const double c = li == 0 ? lo : hi;
        if (!((s.f(a) - c) * (s.f(b) - c) < 0)) continue;
        const int gid = ex.edge_at(t, c);
        if (std::find(incident.begin(), incident.end(), gid) == incident.end()) continue;
        // walking a -> b leaves [lo, hi] when b is outside
        const bool exit = (li == 0) ? s.f(b) < c : s.f(b) > c;
        at[{me, li}] = static_cast<int>(xs.size());
        xs.push_back({L, p, c, gid, exit});
      }
    }
  }
  for (auto& x : xs) {
    if (x.partner >= 0) continue;
    const auto& loop = loops[x.loop];
    const int a = loop[x.pos], b = loop[(x.pos + 1) % loop.size()];
    const int me = s.edge_between(a, b);
    auto curve = trace_level(s, x.level, s.edge(me).tri[0]);
    const int other = curve.points.front().edge == me ? curve.points.back().edge
                                                      : curve.points.front().edge;
    const int li = x.level == lo ? 0 : 1;
    auto it = at.find({other, li});
    if (it == at.end()) throw SlabTooWide("level segment does not return to the boundary");
    x.partner = it->second;
    xs[it->second].partner = static_cast<int>(&x - xs.data());
  }
  // next crossing along the loop after a given crossing
  std::map<int, std::vector<int>> by_loop;
  for (int i = 0; i < static_cast<int>(xs.size()); ++i) by_loop[xs[i].loop].push_back(i);
  for (auto& [L, ids] : by_loop) {
    (void)L;
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      if (xs[a].pos != xs[b].pos) return xs[a].pos < xs[b].pos;
      // same boundary edge: order by distance from its start
      const auto& loop = loops[xs[a].loop];
      const double fa = s.f(loop[xs[a].pos]);
      return std::abs(xs[a].level - fa) < std::abs(xs[b].level - fa);
    });
  }
  auto next_along = [&](int i) {
    const auto& ids = by_loop[xs[i].loop];
    const auto pos = std::find(ids.begin(), ids.end(), i) - ids.begin();
    return ids[(pos + 1) % ids.size()];
  };

  int start = -1;
  for (int i = 0; i < static_cast<int>(xs.size()); ++i)
    if (xs[i].exit) {
      start = i;
      break;
    }
  if (start < 0) throw SlabTooWide("no boundary crossing around the vertex");
  std::vector<int> order;
  int x = start;
  do {
    order.push_back(xs[x].edge_id);
    if (order.size() > incident.size()) throw SlabTooWide("slab boundary walk did not close");
    x = next_along(xs[x].partner);
    if (!xs[x].exit) throw SlabTooWide("slab boundary walk lost its way");
  } while (x != start);
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::sort(incident.begin(), incident.end());
  if (sorted != incident) throw SlabTooWide("slab boundary walk missed incident edges");
  // canonical rotation: smallest id first
  std::rotate(order.begin(), std::min_element(order.begin(), order.end()), order.end());
  return order;
}

}  // namespace reeb
