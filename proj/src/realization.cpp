#include "reeb/realization.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "reeb/errors.hpp"
#include "reeb/extraction.hpp"

namespace reeb {

namespace {

// Every level component is a row of mesh vertices at a common f value:
// a cycle for solid edges, a path with both ends on the boundary for dashed
// ones. Triangles are listed counterclockwise in a chart where rows run left
// to right and f grows upward, so a row is walked forward by the band above
// it and backward by the band below it.

// Flip to mirror the chirality of every realized cyclic order.
constexpr bool kReverseOrders = false;

using Poly = std::vector<int>;

struct Builder {
  std::vector<SurfaceVertex> vertices;
  std::vector<std::array<int, 3>> tris;
  std::vector<double> area;

  int vertex(double f) {
    const int id = static_cast<int>(vertices.size());
    vertices.push_back({id, f, {}});
    return id;
  }
  int tri(int a, int b, int c) {
    tris.push_back({a, b, c});
    area.push_back(0.0);
    return static_cast<int>(tris.size()) - 1;
  }
};

Poly sub(const Poly& r, int lo, int hi) { return Poly(r.begin() + lo, r.begin() + hi); }

Poly closed(Poly r) {
  r.push_back(r.front());
  return r;
}

// Band between bottom polyline b and top polyline t, both left to right.
void zipper(Builder& m, const Poly& b, const Poly& t, std::vector<int>& out) {
  const std::size_t a = b.size() - 1, c = t.size() - 1;
  std::size_t i = 0, j = 0;
  while (i < a || j < c) {
    const bool bottom = j == c || (i < a && (i + 1) * c <= (j + 1) * a);
    if (bottom) {
      out.push_back(m.tri(b[i], b[i + 1], t[j]));
      ++i;
    } else {
      out.push_back(m.tri(b[i], t[j + 1], t[j]));
      ++j;
    }
  }
}

void fan(Builder& m, int v, const Poly& p, bool cyclic, std::vector<int>& out) {
  for (std::size_t j = 0; j + 1 < p.size(); ++j) out.push_back(m.tri(v, p[j], p[j + 1]));
  if (cyclic) out.push_back(m.tri(v, p.back(), p.front()));
}

Poly reversed(Poly p) {
  std::reverse(p.begin(), p.end());
  return p;
}

// Neighbourhood of a vertex of the given type with the as-in-table
// orientation: `lo` are the rows below it, `hi` the rows above, already in
// the order demanded by the cyclic order where there is one.
void core(Builder& m, int v, VertexType type, const std::vector<Poly>& lo,
          const std::vector<Poly>& hi, std::vector<int>& out) {
  switch (type) {
    case VertexType::VII:
      fan(m, v, reversed(hi[0]), true, out);
      return;
    case VertexType::I:
      fan(m, v, reversed(hi[0]), false, out);
      return;
    case VertexType::VI: {
      const auto &b1 = lo[0], &b2 = lo[1], &t = hi[0];
      const int n = static_cast<int>(t.size()), h = n / 2;
      zipper(m, b1, sub(t, 0, h), out);
      zipper(m, b2, sub(t, h, n), out);
      const int k1 = static_cast<int>(b1.size()) - 1, k2 = static_cast<int>(b2.size()) - 1;
      fan(m, v, {b1[k1], b1[0], t[0], t[n - 1], b2[k2], b2[0], t[h], t[h - 1]}, true, out);
      return;
    }
    case VertexType::V: {
      const auto &p = lo[0], &r = lo[1], &t = hi[0];
      const int np = static_cast<int>(p.size()), nr = static_cast<int>(r.size());
      const int n = static_cast<int>(t.size());
      const int h = np / 2, a = std::max(1, n / 4), b = n - a;
      zipper(m, sub(p, 0, h), sub(t, 0, a), out);
      zipper(m, r, sub(t, a, b), out);
      zipper(m, sub(p, h, np), sub(t, b, n), out);
      fan(m, v, {p[h - 1], p[h], t[b], t[b - 1], r[nr - 1], r[0], t[a], t[a - 1]}, true, out);
      return;
    }
    case VertexType::IV: {
      const auto &b1 = lo[0], &b2 = lo[1], &t1 = hi[0], &t2 = hi[1];
      const int n = static_cast<int>(b1.size()), h = n / 2;
      zipper(m, sub(b1, h, n), sub(t1, h, n), out);
      zipper(m, sub(b2, 0, h), sub(t1, 0, h), out);
      zipper(m, sub(b2, h, n), sub(t2, h, n), out);
      zipper(m, sub(b1, 0, h), sub(t2, 0, h), out);
      fan(m, v, {b1[h - 1], b1[h], t1[h], t1[h - 1], b2[h - 1], b2[h], t2[h], t2[h - 1]}, true,
          out);
      return;
    }
    case VertexType::III: {
      const auto &b = lo[0], &t = hi[0];
      const int nb = static_cast<int>(b.size()), n = static_cast<int>(t.size());
      zipper(m, b, t, out);
      fan(m, v, {b[0], t[0], t[n - 1], b[nb - 1]}, false, out);
      return;
    }
    case VertexType::II: {
      const auto &b1 = lo[0], &b2 = lo[1], &t = hi[0];
      const int n = static_cast<int>(t.size()), h = n / 2;
      zipper(m, b1, sub(t, 0, h), out);
      zipper(m, b2, sub(t, h, n), out);
      fan(m, v, {b2[0], t[h], t[h - 1], b1[b1.size() - 1]}, false, out);
      return;
    }
  }
}

struct EdgeRows {
  std::vector<Poly> rows;  // rows[0] near the tail, rows.back() near the head
  std::vector<double> level;
};

}  // namespace

RealizationResult realize(const MeasuredReebGraph& g, int resolution) {
  validate_graph(g);
  if (resolution < 4) throw DataError("resolution must be at least 4");
  const int n = resolution + resolution % 2;
  Builder m;
  RealizationResult result;
  auto& w = result.witness;

  std::map<VertexId, int> vmesh;
  for (const auto& v : g.vertices) {
    vmesh[v.id] = m.vertex(v.f);
    w.vertex_of[v.id] = vmesh[v.id];
  }

  std::map<int, EdgeRows> rows;
  std::map<int, int> row_edge;  // mesh vertex -> graph edge id
  for (const auto& e : g.edges) {
    const auto& p = e.profile;
    const int K = p.samples();
    const double eta = 0.1 * p.step();
    auto& er = rows[e.id];
    er.level.push_back(p.f_lo + eta);
    for (int k = 1; k < K; ++k) er.level.push_back(p.grid(k));
    er.level.push_back(p.f_hi - eta);
    for (double f : er.level) {
      Poly r;
      for (int i = 0; i < n; ++i) {
        r.push_back(m.vertex(f));
        row_edge[r.back()] = e.id;
      }
      er.rows.push_back(std::move(r));
    }
  }

  // vertex neighbourhoods
  std::map<int, double> tail_part, head_part;
  for (const auto& gv : g.vertices) {
    const bool rev = gv.orientation == Orientation::FReversed;
    std::vector<int> below, above;
    for (int id : g.incident(gv.id)) (g.edge(id).head == gv.id ? below : above).push_back(id);
    // roles of the as-in-table model: rev swaps them
    std::vector<int> lo_ids = rev ? above : below, hi_ids = rev ? below : above;

    auto it = g.cyclic_orders.find(gv.id);
    if (it != g.cyclic_orders.end()) {
      std::vector<int> order = it->second;
      if (rev != kReverseOrders) std::reverse(order.begin(), order.end());
      const std::set<int> lo_set(lo_ids.begin(), lo_ids.end());
      const int k = static_cast<int>(order.size());
      if (gv.type == VertexType::II) {
        int start = 0;
        while (lo_set.count(order[start]) || !lo_set.count(order[(start + 1) % k])) ++start;
        lo_ids = {order[(start + 1) % k], order[(start + 2) % k]};
      } else if (gv.type == VertexType::IV) {
        int start = lo_set.count(order[0]) ? 0 : 1;
        for (int j = 0; j < k; ++j)
          if (lo_set.count(order[(start + j) % k]) != (j % 2 == 0))
            throw InvalidGraph("cyclic order at vertex " + std::to_string(gv.id) +
                               " does not alternate between the two sides");
        lo_ids = {order[start], order[(start + 2) % k]};
        hi_ids = {order[(start + 1) % k], order[(start + 3) % k]};
      }
    }
    if (gv.type == VertexType::V) {
      // the path first, then the cycle
      if (g.edge(lo_ids[0]).style == Style::Solid) std::swap(lo_ids[0], lo_ids[1]);
    }

    auto row_of = [&](int id) -> const Poly& {
      const auto& er = rows.at(id).rows;
      return g.edge(id).head == gv.id ? er.back() : er.front();
    };
    std::vector<Poly> lo, hi;
    for (int id : lo_ids) lo.push_back(row_of(id));
    for (int id : hi_ids) hi.push_back(row_of(id));

    std::vector<int> tris;
    core(m, vmesh[gv.id], gv.type, lo, hi, tris);
    if (rev)
      for (int t : tris) std::swap(m.tris[t][1], m.tris[t][2]);

    // share of each triangle below and above the critical level
    std::map<int, double> unit;
    std::vector<std::array<double, 2>> frac;
    std::vector<std::array<int, 2>> owner;
    for (int t : tris) {
      const auto& c = m.tris[t];
      const double f0 = m.vertices[c[0]].f, f1 = m.vertices[c[1]].f, f2 = m.vertices[c[2]].f;
      const double below = clipped_area(1.0, f0, f1, f2, gv.f);
      std::array<int, 2> own{0, 0};
      for (int x : c) {
        if (x == vmesh[gv.id]) continue;
        own[m.vertices[x].f < gv.f ? 0 : 1] = row_edge.at(x);
      }
      frac.push_back({below, 1.0 - below});
      owner.push_back(own);
      for (int s = 0; s < 2; ++s)
        if (own[s]) unit[own[s]] += frac.back()[s];
    }
    double theta = std::numeric_limits<double>::infinity();
    for (const auto& [id, u] : unit) {
      const auto& p = g.edge(id).profile;
      const int K = p.samples();
      const double band = g.edge(id).head == gv.id ? p.cumulative[K] - p.cumulative[K - 1]
                                                   : p.cumulative[1] - p.cumulative[0];
      theta = std::min(theta, 0.2 * band / u);
    }
    for (std::size_t i = 0; i < tris.size(); ++i) {
      m.area[tris[i]] = theta;
      for (int s = 0; s < 2; ++s) {
        const int id = owner[i][s];
        if (!id) continue;
        (g.edge(id).head == gv.id ? head_part : tail_part)[id] += theta * frac[i][s];
        w.edge_area[id] += theta * frac[i][s];
      }
    }
    w.vertex_triangles[gv.id] = std::move(tris);
  }

  // edge bands
  for (const auto& e : g.edges) {
    const auto& p = e.profile;
    const int K = p.samples();
    const auto& er = rows.at(e.id);
    auto& out = w.edge_triangles[e.id];
    for (int k = 0; k < K; ++k) {
      double mass = p.cumulative[k + 1] - p.cumulative[k];
      if (k == 0) mass -= tail_part[e.id];
      if (k == K - 1) mass -= head_part[e.id];
      const std::size_t first = out.size();
      if (e.style == Style::Solid)
        zipper(m, closed(er.rows[k]), closed(er.rows[k + 1]), out);
      else
        zipper(m, er.rows[k], er.rows[k + 1], out);
      const double each = mass / static_cast<double>(out.size() - first);
      for (std::size_t i = first; i < out.size(); ++i) m.area[out[i]] = each;
      w.edge_area[e.id] += mass;
    }
  }

  std::vector<SurfaceTriangle> tris;
  tris.reserve(m.tris.size());
  for (std::size_t t = 0; t < m.tris.size(); ++t) tris.push_back({{m.tris[t][0], m.tris[t][1], m.tris[t][2]}, m.area[t]});
  result.surface = PLSurface::build(std::move(m.vertices), std::move(tris));
  return result;
}

TopologySummary surface_of(const MeasuredReebGraph& g) {
  return topology_summary(realize(g, 4).surface);
}

}  // namespace reeb
