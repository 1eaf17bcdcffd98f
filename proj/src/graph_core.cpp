#include "reeb/graph_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "reeb/errors.hpp"
#include "reeb/realization.hpp"

namespace reeb {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

using Step = std::pair<VertexId, int>;  // (departure vertex, edge id)

std::vector<Step> min_rotation(const std::vector<Step>& s) {
  std::vector<Step> best = s;
  for (std::size_t r = 1; r < s.size(); ++r) {
    std::vector<Step> rot(s.begin() + r, s.end());
    rot.insert(rot.end(), s.begin(), s.begin() + r);
    if (rot < best) best = std::move(rot);
  }
  return best;
}

}  // namespace

std::vector<BoundaryCycle> boundary_cycles(const MeasuredReebGraph& g) {
  const int m = static_cast<int>(g.edges.size());
  // dart 2i: tail -> head, dart 2i+1: head -> tail
  auto departure = [&](int d) { return d % 2 == 0 ? g.edges[d / 2].tail : g.edges[d / 2].head; };
  auto arrival = [&](int d) { return d % 2 == 0 ? g.edges[d / 2].head : g.edges[d / 2].tail; };
  auto leave = [&](int edge_idx, VertexId w) {
    return 2 * edge_idx + (g.edges[edge_idx].tail == w ? 0 : 1);
  };
  auto next = [&](int d) {
    const VertexId w = arrival(d);
    const int e = g.edges[d / 2].id;
    int e2;
    auto it = g.cyclic_orders.find(w);
    if (it != g.cyclic_orders.end()) {
      const auto& order = it->second;
      const auto pos = std::find(order.begin(), order.end(), e) - order.begin();
      e2 = order[(pos + 1) % order.size()];
    } else {
      auto dashed = g.incident(w, Style::Dashed);
      if (dashed.size() == 1) e2 = e;
      else e2 = dashed[0] == e ? dashed[1] : dashed[0];
    }
    return leave(g.edge_index(e2), w);
  };

  std::vector<bool> visited(2 * m, false);
  std::set<std::vector<Step>> seen;
  std::vector<std::vector<Step>> reps;
  for (int d0 = 0; d0 < 2 * m; ++d0) {
    if (g.edges[d0 / 2].style != Style::Dashed || visited[d0]) continue;
    std::vector<Step> walk;
    int d = d0;
    do {
      visited[d] = true;
      walk.emplace_back(departure(d), g.edges[d / 2].id);
      d = next(d);
    } while (d != d0);

    auto canon = min_rotation(walk);
    const bool only_low_valence = std::all_of(walk.begin(), walk.end(), [&](const Step& s) {
      const auto t = g.vertex(s.first).type;
      return t == VertexType::III || t == VertexType::IV;
    });
    if (only_low_valence) {
      std::vector<Step> rev;
      const int n = static_cast<int>(walk.size());
      for (int i = n - 1; i >= 0; --i) rev.emplace_back(walk[(i + 1) % n].first, walk[i].second);
      canon = std::min(canon, min_rotation(rev));
    }
    if (seen.insert(canon).second) reps.push_back(std::move(canon));
  }
  std::sort(reps.begin(), reps.end());

  std::vector<BoundaryCycle> out;
  for (const auto& r : reps) {
    BoundaryCycle c;
    for (const auto& [v, e] : r) {
      c.vertices.push_back(v);
      c.edges.push_back(e);
    }
    c.vertices.push_back(r.front().first);
    out.push_back(std::move(c));
  }
  return out;
}

int sigma(const MeasuredReebGraph& g) { return static_cast<int>(boundary_cycles(g).size()); }

SubgraphCounts subgraph_counts(const MeasuredReebGraph& g, Style s) {
  const int n = static_cast<int>(g.vertices.size());
  UnionFind uf(n);
  std::vector<bool> touched(n, false);
  SubgraphCounts c;
  for (const auto& e : g.edges) {
    if (e.style != s) continue;
    const int a = g.vertex_index(e.tail), b = g.vertex_index(e.head);
    touched[a] = touched[b] = true;
    uf.unite(a, b);
    ++c.edges;
  }
  std::set<int> roots;
  for (int i = 0; i < n; ++i)
    if (touched[i]) {
      ++c.vertices;
      roots.insert(uf.find(i));
    }
  c.components = static_cast<int>(roots.size());
  return c;
}

HomologyDims homology_dims(const MeasuredReebGraph& g) {
  HomologyDims h;
  const int V = static_cast<int>(g.vertices.size());
  const int E = static_cast<int>(g.edges.size());
  h.h1_gamma = E - V + 1;
  const auto d = subgraph_counts(g, Style::Dashed);
  const auto s = subgraph_counts(g, Style::Solid);
  h.h0_dashed = d.components;
  h.h0_solid = s.components;
  h.h1_dashed = d.edges - d.vertices + d.components;
  for (const auto& v : g.vertices)
    if (!g.incident(v.id, Style::Dashed).empty() && !g.incident(v.id, Style::Solid).empty())
      ++h.h0_intersection;
  if (d.edges == 0) {
    h.h1_rel = h.h1_gamma;
  } else {
    // H1(G, D) is the reduced H1 of G with all of D collapsed to one point
    const int Vq = V - d.vertices + 1;
    const int Eq = E - d.edges;
    h.h1_rel = Eq - Vq + 1;
  }
  return h;
}

double genus_formula_value(const MeasuredReebGraph& g) {
  const auto s = subgraph_counts(g, Style::Solid);
  const auto d = subgraph_counts(g, Style::Dashed);
  const auto h = homology_dims(g);
  const double chi_s = s.vertices - s.edges;
  const double chi_d = d.vertices - d.edges;
  return -chi_s + (-chi_d + 5.0 * h.h0_intersection - sigma(g)) / 2.0 - s.components -
         d.components + 3.0;
}

int genus(const MeasuredReebGraph& g, GenusMethod method) {
  if (method == GenusMethod::Realize) return surface_of(g).genus;
  const double v = genus_formula_value(g);
  if (std::abs(v - std::round(v)) > 1e-9)
    throw NonIntegerFormulaValue("genus formula evaluates to " + std::to_string(v));
  return static_cast<int>(std::lround(v));
}

Compatibility compatibility(const MeasuredReebGraph& g, const TopologySummary& t) {
  Compatibility c;
  if (genus(g) != t.genus) c.failures.push_back("genus");
  if (sigma(g) != t.boundary_component_count) c.failures.push_back("boundary");
  if (std::abs(g.total_mass() - t.total_area) > 1e-9 * t.total_area) c.failures.push_back("area");
  c.compatible = c.failures.empty();
  return c;
}

}  // namespace reeb
