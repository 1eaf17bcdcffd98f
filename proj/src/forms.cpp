#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <set>
#include <string>

#include "forms_internal.hpp"
#include "reeb/errors.hpp"

namespace reeb {

double DiscreteOneForm::along(const PLSurface& s, int u, int w) const {
  const int e = s.edge_between(u, w);
  if (e < 0) throw DataError("vertices are not joined by a mesh edge");
  return s.edge(e).a == u ? value[e] : -value[e];
}

DiscreteOneForm DiscreteOneForm::operator+(const DiscreteOneForm& o) const {
  DiscreteOneForm r = *this;
  for (std::size_t i = 0; i < r.value.size(); ++i) r.value[i] += o.value[i];
  return r;
}

DiscreteOneForm DiscreteOneForm::operator*(double k) const {
  DiscreteOneForm r = *this;
  for (auto& x : r.value) x *= k;
  return r;
}

DiscreteOneForm zero_form(const PLSurface& s) { return {std::vector<double>(s.edge_count(), 0.0)}; }

DiscreteOneForm exact_form(const PLSurface& s, const std::vector<double>& potential) {
  auto a = zero_form(s);
  for (int e = 0; e < static_cast<int>(s.edge_count()); ++e)
    a.value[e] = potential[s.edge(e).b] - potential[s.edge(e).a];
  return a;
}

nlohmann::json to_json(const PLSurface& s, const DiscreteOneForm& a) {
  nlohmann::json edges = nlohmann::json::object();
  for (int e = 0; e < static_cast<int>(s.edge_count()); ++e)
    edges[std::to_string(s.id(s.edge(e).a)) + "-" + std::to_string(s.id(s.edge(e).b))] = a.value[e];
  return {{"edges", edges}, {"orientation", "tail<head by id"}};
}

DiscreteOneForm one_form_from_json(const PLSurface& s, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("edges") || !j.at("edges").is_object())
    throw ParseError("one-form must have an \"edges\" object");
  auto a = zero_form(s);
  for (const auto& [key, val] : j.at("edges").items()) {
    const auto dash = key.find('-', 1);
    VertexId u = 0, w = 0;
    try {
      if (dash == std::string::npos) throw std::invalid_argument(key);
      u = std::stoll(key.substr(0, dash));
      w = std::stoll(key.substr(dash + 1));
    } catch (const std::exception&) {
      throw ParseError("bad one-form edge key: " + key);
    }
    const int e = s.edge_between(s.index_of(u), s.index_of(w));
    if (e < 0) throw ParseError("one-form edge " + key + " is not a mesh edge");
    if (!val.is_number()) throw ParseError("one-form value must be a number");
    a.value[e] = s.edge(e).a == s.index_of(u) ? val.get<double>() : -val.get<double>();
  }
  return a;
}

std::vector<double> vorticity(const PLSurface& s, const DiscreteOneForm& a) {
  std::vector<double> out(s.triangle_count());
  for (int t = 0; t < static_cast<int>(s.triangle_count()); ++t) {
    const auto& c = s.triangle(t);
    out[t] = (a.along(s, c[0], c[1]) + a.along(s, c[1], c[2]) + a.along(s, c[2], c[0])) / s.area(t);
  }
  return out;
}

namespace detail {

double apply(const Functional& l, const DiscreteOneForm& a) {
  double sum = 0.0;
  for (const auto& [e, k] : l) sum += k * a.value[e];
  return sum;
}

Functional path_functional(const PLSurface& s, const std::vector<int>& path) {
  Functional l;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const int e = s.edge_between(path[i], path[i + 1]);
    if (e < 0) throw DataError("path steps off the mesh edges");
    l[e] += s.edge(e).a == path[i] ? 1.0 : -1.0;
  }
  return l;
}

namespace {

int triangle_at(const Extraction& ex, const PLSurface& s, int edge_id, double c) {
  const int j = ex.slab_of(c);
  if (j < 0) throw LevelOnVertex("level " + std::to_string(c) + " is a critical value");
  int best = -1;
  for (const auto& [t, id] : ex.slab_edges[j]) {
    if (id != edge_id || (best >= 0 && t > best)) continue;
    const auto& tri = s.triangle(t);
    const double lo = std::min({s.f(tri[0]), s.f(tri[1]), s.f(tri[2])});
    const double hi = std::max({s.f(tri[0]), s.f(tri[1]), s.f(tri[2])});
    if (lo < c && c < hi) best = t;
  }
  if (best < 0) {
    for (const auto& [t, id] : ex.slab_edges[j]) {
      if (id != edge_id) continue;
      for (int v : s.triangle(t))
        if (s.f(v) == c) throw LevelOnVertex("level " + std::to_string(c) + " hits a vertex");
    }
    throw DataError("edge " + std::to_string(edge_id) + " does not reach level " + std::to_string(c));
  }
  return best;
}

// Whitney interpolation: the integral over a straight segment P -> Q inside
// a triangle is sum over sides (i, j) of a_ij (P_i Q_j - P_j Q_i).
void add_segment(const PLSurface& s, int t, const LevelPoint& p, const LevelPoint& q, Functional& l) {
  const auto& tri = s.triangle(t);
  auto bary = [&](const LevelPoint& x) {
    std::array<double, 3> w{0, 0, 0};
    const auto& me = s.edge(x.edge);
    for (int k = 0; k < 3; ++k) {
      if (tri[k] == me.a) w[k] = 1.0 - x.t;
      if (tri[k] == me.b) w[k] = x.t;
    }
    return w;
  };
  const auto P = bary(p), Q = bary(q);
  for (int k = 0; k < 3; ++k) {
    const int i = k, j = (k + 1) % 3;
    const int e = s.triangle_edge(t, k);
    const double sign = s.edge(e).a == tri[i] ? 1.0 : -1.0;
    l[e] += sign * (P[i] * Q[j] - P[j] * Q[i]);
  }
}

}  // namespace

Functional level_functional(const PLSurface& s, const Extraction& ex, int edge_id, double c) {
  const auto curve = trace_level_oriented(s, c, triangle_at(ex, s, edge_id, c));
  Functional l;
  const std::size_t n = curve.points.size();
  for (std::size_t i = 0; i < curve.triangles.size(); ++i)
    add_segment(s, curve.triangles[i], curve.points[i], curve.points[(i + 1) % n], l);
  return l;
}

}  // namespace detail

double circulation_from_form(const PLSurface& s, const DiscreteOneForm& a, const Extraction& ex,
                             int edge_id, double c) {
  return detail::apply(detail::level_functional(s, ex, edge_id, c), a);
}

double reference_level(const PLSurface& s, const MeasuredReebGraph& g, int edge_id) {
  const auto& e = g.edge(edge_id);
  const double lo = g.vertex(e.tail).f, hi = g.vertex(e.head).f;
  std::set<double> values;
  for (int v = 0; v < static_cast<int>(s.vertex_count()); ++v) values.insert(s.f(v));
  double c = 0.5 * (lo + hi);
  for (int k = 1; values.count(c); ++k) c = 0.5 * (lo + hi) + (k % 2 ? 1 : -1) * (k + 1) / 2 * 1e-7 * (hi - lo);
  return c;
}

CirculationFunction circulation_of_form(const PLSurface& s, const DiscreteOneForm& a,
                                        const Extraction& ex) {
  CirculationFunction out;
  const auto& g = ex.graph;
  for (const auto& e : g.edges) {
    if (e.style != Style::Solid) continue;
    const double c = reference_level(s, g, e.id);
    const double C = circulation_from_form(s, a, ex, e.id, c);
    out.limits[e.id] = {C - e.profile.moment(e.profile.f_lo, c), C + e.profile.moment(c, e.profile.f_hi)};
  }
  return out;
}

// ---------------------------------------------------------------------------

LiftedGraph lift_dashed_graph(const PLSurface& s, const Extraction& ex) {
  const auto& g = ex.graph;
  LiftedGraph out;
  const auto& loops = s.boundary_loops();
  std::map<int, std::pair<int, int>> loop_pos;  // vertex -> (loop, position)
  for (int L = 0; L < static_cast<int>(loops.size()); ++L)
    for (int p = 0; p < static_cast<int>(loops[L].size()); ++p) loop_pos[loops[L][p]] = {L, p};

  for (const auto& e : g.edges) {
    if (e.style != Style::Dashed) continue;
    const double c = reference_level(s, g, e.id);
    const int j = ex.slab_of(c);
    int t0 = -1;
    for (const auto& [t, id] : ex.slab_edges[j]) {
      if (id != e.id || (t0 >= 0 && t > t0)) continue;
      const auto& tri = s.triangle(t);
      const double lo = std::min({s.f(tri[0]), s.f(tri[1]), s.f(tri[2])});
      const double hi = std::max({s.f(tri[0]), s.f(tri[1]), s.f(tri[2])});
      if (lo < c && c < hi) t0 = t;
    }
    const auto curve = trace_level_oriented(s, c, t0);
    const auto& end = s.edge(curve.points.back().edge);
    const int up = s.rank(end.a) > s.rank(end.b) ? end.a : end.b;
    const int down = up == end.a ? end.b : end.a;
    const auto [L, pu] = loop_pos.at(up);
    const auto& loop = loops[L];
    const int n = static_cast<int>(loop.size());
    const int dir = loop[(pu + n - 1) % n] == down ? 1 : -1;
    const int head_rank = s.rank(ex.mesh_vertex[e.head]);
    const int tail_rank = s.rank(ex.mesh_vertex[e.tail]);

    std::vector<int> back{down};
    for (int p = loop_pos.at(down).second; s.rank(back.back()) > tail_rank;) {
      p = (p - dir + n) % n;
      back.push_back(loop[p]);
      if (back.size() > loop.size()) throw DataError("boundary arc does not reach the tail level");
    }
    std::vector<int> arc(back.rbegin(), back.rend());
    arc.push_back(up);
    for (int p = pu; s.rank(arc.back()) < head_rank;) {
      p = (p + dir + n) % n;
      arc.push_back(loop[p]);
      if (arc.size() > 2 * loop.size()) throw DataError("boundary arc does not reach the head level");
    }
    out.arcs[e.id] = std::move(arc);
  }

  for (const auto& v : g.vertices) {
    if (g.incident(v.id, Style::Dashed).empty()) continue;
    const int root = ex.mesh_vertex[v.id];
    std::map<int, std::vector<int>> adj;
    auto join = [&](int x, int y) {
      adj[x].push_back(y);
      adj[y].push_back(x);
    };
    for (int w : s.link(root)) join(root, w);
    for (int e : critical_component_edges(s, root)) join(s.edge(e).a, s.edge(e).b);
    auto& parent = out.trees[v.id];
    parent[root] = root;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      auto& nb = adj[x];
      std::sort(nb.begin(), nb.end());
      for (int y : nb)
        if (parent.emplace(y, x).second) queue.push_back(y);
    }
  }
  // distinct critical level components must not share mesh vertices, or
  // lifted cycles may retrace themselves
  std::map<int, VertexId> owner;
  for (const auto& [v, parent] : out.trees)
    for (const auto& [x, p] : parent) {
      const auto [it, fresh] = owner.emplace(x, v);
      if (!fresh)
        throw DataError("mesh does not resolve the dashed graph: critical levels of vertices " +
                        std::to_string(it->second) + " and " + std::to_string(v) + " share mesh vertices");
    }
  return out;
}

namespace {

std::vector<int> tree_path(const std::map<int, int>& parent, int x, int y) {
  auto chain = [&](int v) {
    std::vector<int> c{v};
    auto it = parent.find(v);
    if (it == parent.end()) throw DataError("arc end lies off the critical level component");
    while (it->second != v) {
      v = it->second;
      c.push_back(v);
      it = parent.find(v);
    }
    return c;
  };
  auto cx = chain(x), cy = chain(y);
  while (cx.size() > 1 && cy.size() > 1 && cx[cx.size() - 2] == cy[cy.size() - 2]) {
    cx.pop_back();
    cy.pop_back();
  }
  cx.insert(cx.end(), cy.rbegin() + 1, cy.rend());
  return cx;
}

}  // namespace

std::vector<int> lift_cycle(const LiftedGraph& lifted, const MeasuredReebGraph& g,
                            const std::vector<int>& cycle) {
  std::vector<int> path;
  auto append = [&](const std::vector<int>& piece) {
    for (int x : piece)
      if (path.empty() || path.back() != x) path.push_back(x);
  };
  VertexId first = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const int id = std::abs(cycle[i]);
    const auto& e = g.edge(id);
    auto arc = lifted.arcs.at(id);
    VertexId from = e.tail;
    if (cycle[i] < 0) {
      std::reverse(arc.begin(), arc.end());
      from = e.head;
    }
    if (i == 0) first = from;
    else append(tree_path(lifted.trees.at(from), path.back(), arc.front()));
    append(arc);
  }
  if (!path.empty()) append(tree_path(lifted.trees.at(first), path.back(), path.front()));
  return path;
}

XiClass xi_class(const PLSurface& s, const DiscreteOneForm& a, const Extraction& ex) {
  XiClass xi;
  xi.basis = dashed_cycle_basis(ex.graph);
  const auto lifted = lift_dashed_graph(s, ex);
  for (const auto& c : xi.basis)
    xi.coords.push_back(detail::apply(detail::path_functional(s, lift_cycle(lifted, ex.graph, c)), a));
  return xi;
}

}  // namespace reeb
