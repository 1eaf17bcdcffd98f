#include "reeb/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "reeb/errors.hpp"

namespace reeb {

using nlohmann::json;

namespace {

std::uint64_t edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

}  // namespace

PLSurface PLSurface::build(std::vector<SurfaceVertex> vertices,
                           std::vector<SurfaceTriangle> triangles) {
  PLSurface s;
  const int n = static_cast<int>(vertices.size());
  if (n == 0) throw TopologyError("mesh has no vertices");
  if (triangles.empty()) throw TopologyError("mesh has no triangles");

  std::unordered_map<VertexId, int> index;
  index.reserve(n * 2);
  for (int i = 0; i < n; ++i) {
    const auto& v = vertices[i];
    if (!std::isfinite(v.f)) throw DataError("non-finite f at vertex " + std::to_string(v.id));
    if (!index.emplace(v.id, i).second)
      throw ParseError("duplicate vertex id " + std::to_string(v.id));
    s.ids_.push_back(v.id);
    s.f_.push_back(v.f);
    s.xy_.push_back(v.xy);
  }

  std::unordered_map<std::uint64_t, int> edge_index;
  s.adjacency_.assign(n, {});
  for (const auto& t : triangles) {
    if (!(t.area > 0.0) || !std::isfinite(t.area))
      throw DataError("non-positive triangle area");
    std::array<int, 3> c{};
    for (int k = 0; k < 3; ++k) {
      auto it = index.find(t.v[k]);
      if (it == index.end())
        throw ParseError("triangle references unknown vertex " + std::to_string(t.v[k]));
      c[k] = it->second;
    }
    if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2])
      throw TopologyError("degenerate triangle with a repeated vertex");
    const int ti = static_cast<int>(s.tris_.size());
    std::array<int, 3> te{};
    for (int k = 0; k < 3; ++k) {
      const int u = c[k], w = c[(k + 1) % 3];
      const auto key = edge_key(u, w);
      auto it = edge_index.find(key);
      int ei;
      if (it == edge_index.end()) {
        ei = static_cast<int>(s.edges_.size());
        edge_index.emplace(key, ei);
        MeshEdge e;
        e.a = s.ids_[u] < s.ids_[w] ? u : w;
        e.b = e.a == u ? w : u;
        s.edges_.push_back(e);
        s.adjacency_[u].emplace_back(w, ei);
        s.adjacency_[w].emplace_back(u, ei);
      } else {
        ei = it->second;
      }
      MeshEdge& e = s.edges_[ei];
      if (e.tri_count == 2)
        throw TopologyError("non-manifold edge " + std::to_string(s.ids_[u]) + "-" +
                            std::to_string(s.ids_[w]) + " in more than two triangles");
      if (e.tri_count == 1) {
        // the other triangle must traverse the edge in the opposite direction
        const auto& o = s.tris_[e.tri[0]];
        for (int j = 0; j < 3; ++j) {
          if (o[j] == u && o[(j + 1) % 3] == w)
            throw TopologyError("inconsistent triangle orientation at edge " +
                                std::to_string(s.ids_[u]) + "-" + std::to_string(s.ids_[w]));
        }
      }
      e.tri[e.tri_count++] = ti;
      te[k] = ei;
    }
    s.tris_.push_back(c);
    s.tri_edges_.push_back(te);
    s.area_.push_back(t.area);
    s.total_area_ += t.area;
  }

  // stars, links
  s.stars_.assign(n, {});
  for (int t = 0; t < static_cast<int>(s.tris_.size()); ++t)
    for (int k = 0; k < 3; ++k) s.stars_[s.tris_[t][k]].push_back(t);

  s.on_boundary_.assign(n, false);
  s.links_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    if (s.stars_[v].empty())
      throw TopologyError("vertex " + std::to_string(s.ids_[v]) + " is in no triangle");
    std::unordered_map<int, int> next;
    std::unordered_map<int, int> indeg;
    for (int t : s.stars_[v]) {
      const auto& c = s.tris_[t];
      int k = 0;
      while (c[k] != v) ++k;
      const int a = c[(k + 1) % 3], b = c[(k + 2) % 3];
      next[a] = b;
      indeg[b]++;
      indeg.try_emplace(a, 0);
    }
    int start = -1;
    int starts = 0;
    for (auto [u, d] : indeg)
      if (d == 0) {
        ++starts;
        if (start < 0 || s.ids_[u] < s.ids_[start]) start = u;
      }
    if (starts > 1)
      throw TopologyError("vertex " + std::to_string(s.ids_[v]) + " is a pinch point");
    const bool boundary = starts == 1;
    if (!boundary) {
      start = next.begin()->first;
      for (auto& kv : next)
        if (s.ids_[kv.first] < s.ids_[start]) start = kv.first;
    }
    std::vector<int> link{start};
    int cur = start;
    while (true) {
      auto it = next.find(cur);
      if (it == next.end()) break;
      cur = it->second;
      if (cur == start) break;
      link.push_back(cur);
      if (link.size() > indeg.size()) break;
    }
    if (link.size() != indeg.size())
      throw TopologyError("vertex " + std::to_string(s.ids_[v]) + " has a disconnected link");
    s.on_boundary_[v] = boundary;
    s.links_[v] = std::move(link);
  }

  // boundary polygons in triangle direction
  std::vector<int> bnext(n, -1);
  for (const auto& e : s.edges_) {
    if (!e.boundary()) continue;
    const auto& c = s.tris_[e.tri[0]];
    for (int k = 0; k < 3; ++k) {
      const int u = c[k], w = c[(k + 1) % 3];
      if ((u == e.a && w == e.b) || (u == e.b && w == e.a)) {
        if (bnext[u] != -1) throw TopologyError("boundary is not a union of simple polygons");
        bnext[u] = w;
      }
    }
  }
  std::vector<bool> seen(n, false);
  for (int v = 0; v < n; ++v) {
    if (bnext[v] < 0 || seen[v]) continue;
    std::vector<int> loop;
    int cur = v;
    while (!seen[cur]) {
      seen[cur] = true;
      loop.push_back(cur);
      cur = bnext[cur];
      if (cur < 0) throw TopologyError("open boundary chain");
    }
    if (cur != v) throw TopologyError("boundary is not a union of simple polygons");
    s.loops_.push_back(std::move(loop));
  }

  // connectivity of the 1-skeleton
  std::vector<bool> reach(n, false);
  std::vector<int> stack{0};
  reach[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [w, e] : s.adjacency_[u]) {
      (void)e;
      if (!reach[w]) {
        reach[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  if (count != n) throw TopologyError("mesh is disconnected");

  s.index_ = std::move(index);
  s.by_rank_.resize(n);
  std::iota(s.by_rank_.begin(), s.by_rank_.end(), 0);
  std::sort(s.by_rank_.begin(), s.by_rank_.end(),
            [&](int a, int b) { return s.below(a, b); });
  s.rank_.assign(n, 0);
  for (int r = 0; r < n; ++r) s.rank_[s.by_rank_[r]] = r;
  return s;
}

int PLSurface::index_of(VertexId id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

int PLSurface::edge_between(int u, int v) const {
  for (auto [w, e] : adjacency_[u])
    if (w == v) return e;
  return -1;
}

std::vector<SurfaceVertex> PLSurface::vertices() const {
  std::vector<SurfaceVertex> out;
  out.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) out.push_back({ids_[i], f_[i], xy_[i]});
  return out;
}

std::vector<SurfaceTriangle> PLSurface::triangles() const {
  std::vector<SurfaceTriangle> out;
  out.reserve(tris_.size());
  for (std::size_t t = 0; t < tris_.size(); ++t)
    out.push_back({{ids_[tris_[t][0]], ids_[tris_[t][1]], ids_[tris_[t][2]]}, area_[t]});
  return out;
}

// ---------------------------------------------------------------------------

PLSurface mesh_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("triangles"))
      throw ParseError("mesh JSON needs \"vertices\" and \"triangles\"");
    std::vector<SurfaceVertex> vs;
    for (const auto& jv : j.at("vertices")) {
      SurfaceVertex v;
      v.id = jv.at("id").get<VertexId>();
      v.f = jv.at("f").get<double>();
      if (jv.contains("xy")) {
        v.xy = jv.at("xy").get<std::vector<double>>();
        if (v.xy.size() != 2 && v.xy.size() != 3) throw ParseError("xy must have 2 or 3 entries");
      }
      vs.push_back(std::move(v));
    }
    std::vector<SurfaceTriangle> ts;
    for (const auto& jt : j.at("triangles")) {
      SurfaceTriangle t;
      auto v = jt.at("v").get<std::vector<VertexId>>();
      if (v.size() != 3) throw ParseError("triangle needs exactly 3 vertices");
      t.v = {v[0], v[1], v[2]};
      t.area = jt.at("area").get<double>();
      ts.push_back(t);
    }
    return PLSurface::build(std::move(vs), std::move(ts));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed mesh JSON: ") + e.what());
  }
}

PLSurface load_mesh(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return mesh_from_json(j);
}

PLSurface load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return load_mesh(in);
}

json mesh_to_json(const PLSurface& s) {
  json vs = json::array();
  for (const auto& v : s.vertices()) {
    json jv = {{"id", v.id}, {"f", v.f}};
    if (!v.xy.empty()) jv["xy"] = v.xy;
    vs.push_back(jv);
  }
  json ts = json::array();
  for (const auto& t : s.triangles()) ts.push_back({{"v", t.v}, {"area", t.area}});
  return {{"vertices", vs}, {"triangles", ts}};
}

// ---------------------------------------------------------------------------

std::string to_string(CriticalKind k) {
  switch (k) {
    case CriticalKind::Min: return "min";
    case CriticalKind::Max: return "max";
    case CriticalKind::Saddle: return "saddle";
    case CriticalKind::BoundaryMin: return "boundary-min";
    case CriticalKind::BoundaryMax: return "boundary-max";
  }
  return "?";
}

VertexClass classify_vertex(const PLSurface& s, int v) {
  VertexClass out;
  const auto& link = s.link(v);
  const int m = static_cast<int>(link.size());
  std::vector<bool> up(m);
  for (int i = 0; i < m; ++i) up[i] = s.below(v, link[i]);

  if (!s.on_boundary(v)) {
    int changes = 0;
    for (int i = 0; i < m; ++i) changes += up[i] != up[(i + 1) % m];
    out.sign_changes = changes;
    if (changes == 2) return out;
    out.critical = true;
    if (changes == 0) {
      out.kind = up[0] ? CriticalKind::Min : CriticalKind::Max;
    } else {
      out.kind = CriticalKind::Saddle;
      if (changes >= 6) out.violation = "DEGENERATE_CRITICAL";
    }
    return out;
  }

  int changes = 0;
  for (int i = 0; i + 1 < m; ++i) changes += up[i] != up[i + 1];
  out.sign_changes = changes;
  if (up.front() != up.back()) {
    if (changes == 1) return out;
    // F restricted to the interior side has a saddle-like fan here
    out.critical = true;
    out.kind = CriticalKind::Saddle;
    out.violation = "BOUNDARY_CRITICAL";
    return out;
  }
  out.critical = true;
  out.kind = up.front() ? CriticalKind::BoundaryMin : CriticalKind::BoundaryMax;
  if (changes > 2) out.violation = "DEGENERATE_CRITICAL";
  return out;
}

ValidationReport validate_simple_morse(const PLSurface& s) {
  ValidationReport r;
  const int n = static_cast<int>(s.vertex_count());
  std::vector<int> crit;
  for (int rk = 0; rk < n; ++rk) {
    const int v = s.vertex_at_rank(rk);
    auto c = classify_vertex(s, v);
    if (!c.critical) continue;
    if (!c.violation.empty()) {
      std::ostringstream msg;
      if (c.violation == "BOUNDARY_CRITICAL")
        msg << "boundary vertex " << s.id(v) << " is a critical point of the field ("
            << c.sign_changes << " sign changes along its link)";
      else
        msg << "vertex " << s.id(v) << " is a degenerate critical point (" << c.sign_changes
            << " sign changes)";
      r.violations.push_back({c.violation, {s.id(v)}, msg.str()});
      continue;
    }
    r.critical_points.push_back({s.id(v), c.kind, s.f(v)});
    crit.push_back(v);
  }
  for (std::size_t i = 0; i + 1 < crit.size(); ++i) {
    std::size_t j = i + 1;
    while (j < crit.size() && s.f(crit[j]) == s.f(crit[i])) ++j;
    if (j > i + 1) {
      Violation viol{"DUPLICATE_CRITICAL_VALUE", {}, ""};
      for (std::size_t k = i; k < j; ++k) viol.vertices.push_back(s.id(crit[k]));
      std::ostringstream msg;
      msg << viol.vertices.size() << " critical vertices share f = " << s.f(crit[i]);
      viol.message = msg.str();
      r.violations.push_back(std::move(viol));
      i = j - 1;
    }
  }
  r.is_simple_morse = r.violations.empty();
  return r;
}

json to_json(const ValidationReport& r) {
  json cps = json::array();
  for (const auto& c : r.critical_points)
    cps.push_back({{"vertex", c.vertex}, {"kind", to_string(c.kind)}, {"f", c.f}});
  json vs = json::array();
  for (const auto& v : r.violations)
    vs.push_back({{"code", v.code}, {"vertices", v.vertices}, {"message", v.message}});
  return {{"is_simple_morse", r.is_simple_morse}, {"critical_points", cps}, {"violations", vs}};
}

TopologySummary topology_summary(const PLSurface& s) {
  TopologySummary t;
  t.euler_characteristic = static_cast<int>(s.vertex_count()) -
                           static_cast<int>(s.edge_count()) +
                           static_cast<int>(s.triangle_count());
  t.boundary_component_count = static_cast<int>(s.boundary_loops().size());
  t.genus = (2 - t.euler_characteristic - t.boundary_component_count) / 2;
  t.total_area = s.total_area();
  return t;
}

json to_json(const TopologySummary& t) {
  return {{"euler_characteristic", t.euler_characteristic},
          {"boundary_component_count", t.boundary_component_count},
          {"genus", t.genus},
          {"total_area", t.total_area}};
}

// ---------------------------------------------------------------------------

namespace {

PLSurface apply(const PLSurface& s, const Relabel& m) {
  std::unordered_map<VertexId, VertexId> map(m.mapping.begin(), m.mapping.end());
  if (map.size() != m.mapping.size()) throw UnsupportedMap("relabeling lists an id twice");
  auto vs = s.vertices();
  std::unordered_map<VertexId, int> used;
  for (auto& v : vs) {
    auto it = map.find(v.id);
    if (it != map.end()) v.id = it->second;
    if (used[v.id]++) throw UnsupportedMap("relabeling is not injective");
  }
  auto ts = s.triangles();
  for (auto& t : ts)
    for (auto& id : t.v) {
      auto it = map.find(id);
      if (it != map.end()) id = it->second;
    }
  return PLSurface::build(std::move(vs), std::move(ts));
}

PLSurface apply(const PLSurface& s, const Shear& m) {
  auto vs = s.vertices();
  for (auto& v : vs) {
    if (v.xy.size() < 2) throw UnsupportedMap("shear needs planar coordinates on every vertex");
    v.xy[1] += m.factor * v.xy[0];
  }
  return PLSurface::build(std::move(vs), s.triangles());
}

PLSurface apply(const PLSurface& s, const BarycentricRefine&) {
  auto vs = s.vertices();
  VertexId next = 0;
  for (const auto& v : vs) next = std::max(next, v.id + 1);
  bool coords = std::all_of(vs.begin(), vs.end(), [](const auto& v) { return !v.xy.empty(); });
  std::vector<SurfaceTriangle> ts;
  for (int t = 0; t < static_cast<int>(s.triangle_count()); ++t) {
    const auto& c = s.triangle(t);
    SurfaceVertex m;
    m.id = next++;
    m.f = (s.f(c[0]) + s.f(c[1]) + s.f(c[2])) / 3.0;
    if (coords) {
      m.xy.assign(s.xy(c[0]).size(), 0.0);
      for (int k = 0; k < 3; ++k)
        for (std::size_t d = 0; d < m.xy.size() && d < s.xy(c[k]).size(); ++d)
          m.xy[d] += s.xy(c[k])[d] / 3.0;
    }
    vs.push_back(m);
    const double a = s.area(t) / 3.0;
    for (int k = 0; k < 3; ++k)
      ts.push_back({{s.id(c[k]), s.id(c[(k + 1) % 3]), m.id}, a});
  }
  return PLSurface::build(std::move(vs), std::move(ts));
}

}  // namespace

PLSurface remap(const PLSurface& s, const MapSpec& spec) {
  return std::visit([&](const auto& m) { return apply(s, m); }, spec);
}

Relabel random_relabel(const PLSurface& s, std::mt19937_64& rng) {
  const int n = static_cast<int>(s.vertex_count());
  std::vector<VertexId> fresh(n);
  std::iota(fresh.begin(), fresh.end(), VertexId{1000});
  std::shuffle(fresh.begin(), fresh.end(), rng);
  Relabel r;
  for (int i = 0; i < n; ++i) r.mapping.emplace_back(s.id(i), fresh[i]);
  return r;
}

}  // namespace reeb
