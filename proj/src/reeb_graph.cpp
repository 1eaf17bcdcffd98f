#include "reeb/reeb_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "reeb/errors.hpp"

namespace reeb {

using nlohmann::json;

std::string to_string(VertexType t) {
  static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII"};
  return names[static_cast<int>(t) - 1];
}
std::string to_string(Orientation o) {
  return o == Orientation::AsInTable ? "as-in-table" : "f-reversed";
}
std::string to_string(Style s) { return s == Style::Solid ? "solid" : "dashed"; }

VertexType vertex_type_from_string(const std::string& s) {
  static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII"};
  for (int i = 0; i < 7; ++i)
    if (s == names[i]) return static_cast<VertexType>(i + 1);
  throw ParseError("unknown vertex type " + s);
}
Orientation orientation_from_string(const std::string& s) {
  if (s == "as-in-table") return Orientation::AsInTable;
  if (s == "f-reversed") return Orientation::FReversed;
  throw ParseError("unknown orientation " + s);
}
Style style_from_string(const std::string& s) {
  if (s == "solid") return Style::Solid;
  if (s == "dashed") return Style::Dashed;
  throw ParseError("unknown edge style " + s);
}

// ---------------------------------------------------------------------------

double MeasureProfile::at(double x) const {
  const int K = samples();
  if (x <= f_lo) return 0.0;
  if (x >= f_hi) return mass();
  const double t = (x - f_lo) / step();
  const int k = std::min(K - 1, static_cast<int>(std::floor(t)));
  const double r = t - k;
  return cumulative[k] + r * (cumulative[k + 1] - cumulative[k]);
}

double MeasureProfile::moment() const {
  double m = 0.0;
  for (int k = 0; k < samples(); ++k)
    m += 0.5 * (grid(k) + grid(k + 1)) * (cumulative[k + 1] - cumulative[k]);
  return m;
}

double MeasureProfile::moment(double a, double b) const {
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  a = std::max(a, f_lo);
  b = std::min(b, f_hi);
  if (a >= b) return 0.0;
  const double h = step();
  double m = 0.0;
  for (int k = 0; k < samples(); ++k) {
    const double lo = std::max(a, grid(k)), hi = std::min(b, grid(k + 1));
    if (lo >= hi) continue;
    const double rho = (cumulative[k + 1] - cumulative[k]) / h;
    m += rho * 0.5 * (hi * hi - lo * lo);
  }
  return sign * m;
}

MeasureProfile MeasureProfile::resampled(int K) const {
  MeasureProfile p{f_lo, f_hi, std::vector<double>(K + 1)};
  for (int k = 0; k <= K; ++k) p.cumulative[k] = at(p.grid(k));
  p.cumulative[0] = 0.0;
  p.cumulative[K] = mass();
  return p;
}

MeasureProfile MeasureProfile::uniform(double f_lo, double f_hi, double mass, int K) {
  MeasureProfile p{f_lo, f_hi, std::vector<double>(K + 1)};
  for (int k = 0; k <= K; ++k) p.cumulative[k] = mass * k / K;
  return p;
}

// ---------------------------------------------------------------------------

int MeasuredReebGraph::vertex_index(VertexId id) const {
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
    if (vertices[i].id == id) return i;
  return -1;
}

int MeasuredReebGraph::edge_index(int id) const {
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    if (edges[i].id == id) return i;
  return -1;
}

const GraphVertex& MeasuredReebGraph::vertex(VertexId id) const {
  const int i = vertex_index(id);
  if (i < 0) throw InvalidGraph("no vertex " + std::to_string(id));
  return vertices[i];
}

const GraphEdge& MeasuredReebGraph::edge(int id) const {
  const int i = edge_index(id);
  if (i < 0) throw InvalidGraph("no edge " + std::to_string(id));
  return edges[i];
}

std::vector<int> MeasuredReebGraph::incident(VertexId v) const {
  std::vector<int> out;
  for (const auto& e : edges)
    if (e.tail == v || e.head == v) out.push_back(e.id);
  return out;
}

std::vector<int> MeasuredReebGraph::incident(VertexId v, Style s) const {
  std::vector<int> out;
  for (const auto& e : edges)
    if ((e.tail == v || e.head == v) && e.style == s) out.push_back(e.id);
  return out;
}

VertexId MeasuredReebGraph::other_end(int edge_id, VertexId v) const {
  const auto& e = edge(edge_id);
  return e.tail == v ? e.head : e.tail;
}

double MeasuredReebGraph::total_mass() const {
  double m = 0.0;
  for (const auto& e : edges) m += e.mass;
  return m;
}

double MeasuredReebGraph::f_range() const {
  if (vertices.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(vertices.begin(), vertices.end(),
                                      [](const auto& a, const auto& b) { return a.f < b.f; });
  return hi->f - lo->f;
}

// ---------------------------------------------------------------------------

Incidence expected_incidence(VertexType t, Orientation o) {
  Incidence i;
  switch (t) {
    case VertexType::I: i.above_dashed = 1; break;
    case VertexType::II: i.below_dashed = 2; i.above_dashed = 1; break;
    case VertexType::III: i.below_dashed = 1; i.above_solid = 1; break;
    case VertexType::IV: i.below_dashed = 2; i.above_dashed = 2; break;
    case VertexType::V: i.below_solid = 1; i.below_dashed = 1; i.above_dashed = 1; break;
    case VertexType::VI: i.below_solid = 2; i.above_solid = 1; break;
    case VertexType::VII: i.above_solid = 1; break;
  }
  if (o == Orientation::FReversed) {
    std::swap(i.below_solid, i.above_solid);
    std::swap(i.below_dashed, i.above_dashed);
  }
  return i;
}

Incidence observed_incidence(const MeasuredReebGraph& g, VertexId v) {
  Incidence i;
  for (const auto& e : g.edges) {
    const bool solid = e.style == Style::Solid;
    if (e.head == v) (solid ? i.below_solid : i.below_dashed)++;
    if (e.tail == v) (solid ? i.above_solid : i.above_dashed)++;
  }
  return i;
}

void validate_graph(const MeasuredReebGraph& g) {
  auto fail = [](const std::string& m) { throw InvalidGraph(m); };
  if (g.vertices.empty()) fail("graph has no vertices");
  std::set<VertexId> vids;
  for (const auto& v : g.vertices) {
    if (!vids.insert(v.id).second) fail("duplicate vertex id " + std::to_string(v.id));
    if (!std::isfinite(v.f)) fail("non-finite f at vertex " + std::to_string(v.id));
    if (v.type == VertexType::IV && v.orientation == Orientation::FReversed)
      fail("type IV is its own mirror; orientation must be as-in-table");
  }
  std::set<int> eids;
  for (const auto& e : g.edges) {
    const std::string tag = "edge " + std::to_string(e.id);
    if (e.id <= 0) fail(tag + ": edge ids must be positive");
    if (!eids.insert(e.id).second) fail("duplicate " + tag);
    if (!vids.count(e.tail) || !vids.count(e.head)) fail(tag + " has an unknown endpoint");
    const double ft = g.vertex(e.tail).f, fh = g.vertex(e.head).f;
    if (!(ft < fh)) fail(tag + " does not increase in f");
    if (!(e.mass > 0.0) || !std::isfinite(e.mass)) fail(tag + " has non-positive mass");
    const auto& c = e.profile.cumulative;
    if (c.size() < 2) fail(tag + " needs at least two cumulative samples");
    if (std::abs(c.front()) > 1e-12 * e.mass) fail(tag + " cumulative must start at 0");
    if (std::abs(c.back() - e.mass) > 1e-9 * e.mass) fail(tag + " cumulative must end at mass");
    for (std::size_t k = 0; k + 1 < c.size(); ++k)
      if (!(c[k + 1] > c[k])) fail(tag + " cumulative is not strictly increasing");
  }
  for (const auto& v : g.vertices) {
    if (observed_incidence(g, v.id) != expected_incidence(v.type, v.orientation))
      fail("vertex " + std::to_string(v.id) + " incidence does not match type " +
           to_string(v.type) + " (" + to_string(v.orientation) + ")");
    auto dashed = g.incident(v.id, Style::Dashed);
    auto it = g.cyclic_orders.find(v.id);
    if (dashed.size() >= 3) {
      if (it == g.cyclic_orders.end()) fail("missing cyclic order at vertex " + std::to_string(v.id));
      auto a = it->second;
      std::sort(a.begin(), a.end());
      std::sort(dashed.begin(), dashed.end());
      if (a != dashed)
        fail("cyclic order at vertex " + std::to_string(v.id) +
             " is not a permutation of its dashed edges");
    } else if (it != g.cyclic_orders.end()) {
      fail("cyclic order given at vertex " + std::to_string(v.id) +
           " with fewer than three dashed edges");
    }
  }
  for (const auto& [v, order] : g.cyclic_orders) {
    (void)order;
    if (!vids.count(v)) fail("cyclic order at unknown vertex " + std::to_string(v));
  }
  // connectivity
  std::set<VertexId> seen{g.vertices.front().id};
  std::vector<VertexId> stack{g.vertices.front().id};
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (const auto& e : g.edges) {
      VertexId w;
      if (e.tail == u) w = e.head;
      else if (e.head == u) w = e.tail;
      else continue;
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  if (seen.size() != vids.size()) fail("graph is disconnected");
}

// ---------------------------------------------------------------------------

json graph_to_json(const MeasuredReebGraph& g) {
  json vs = json::array();
  for (const auto& v : g.vertices)
    vs.push_back({{"id", v.id},
                  {"f", v.f},
                  {"type", to_string(v.type)},
                  {"orientation", to_string(v.orientation)}});
  json es = json::array();
  for (const auto& e : g.edges)
    es.push_back({{"id", e.id},
                  {"tail", e.tail},
                  {"head", e.head},
                  {"style", to_string(e.style)},
                  {"mass", e.mass},
                  {"cumulative", e.profile.cumulative}});
  json co = json::object();
  for (const auto& [v, order] : g.cyclic_orders) co[std::to_string(v)] = order;
  return {{"vertices", vs}, {"edges", es}, {"cyclic_orders", co}};
}

MeasuredReebGraph graph_from_json(const json& j) {
  MeasuredReebGraph g;
  try {
    for (const auto& jv : j.at("vertices")) {
      GraphVertex v;
      v.id = jv.at("id").get<VertexId>();
      v.f = jv.at("f").get<double>();
      v.type = vertex_type_from_string(jv.at("type").get<std::string>());
      v.orientation = orientation_from_string(jv.value("orientation", std::string("as-in-table")));
      g.vertices.push_back(v);
    }
    for (const auto& je : j.at("edges")) {
      GraphEdge e;
      e.id = je.at("id").get<int>();
      e.tail = je.at("tail").get<VertexId>();
      e.head = je.at("head").get<VertexId>();
      e.style = style_from_string(je.at("style").get<std::string>());
      e.mass = je.at("mass").get<double>();
      if (je.contains("cumulative"))
        e.profile.cumulative = je.at("cumulative").get<std::vector<double>>();
      else
        e.profile.cumulative = {0.0, e.mass};
      g.edges.push_back(std::move(e));
    }
    if (j.contains("cyclic_orders"))
      for (const auto& [k, order] : j.at("cyclic_orders").items())
        g.cyclic_orders[std::stoll(k)] = order.get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed graph JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("cyclic_orders keys must be vertex ids");
  }
  for (auto& e : g.edges) {
    const int t = g.vertex_index(e.tail), h = g.vertex_index(e.head);
    if (t < 0 || h < 0) throw InvalidGraph("edge " + std::to_string(e.id) + " has an unknown endpoint");
    e.profile.f_lo = g.vertices[t].f;
    e.profile.f_hi = g.vertices[h].f;
  }
  validate_graph(g);
  return g;
}

MeasuredReebGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return graph_from_json(j);
}

std::string to_dot(const MeasuredReebGraph& g) {
  std::ostringstream out;
  out << "digraph reeb {\n  rankdir=BT;\n  node [shape=circle];\n";
  auto order = g.vertices;
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.f < b.f; });
  for (const auto& v : order)
    out << "  v" << v.id << " [label=\"" << v.id << "\\n" << to_string(v.type)
        << (v.orientation == Orientation::FReversed ? "'" : "") << "\\nf=" << v.f << "\"];\n";
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    out << "  v" << order[i].id << " -> v" << order[i + 1].id << " [style=invis];\n";
  for (const auto& e : g.edges)
    out << "  v" << e.tail << " -> v" << e.head << " [label=\"" << e.id << "\", style="
        << (e.style == Style::Solid ? "solid" : "dashed") << ", arrowhead=none];\n";
  out << "}\n";
  return out.str();
}

}  // namespace reeb
