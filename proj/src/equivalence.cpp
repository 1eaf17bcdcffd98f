#include "reeb/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <tuple>

#include "reeb/errors.hpp"

namespace reeb {

std::string to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::F_VALUES: return "F_VALUES";
    case ObstructionKind::TYPES: return "TYPES";
    case ObstructionKind::ADJACENCY: return "ADJACENCY";
    case ObstructionKind::STYLE: return "STYLE";
    case ObstructionKind::CYCLIC_ORDER: return "CYCLIC_ORDER";
    case ObstructionKind::MEASURE: return "MEASURE";
    case ObstructionKind::CIRCULATION: return "CIRCULATION";
    case ObstructionKind::XI: return "XI";
  }
  return "?";
}

nlohmann::json to_json(const GraphIsomorphism& iso) {
  nlohmann::json j;
  j["isomorphic"] = iso.isomorphic();
  nlohmann::json vm = nlohmann::json::object(), em = nlohmann::json::object();
  for (const auto& [a, b] : iso.vertex_map) vm[std::to_string(a)] = b;
  for (const auto& [a, b] : iso.edge_map) em[std::to_string(a)] = b;
  j["vertex_map"] = vm;
  j["edge_map"] = em;
  if (iso.obstruction)
    j["obstruction"] = {{"kind", to_string(iso.obstruction->kind)}, {"detail", iso.obstruction->detail}};
  else
    j["obstruction"] = nullptr;
  return j;
}

namespace {

using Check = std::function<std::optional<Obstruction>(const std::map<int, int>&)>;

std::optional<Obstruction> fail(ObstructionKind k, const std::string& detail) {
  return Obstruction{k, detail};
}

bool same_cycle(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  const auto it = std::find(b.begin(), b.end(), a[0]);
  if (it == b.end()) return false;
  const std::size_t off = static_cast<std::size_t>(it - b.begin());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[(off + i) % b.size()]) return false;
  return true;
}

std::optional<Obstruction> check_orders(const MeasuredReebGraph& g1, const MeasuredReebGraph& g2,
                                        const std::map<VertexId, VertexId>& vmap,
                                        const std::map<int, int>& emap) {
  for (const auto& v : g1.vertices) {
    const auto o1 = g1.cyclic_orders.find(v.id);
    const auto o2 = g2.cyclic_orders.find(vmap.at(v.id));
    const bool h1 = o1 != g1.cyclic_orders.end(), h2 = o2 != g2.cyclic_orders.end();
    if (h1 != h2) return fail(ObstructionKind::CYCLIC_ORDER, "vertex " + std::to_string(v.id) + " has an order in one graph only");
    if (!h1) continue;
    std::vector<int> mapped;
    for (int id : o1->second) mapped.push_back(emap.at(id));
    if (!same_cycle(mapped, o2->second))
      return fail(ObstructionKind::CYCLIC_ORDER, "cyclic order differs at vertex " + std::to_string(v.id));
  }
  return std::nullopt;
}

std::optional<Obstruction> check_measures(const MeasuredReebGraph& g1, const MeasuredReebGraph& g2,
                                          const std::map<int, int>& emap, double tol) {
  for (const auto& e1 : g1.edges) {
    const auto& e2 = g2.edge(emap.at(e1.id));
    const double m1 = e1.profile.mass(), m2 = e2.profile.mass();
    const double scale = std::max(m1, m2);
    if (std::abs(m1 - m2) > tol * scale) {
      std::ostringstream os;
      os << "mass of edge " << e1.id << ": " << m1 << " vs " << m2;
      return fail(ObstructionKind::MEASURE, os.str());
    }
    const int K = std::max(e1.profile.samples(), e2.profile.samples());
    const auto p1 = e1.profile.resampled(K), p2 = e2.profile.resampled(K);
    for (int k = 0; k <= K; ++k)
      if (std::abs(p1.cumulative[k] - p2.cumulative[k]) > tol * scale)
        return fail(ObstructionKind::MEASURE, "profile of edge " + std::to_string(e1.id) + " differs at sample " +
                                                  std::to_string(k));
  }
  return std::nullopt;
}

// Vertex bijection forced by f order, adjacency and style checks, then a
// search over permutations of parallel edges with `extra` as the final test.
GraphIsomorphism match_impl(const MeasuredReebGraph& g1, const MeasuredReebGraph& g2,
                            const MatchTolerances& tol, const Check& extra) {
  GraphIsomorphism iso;
  double tol_f = tol.tol_f;
  if (tol_f < 0) tol_f = 1e-9 * std::max({g1.f_range(), g2.f_range(), 1e-300});

  auto ambiguous = [&](const MeasuredReebGraph& a, const MeasuredReebGraph& b) {
    for (const auto& v : a.vertices) {
      int close = 0;
      for (const auto& w : b.vertices) close += std::abs(v.f - w.f) <= tol_f;
      if (close > 1)
        throw AmbiguousMatching("several vertices lie within tol_f of f = " + std::to_string(v.f));
    }
  };
  ambiguous(g1, g2);
  ambiguous(g2, g1);

  if (g1.vertices.size() != g2.vertices.size()) {
    iso.obstruction = Obstruction{ObstructionKind::F_VALUES, "vertex counts differ"};
    return iso;
  }
  auto by_f = [](const MeasuredReebGraph& g) {
    std::vector<const GraphVertex*> v;
    for (const auto& x : g.vertices) v.push_back(&x);
    std::sort(v.begin(), v.end(), [](auto a, auto b) { return std::tie(a->f, a->id) < std::tie(b->f, b->id); });
    return v;
  };
  const auto s1 = by_f(g1), s2 = by_f(g2);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (std::abs(s1[i]->f - s2[i]->f) > tol_f) {
      std::ostringstream os;
      os << "no vertex at f = " << s1[i]->f << " (nearest in order: " << s2[i]->f << ")";
      iso.obstruction = Obstruction{ObstructionKind::F_VALUES, os.str()};
      return iso;
    }
    iso.vertex_map[s1[i]->id] = s2[i]->id;
  }
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (s1[i]->type != s2[i]->type || s1[i]->orientation != s2[i]->orientation) {
      iso.obstruction = Obstruction{ObstructionKind::TYPES, "vertex " + std::to_string(s1[i]->id) + " is " +
                                                                to_string(s1[i]->type) + " " + to_string(s1[i]->orientation) +
                                                                " vs " + to_string(s2[i]->type) + " " +
                                                                to_string(s2[i]->orientation)};
      return iso;
    }
  }

  using Key = std::tuple<VertexId, VertexId, int>;  // mapped tail, mapped head, style
  std::map<Key, std::vector<int>> groups1, groups2;
  std::map<std::pair<VertexId, VertexId>, int> pairs1, pairs2;
  for (const auto& e : g1.edges) {
    const VertexId t = iso.vertex_map.at(e.tail), h = iso.vertex_map.at(e.head);
    groups1[{t, h, static_cast<int>(e.style)}].push_back(e.id);
    ++pairs1[{std::min(t, h), std::max(t, h)}];
  }
  for (const auto& e : g2.edges) {
    groups2[{e.tail, e.head, static_cast<int>(e.style)}].push_back(e.id);
    ++pairs2[{std::min(e.tail, e.head), std::max(e.tail, e.head)}];
  }
  if (g1.edges.size() != g2.edges.size() || pairs1 != pairs2) {
    iso.obstruction = Obstruction{ObstructionKind::ADJACENCY, "edge incidences differ"};
    return iso;
  }
  if (groups1.size() != groups2.size() ||
      !std::equal(groups1.begin(), groups1.end(), groups2.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first && a.second.size() == b.second.size(); })) {
    iso.obstruction = Obstruction{ObstructionKind::STYLE, "edge styles differ"};
    return iso;
  }

  std::vector<std::pair<std::vector<int>, std::vector<int>>> slots;
  for (const auto& [key, ids] : groups1) slots.emplace_back(ids, groups2.at(key));
  std::map<int, int> emap;
  std::optional<Obstruction> deepest;
  std::map<int, int> deepest_map;

  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == slots.size()) {
      auto ob = check_orders(g1, g2, iso.vertex_map, emap);
      if (!ob) ob = check_measures(g1, g2, emap, tol.tol_mass);
      if (!ob && extra) ob = extra(emap);
      if (!ob) return true;
      if (!deepest || ob->kind > deepest->kind) {
        deepest = ob;
        deepest_map = emap;
      }
      return false;
    }
    auto target = slots[k].second;
    std::sort(target.begin(), target.end());
    do {
      for (std::size_t i = 0; i < target.size(); ++i) emap[slots[k].first[i]] = target[i];
      if (search(k + 1)) return true;
    } while (std::next_permutation(target.begin(), target.end()));
    return false;
  };
  if (search(0)) {
    iso.edge_map = emap;
  } else {
    iso.edge_map = deepest_map;
    iso.obstruction = deepest;
  }
  return iso;
}

}  // namespace

GraphIsomorphism match_measured(const MeasuredReebGraph& g1, const MeasuredReebGraph& g2,
                                const MatchTolerances& tol) {
  return match_impl(g1, g2, tol, nullptr);
}

GraphIsomorphism match_augmented(const AugmentedCirculationGraph& a1,
                                 const AugmentedCirculationGraph& a2, const MatchTolerances& tol) {
  auto close = [&](double x, double y) {
    return std::abs(x - y) <= tol.tol_circulation * std::max({1.0, std::abs(x), std::abs(y)});
  };
  auto transport = [](const std::vector<int>& cycle, const std::map<int, int>& m) {
    std::vector<int> out;
    for (int s : cycle) out.push_back(s > 0 ? m.at(s) : -m.at(-s));
    return out;
  };
  auto xi_agrees = [&](const AugmentedCirculationGraph& x, const AugmentedCirculationGraph& y,
                       const std::map<int, int>& m) -> std::optional<Obstruction> {
    for (std::size_t i = 0; i < x.xi.basis.size(); ++i) {
      double value = 0.0;
      try {
        value = evaluate_xi(y.graph, y.xi, transport(x.xi.basis[i], m));
      } catch (const DataError& e) {
        return fail(ObstructionKind::XI, std::string("basis cycle not comparable: ") + e.what());
      }
      if (!close(value, x.xi.coords[i])) {
        std::ostringstream os;
        os << "xi on basis cycle " << i << ": " << x.xi.coords[i] << " vs " << value;
        return fail(ObstructionKind::XI, os.str());
      }
    }
    return std::nullopt;
  };
  const Check extra = [&](const std::map<int, int>& emap) -> std::optional<Obstruction> {
    const auto& c1 = a1.circulation.limits;
    const auto& c2 = a2.circulation.limits;
    if (c1.size() != c2.size())
      return fail(ObstructionKind::CIRCULATION, "circulations cover different edge sets");
    for (const auto& [id, lim] : c1) {
      const auto it = c2.find(emap.at(id));
      if (it == c2.end()) return fail(ObstructionKind::CIRCULATION, "edge " + std::to_string(id) + " has no circulation");
      if (!close(lim.first, it->second.first) || !close(lim.second, it->second.second)) {
        std::ostringstream os;
        os << "circulation of edge " << id << ": (" << lim.first << ", " << lim.second << ") vs ("
           << it->second.first << ", " << it->second.second << ")";
        return fail(ObstructionKind::CIRCULATION, os.str());
      }
    }
    if (auto ob = xi_agrees(a1, a2, emap)) return ob;
    std::map<int, int> inverse;
    for (const auto& [a, b] : emap) inverse[b] = a;
    return xi_agrees(a2, a1, inverse);
  };
  return match_impl(a1.graph, a2.graph, tol, extra);
}

}  // namespace reeb
