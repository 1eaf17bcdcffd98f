#include "reeb/circulation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "reeb/errors.hpp"
#include "reeb/graph_core.hpp"

namespace reeb {

using Rational = boost::multiprecision::cpp_rational;

nlohmann::json to_json(const CirculationFunction& c) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [id, lim] : c.limits) j[std::to_string(id)] = {lim.first, lim.second};
  return j;
}

CirculationFunction circulation_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("circulation must be an object");
  CirculationFunction c;
  for (const auto& [key, val] : j.items()) {
    if (!val.is_array() || val.size() != 2) throw ParseError("circulation entry must be a pair");
    int id = 0;
    try {
      id = std::stoi(key);
    } catch (const std::exception&) {
      throw ParseError("bad edge id in circulation: " + key);
    }
    c.limits[id] = {val[0].get<double>(), val[1].get<double>()};
  }
  return c;
}

nlohmann::json to_json(const XiClass& x) { return {{"basis", x.basis}, {"coords", x.coords}}; }

XiClass xi_from_json(const nlohmann::json& j) {
  XiClass x;
  try {
    x.basis = j.at("basis").get<std::vector<std::vector<int>>>();
    x.coords = j.at("coords").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad xi: ") + e.what());
  }
  if (x.basis.size() != x.coords.size()) throw ParseError("xi basis and coords differ in size");
  return x;
}

nlohmann::json to_json(const AugmentedCirculationGraph& a) {
  auto j = graph_to_json(a.graph);
  j["circulation"] = to_json(a.circulation);
  j["xi"] = to_json(a.xi);
  return j;
}

AugmentedCirculationGraph augmented_from_json(const nlohmann::json& j) {
  AugmentedCirculationGraph a;
  a.graph = graph_from_json(j);
  if (j.contains("circulation")) a.circulation = circulation_from_json(j.at("circulation"));
  if (j.contains("xi")) a.xi = xi_from_json(j.at("xi"));
  return a;
}

double edge_moment(const MeasuredReebGraph& g, int edge_id) { return g.edge(edge_id).profile.moment(); }

namespace {

bool all_solid(const MeasuredReebGraph& g, VertexId v) {
  const auto inc = g.incident(v);
  return !inc.empty() && std::all_of(inc.begin(), inc.end(), [&](int id) {
    return g.edge(id).style == Style::Solid;
  });
}

}  // namespace

CirculationCheck check_circulation(const MeasuredReebGraph& g, const CirculationFunction& c,
                                   double tol) {
  std::set<int> solid;
  for (const auto& e : g.edges)
    if (e.style == Style::Solid) solid.insert(e.id);
  std::set<int> given;
  for (const auto& [id, lim] : c.limits) given.insert(id);
  if (solid != given) throw DataError("circulation must cover exactly the solid edges");

  CirculationCheck out;
  for (int id : solid) {
    const auto [t, h] = c.limits.at(id);
    out.residuals.emplace_back("newton_leibniz:" + std::to_string(id), h - t - edge_moment(g, id));
  }
  for (const auto& v : g.vertices) {
    if (!all_solid(g, v.id)) continue;
    double r = 0.0;
    for (int id : g.incident(v.id))
      r += g.edge(id).head == v.id ? c.limits.at(id).second : -c.limits.at(id).first;
    out.residuals.emplace_back("kirchhoff:" + std::to_string(v.id), r);
  }
  for (const auto& [name, r] : out.residuals) out.max_residual = std::max(out.max_residual, std::abs(r));
  out.ok = out.max_residual <= tol;
  return out;
}

CirculationSolution solve_circulations(const MeasuredReebGraph& g) {
  std::vector<int> solid;
  bool has_dashed = false;
  for (const auto& e : g.edges) {
    if (e.style == Style::Solid) solid.push_back(e.id);
    else has_dashed = true;
  }
  std::map<int, int> col;
  for (std::size_t i = 0; i < solid.size(); ++i) col[solid[i]] = static_cast<int>(i);

  if (!has_dashed) {
    double total = 0.0;
    for (int id : solid) total += edge_moment(g, id);
    const double tol = 1e-9 * g.total_mass() * g.f_range();
    if (std::abs(total) > tol)
      throw NoSolution("total moment " + std::to_string(total) + " is not zero", total);
  }

  // Kirchhoff rows over the tail limits; head = tail + moment
  std::vector<std::vector<Rational>> A;
  std::vector<double> b;
  for (const auto& v : g.vertices) {
    if (!all_solid(g, v.id)) continue;
    std::vector<Rational> row(solid.size(), 0);
    double rhs = 0.0;
    for (int id : g.incident(v.id)) {
      if (g.edge(id).head == v.id) {
        row[col[id]] += 1;
        rhs -= edge_moment(g, id);
      } else {
        row[col[id]] -= 1;
      }
    }
    A.push_back(std::move(row));
    b.push_back(rhs);
  }
  const int rows = static_cast<int>(A.size()), n = static_cast<int>(solid.size());
  // reduce [A | I] so that the right block records the row operations
  for (int r = 0; r < rows; ++r) {
    A[r].resize(n + rows, 0);
    A[r][n + r] = 1;
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < rows; ++c) {
    int p = r;
    while (p < rows && A[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    const Rational inv = 1 / A[r][c];
    for (auto& x : A[r]) x *= inv;
    for (int q = 0; q < rows; ++q) {
      if (q == r || A[q][c] == 0) continue;
      const Rational k = A[q][c];
      for (int x = 0; x < n + rows; ++x) A[q][x] -= k * A[r][x];
    }
    pivot_col.push_back(c);
    ++r;
  }
  auto transformed_rhs = [&](int row) {
    long double acc = 0;
    for (int k = 0; k < rows; ++k)
      if (A[row][n + k] != 0) acc += static_cast<long double>(A[row][n + k].convert_to<double>()) * b[k];
    return static_cast<double>(acc);
  };
  const double scale = std::max(1.0, g.total_mass() * g.f_range());
  for (int z = r; z < rows; ++z) {
    const double defect = transformed_rhs(z);
    if (std::abs(defect) > 1e-9 * scale)
      throw NoSolution("Kirchhoff constraints are inconsistent", defect);
  }

  CirculationSolution sol;
  std::vector<double> t(n, 0.0);
  for (int k = 0; k < r; ++k) t[pivot_col[k]] = transformed_rhs(k);
  for (int i = 0; i < n; ++i)
    sol.particular.limits[solid[i]] = {t[i], t[i] + edge_moment(g, solid[i])};

  std::set<int> pivots(pivot_col.begin(), pivot_col.end());
  for (int free = 0; free < n; ++free) {
    if (pivots.count(free)) continue;
    std::vector<double> d(n, 0.0);
    d[free] = 1.0;
    for (int k = 0; k < r; ++k) d[pivot_col[k]] = -A[k][free].convert_to<double>();
    CirculationFunction delta;
    for (int i = 0; i < n; ++i) delta.limits[solid[i]] = {d[i], d[i]};
    sol.basis.push_back(std::move(delta));
  }
  return sol;
}

std::vector<std::vector<int>> dashed_cycle_basis(const MeasuredReebGraph& g) {
  std::map<VertexId, int> parent_edge;  // 0 at roots
  std::map<VertexId, VertexId> parent;
  std::map<VertexId, int> depth;
  std::set<int> tree;
  for (const auto& root : g.vertices) {
    if (parent.count(root.id) || g.incident(root.id, Style::Dashed).empty()) continue;
    parent[root.id] = root.id;
    parent_edge[root.id] = 0;
    depth[root.id] = 0;
    std::deque<VertexId> queue{root.id};
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (int id : g.incident(v, Style::Dashed)) {
        const VertexId w = g.other_end(id, v);
        if (parent.count(w)) continue;
        parent[w] = v;
        parent_edge[w] = id;
        depth[w] = depth[v] + 1;
        tree.insert(id);
        queue.push_back(w);
      }
    }
  }
  auto step = [&](int id, VertexId from) { return g.edge(id).tail == from ? id : -id; };
  std::vector<std::vector<int>> basis;
  for (const auto& e : g.edges) {
    if (e.style != Style::Dashed || tree.count(e.id)) continue;
    std::vector<int> cycle{e.id};
    // from the head back to the tail through the tree
    VertexId x = e.head, y = e.tail;
    std::vector<int> down;
    while (x != y) {
      if (depth[x] >= depth[y]) {
        cycle.push_back(step(parent_edge[x], x));
        x = parent[x];
      } else {
        down.push_back(step(parent_edge[y], parent[y]));
        y = parent[y];
      }
    }
    cycle.insert(cycle.end(), down.rbegin(), down.rend());
    basis.push_back(std::move(cycle));
  }
  return basis;
}

double evaluate_xi(const MeasuredReebGraph& g, const XiClass& xi, const std::vector<int>& cycle) {
  std::map<int, int> row;
  for (const auto& e : g.edges)
    if (e.style == Style::Dashed) row.emplace(e.id, static_cast<int>(row.size()));
  auto vec = [&](const std::vector<int>& c) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(row.size()));
    for (int s : c) {
      auto it = row.find(std::abs(s));
      if (it == row.end()) throw DataError("cycle uses a non-dashed edge " + std::to_string(s));
      v(it->second) += s > 0 ? 1.0 : -1.0;
    }
    return v;
  };
  const Eigen::VectorXd target = vec(cycle);
  if (xi.basis.empty()) {
    if (target.norm() > 1e-9) throw DataError("cycle is not spanned by the xi basis");
    return 0.0;
  }
  Eigen::MatrixXd B(static_cast<Eigen::Index>(row.size()), static_cast<Eigen::Index>(xi.basis.size()));
  for (std::size_t i = 0; i < xi.basis.size(); ++i) B.col(static_cast<Eigen::Index>(i)) = vec(xi.basis[i]);
  const Eigen::VectorXd x = B.colPivHouseholderQr().solve(target);
  if ((B * x - target).norm() > 1e-9) throw DataError("cycle is not spanned by the xi basis");
  double value = 0.0;
  for (std::size_t i = 0; i < xi.coords.size(); ++i) value += x(static_cast<Eigen::Index>(i)) * xi.coords[i];
  return value;
}

int orbit_moduli_dimension(const MeasuredReebGraph& g) {
  const auto h = homology_dims(g);
  return h.h1_rel + h.h1_dashed;
}

}  // namespace reeb
