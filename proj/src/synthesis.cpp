#include <cmath>
#include <deque>
#include <set>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "forms_internal.hpp"
#include "reeb/errors.hpp"

namespace reeb {

namespace {

// Minimum-norm cochain whose circulation around each triangle is area times
// the mean field value.
DiscreteOneForm vortical_part(const PLSurface& s) {
  const int T = static_cast<int>(s.triangle_count()), E = static_cast<int>(s.edge_count());
  std::vector<double> b(T);
  double total = 0.0, lo = s.f(0), hi = s.f(0);
  for (int v = 0; v < static_cast<int>(s.vertex_count()); ++v) {
    lo = std::min(lo, s.f(v));
    hi = std::max(hi, s.f(v));
  }
  for (int t = 0; t < T; ++t) {
    const auto& c = s.triangle(t);
    b[t] = s.area(t) * (s.f(c[0]) + s.f(c[1]) + s.f(c[2])) / 3.0;
    total += b[t];
  }
  const bool closed = s.boundary_loops().empty();
  if (closed && std::abs(total) > 1e-9 * s.total_area() * std::max(1.0, hi - lo))
    throw InfeasibleTarget("the field integrates to " + std::to_string(total) +
                           " over a closed surface");
  const int rows = closed ? T - 1 : T;

  std::vector<Eigen::Triplet<double>> trip;
  for (int t = 0; t < rows; ++t) {
    const auto& c = s.triangle(t);
    for (int k = 0; k < 3; ++k) {
      const int e = s.triangle_edge(t, k);
      trip.emplace_back(t, e, s.edge(e).a == c[k] ? 1.0 : -1.0);
    }
  }
  Eigen::SparseMatrix<double> D(rows, E);
  D.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseMatrix<double> DDt = D * D.transpose();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(DDt);
  if (ldlt.info() != Eigen::Success) throw DataError("triangle incidence system is singular");
  Eigen::VectorXd rhs = Eigen::Map<Eigen::VectorXd>(b.data(), rows);
  const Eigen::VectorXd y = ldlt.solve(rhs);
  const Eigen::VectorXd a = D.transpose() * y;
  return {std::vector<double>(a.data(), a.data() + E)};
}

}  // namespace

std::vector<DiscreteOneForm> closed_cochain_basis(const PLSurface& s) {
  const int V = static_cast<int>(s.vertex_count()), E = static_cast<int>(s.edge_count());
  const int T = static_cast<int>(s.triangle_count());
  std::vector<std::vector<std::pair<int, int>>> vadj(V);
  for (int e = 0; e < E; ++e) {
    vadj[s.edge(e).a].emplace_back(s.edge(e).b, e);
    vadj[s.edge(e).b].emplace_back(s.edge(e).a, e);
  }
  std::vector<char> in_tree(E, 0), seen(V, 0);
  for (int r = 0; r < V; ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    std::deque<int> q{r};
    while (!q.empty()) {
      const int x = q.front();
      q.pop_front();
      for (auto [y, e] : vadj[x])
        if (!seen[y]) {
          seen[y] = 1;
          in_tree[e] = 1;
          q.push_back(y);
        }
    }
  }
  // dual graph: triangles plus node T for the outside
  std::vector<std::vector<int>> edge_tris(E);
  for (int t = 0; t < T; ++t)
    for (int k = 0; k < 3; ++k) edge_tris[s.triangle_edge(t, k)].push_back(t);
  std::vector<std::vector<std::pair<int, int>>> dadj(T + 1);
  for (int e = 0; e < E; ++e) {
    if (in_tree[e]) continue;
    const int p = edge_tris[e][0], q = edge_tris[e].size() > 1 ? edge_tris[e][1] : T;
    dadj[p].emplace_back(q, e);
    dadj[q].emplace_back(p, e);
  }
  const bool closed = s.boundary_loops().empty();
  std::vector<int> parent_edge(T + 1, -1), order;
  std::vector<char> dseen(T + 1, 0);
  const int root = closed ? 0 : T;
  dseen[root] = 1;
  std::deque<int> q{root};
  std::vector<char> in_cotree(E, 0);
  while (!q.empty()) {
    const int x = q.front();
    q.pop_front();
    order.push_back(x);
    for (auto [y, e] : dadj[x])
      if (!dseen[y]) {
        dseen[y] = 1;
        parent_edge[y] = e;
        in_cotree[e] = 1;
        q.push_back(y);
      }
  }
  std::vector<DiscreteOneForm> basis;
  for (int l = 0; l < E; ++l) {
    if (in_tree[l] || in_cotree[l]) continue;
    auto h = zero_form(s);
    h.value[l] = 1.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int t = *it;
      if (t == root) continue;
      const int p = parent_edge[t];
      const auto& c = s.triangle(t);
      double rest = 0.0, sign_p = 0.0;
      for (int k = 0; k < 3; ++k) {
        const int e = s.triangle_edge(t, k);
        const double sg = s.edge(e).a == c[k] ? 1.0 : -1.0;
        if (e == p) sign_p = sg;
        else rest += sg * h.value[e];
      }
      h.value[p] = -rest / sign_p;
    }
    basis.push_back(std::move(h));
  }
  return basis;
}

DiscreteOneForm synthesize_form(const PLSurface& s, const Extraction& ex,
                                const CirculationFunction& target_c, const XiClass& target_xi) {
  const auto& g = ex.graph;
  if (!check_circulation(g, target_c).ok)
    throw InfeasibleTarget("target circulation violates its constraints");

  auto a = vortical_part(s);

  std::vector<detail::Functional> rows;
  std::vector<double> target;
  for (const auto& e : g.edges) {
    if (e.style != Style::Solid) continue;
    const double c = reference_level(s, g, e.id);
    rows.push_back(detail::level_functional(s, ex, e.id, c));
    target.push_back(target_c.limits.at(e.id).first + e.profile.moment(e.profile.f_lo, c));
  }
  const auto basis = dashed_cycle_basis(g);
  if (!basis.empty()) {
    const auto lifted = lift_dashed_graph(s, ex);
    for (const auto& cycle : basis) {
      double value = 0.0;
      try {
        value = evaluate_xi(g, target_xi, cycle);
      } catch (const DataError& err) {
        throw InfeasibleTarget(std::string("target xi: ") + err.what());
      }
      rows.push_back(detail::path_functional(s, lift_cycle(lifted, g, cycle)));
      target.push_back(value);
    }
  }
  if (rows.empty()) return a;

  const int R = static_cast<int>(rows.size()), E = static_cast<int>(s.edge_count());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(R, E);
  Eigen::VectorXd r(R);
  for (int i = 0; i < R; ++i) {
    for (const auto& [e, k] : rows[i]) L(i, e) += k;
    r(i) = target[i] - detail::apply(rows[i], a);
  }
  // closed correction first, then the small non-closed remainder left by
  // the discretization of the field
  const auto H = closed_cochain_basis(s);
  if (!H.empty()) {
    Eigen::MatrixXd B(E, static_cast<Eigen::Index>(H.size()));
    for (std::size_t k = 0; k < H.size(); ++k)
      B.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::VectorXd>(H[k].value.data(), E);
    const Eigen::VectorXd z = (L * B).completeOrthogonalDecomposition().solve(r);
    const Eigen::VectorXd closed_part = B * z;
    for (int e = 0; e < E; ++e) a.value[e] += closed_part(e);
    r -= L * closed_part;
  }
  const Eigen::VectorXd delta = L.completeOrthogonalDecomposition().solve(r);
  if ((L * delta - r).norm() > 1e-8 * std::max(1.0, r.norm()))
    throw InfeasibleTarget("circulation and xi targets are not independent on this mesh");
  for (int e = 0; e < E; ++e) a.value[e] += delta(e);
  return a;
}

}  // namespace reeb
