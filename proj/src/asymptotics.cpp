#include "reeb/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "reeb/errors.hpp"

namespace reeb {

std::string to_string(AsymptoticModel m) {
  switch (m) {
    case AsymptoticModel::Sqrt: return "sqrt";
    case AsymptoticModel::Log: return "log";
    case AsymptoticModel::Linear: return "linear";
  }
  return "?";
}

AsymptoticModel expected_model(VertexType t) {
  switch (t) {
    case VertexType::I:
    case VertexType::II:
    case VertexType::III: return AsymptoticModel::Sqrt;
    case VertexType::IV:
    case VertexType::V:
    case VertexType::VI: return AsymptoticModel::Log;
    case VertexType::VII: return AsymptoticModel::Linear;
  }
  return AsymptoticModel::Linear;
}

namespace {

struct TwoTermFit {
  double a = 0.0;
  double residual = 0.0;
};

// Relative least squares for y = a u(eps) + b w(eps).
TwoTermFit fit(const std::vector<double>& eps, const std::vector<double>& y,
               const std::function<double(double)>& u, const std::function<double(double)>& w) {
  const int n = static_cast<int>(eps.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = u(eps[i]) / y[i];
    A(i, 1) = w(eps[i]) / y[i];
    b(i) = 1.0;
  }
  const Eigen::Vector2d x = A.colPivHouseholderQr().solve(b);
  return {x(0), std::sqrt((A * x - b).squaredNorm() / n)};
}

}  // namespace

AsymptoticFit fit_vertex_asymptotics(const MeasuredReebGraph& g, VertexId vertex, int window) {
  if (window < 3) throw InsufficientSamples("window must be at least 3");
  const auto& v = g.vertex(vertex);
  const auto inc = g.incident(vertex);
  if (inc.empty()) throw InsufficientSamples("vertex has no incident edge");
  // the incident edge with the finest grid, read at its own samples
  int best = -1;
  for (int id : inc) {
    const auto& p = g.edge(id).profile;
    if (p.samples() < window)
      throw InsufficientSamples("edge " + std::to_string(id) + " has " + std::to_string(p.samples()) +
                                " samples, window is " + std::to_string(window));
    if (best < 0 || p.step() < g.edge(best).profile.step()) best = id;
  }
  const auto& edge = g.edge(best);
  const auto& p = edge.profile;
  const int K = p.samples();
  std::vector<double> eps, area;
  for (int k = 1; k <= window; ++k) {
    eps.push_back(k * p.step());
    area.push_back(edge.tail == vertex ? p.cumulative[k] : p.mass() - p.cumulative[K - k]);
  }

  AsymptoticFit out;
  out.vertex = vertex;
  out.model = expected_model(v.type);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < window; ++i) {
    const double x = std::log(eps[i]), y = std::log(area[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.exponent_estimate = (window * sxy - sx * sy) / (window * sxx - sx * sx);

  const std::map<AsymptoticModel, std::pair<std::function<double(double)>, std::function<double(double)>>> terms = {
      {AsymptoticModel::Sqrt, {[](double e) { return std::pow(e, 1.5); }, [](double e) { return e * e; }}},
      {AsymptoticModel::Log, {[](double e) { return -e * std::log(e); }, [](double e) { return e; }}},
      {AsymptoticModel::Linear, {[](double e) { return e; }, [](double e) { return e * e; }}},
  };
  for (const auto& [model, uw] : terms) {
    const auto r = fit(eps, area, uw.first, uw.second);
    out.model_residuals[model] = r.residual;
    if (model == out.model) {
      out.leading_coefficient = r.a;
      out.residual = r.residual;
    }
  }
  return out;
}

}  // namespace reeb
