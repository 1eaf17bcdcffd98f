#pragma once

// Measure asymptotics at graph vertices: the measure of [v, v + eps] on the
// incident edge with the finest grid, fitted on the samples nearest v.

#include <map>
#include <string>

#include "reeb/reeb_graph.hpp"

namespace reeb {

enum class AsymptoticModel { Sqrt, Log, Linear };
std::string to_string(AsymptoticModel m);

/// Model expected for a vertex type: I/II/III sqrt, IV/V/VI log, VII linear.
AsymptoticModel expected_model(VertexType t);

struct AsymptoticFit {
  VertexId vertex = 0;
  AsymptoticModel model = AsymptoticModel::Linear;
  /// Coefficient a of the leading term of `model`.
  double leading_coefficient = 0.0;
  /// Slope of log(area) against log(eps).
  double exponent_estimate = 0.0;
  /// RMS relative residual of `model`.
  double residual = 0.0;
  /// RMS relative residual of every model:
  ///   sqrt   a eps^{3/2} + b eps^2
  ///   log    a eps ln(1/eps) + b eps
  ///   linear a eps + b eps^2
  std::map<AsymptoticModel, double> model_residuals;
};

/// Throws InsufficientSamples when window < 3 or an incident edge has fewer
/// than `window` samples.
AsymptoticFit fit_vertex_asymptotics(const MeasuredReebGraph& g, VertexId vertex, int window = 8);

}  // namespace reeb
