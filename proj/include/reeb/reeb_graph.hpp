#pragma once

/**
 * Measured Reeb graphs: typed, styled, f-labeled graphs with per-edge
 * measure profiles and cyclic orders at branching boundary vertices.
 */

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "reeb/surface.hpp"

namespace reeb {

enum class VertexType { I = 1, II, III, IV, V, VI, VII };
enum class Orientation { AsInTable, FReversed };
enum class Style { Solid, Dashed };

std::string to_string(VertexType t);
std::string to_string(Orientation o);
std::string to_string(Style s);
VertexType vertex_type_from_string(const std::string& s);
Orientation orientation_from_string(const std::string& s);
Style style_from_string(const std::string& s);

/// Cumulative measure sampled on a uniform grid over [f_lo, f_hi]. The
/// density is taken piecewise constant between samples.
struct MeasureProfile {
  double f_lo = 0.0;
  double f_hi = 1.0;
  std::vector<double> cumulative;

  int samples() const { return static_cast<int>(cumulative.size()) - 1; }
  double mass() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
  double step() const { return (f_hi - f_lo) / samples(); }
  double grid(int k) const { return f_lo + k * step(); }
  /// Measure of [f_lo, x], clamped outside the range.
  double at(double x) const;
  /// Integral of f dmu over the whole edge (trapezoid rule on the samples).
  double moment() const;
  /// Integral of f dmu over [a, b].
  double moment(double a, double b) const;
  /// Profile with K samples and the same piecewise-linear cumulative.
  MeasureProfile resampled(int K) const;
  /// Uniform density profile.
  static MeasureProfile uniform(double f_lo, double f_hi, double mass, int K);
};

struct GraphVertex {
  VertexId id = 0;
  double f = 0.0;
  VertexType type = VertexType::I;
  Orientation orientation = Orientation::AsInTable;
};

struct GraphEdge {
  int id = 0;
  VertexId tail = 0;
  VertexId head = 0;
  Style style = Style::Solid;
  double mass = 0.0;
  MeasureProfile profile;
};

struct MeasuredReebGraph {
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  /// Cyclic successor order of incident dashed edge ids at II/IV vertices.
  std::map<VertexId, std::vector<int>> cyclic_orders;

  int vertex_index(VertexId id) const;
  int edge_index(int id) const;
  const GraphVertex& vertex(VertexId id) const;
  const GraphEdge& edge(int id) const;
  /// Incident edge ids (each once).
  std::vector<int> incident(VertexId v) const;
  std::vector<int> incident(VertexId v, Style s) const;
  VertexId other_end(int edge_id, VertexId v) const;
  double total_mass() const;
  double f_range() const;
};

/// Expected (below, above) incidence of a vertex type as (solid, dashed)
/// counts, after applying the orientation flip.
struct Incidence {
  int below_solid = 0, below_dashed = 0, above_solid = 0, above_dashed = 0;
  bool operator==(const Incidence&) const = default;
};
Incidence expected_incidence(VertexType t, Orientation o);
Incidence observed_incidence(const MeasuredReebGraph& g, VertexId v);

/// Throws InvalidGraph describing the first violated invariant.
void validate_graph(const MeasuredReebGraph& g);

nlohmann::json graph_to_json(const MeasuredReebGraph& g);
/// Parses and validates.
MeasuredReebGraph graph_from_json(const nlohmann::json& j);
MeasuredReebGraph load_graph_file(const std::string& path);

std::string to_dot(const MeasuredReebGraph& g);

}  // namespace reeb
