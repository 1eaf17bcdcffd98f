#pragma once

// Discrete one-forms on PL surfaces and the data they induce on the Reeb
// graph of a field: circulation functions on solid edges, the class xi on
// the dashed subgraph, and synthesis of forms with prescribed data.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "reeb/extraction.hpp"
#include "reeb/reeb_graph.hpp"
#include "reeb/surface.hpp"

namespace reeb {

/// Cochain on mesh edges: value[e] is the integral along MeshEdge a -> b.
struct DiscreteOneForm {
  std::vector<double> value;

  /// Integral along the mesh edge from vertex index u to vertex index w.
  double along(const PLSurface& s, int u, int w) const;
  DiscreteOneForm operator+(const DiscreteOneForm& o) const;
  DiscreteOneForm operator*(double k) const;
};

DiscreteOneForm zero_form(const PLSurface& s);
/// Coboundary of a potential given per vertex index.
DiscreteOneForm exact_form(const PLSurface& s, const std::vector<double>& potential);
/// {"edges": {"u-w": value}, "orientation": "tail<head by id"} with u < w ids.
nlohmann::json to_json(const PLSurface& s, const DiscreteOneForm& a);
DiscreteOneForm one_form_from_json(const PLSurface& s, const nlohmann::json& j);

/// Endpoint limits (tail, head) per solid edge id.
struct CirculationFunction {
  std::map<int, std::pair<double, double>> limits;
  bool operator==(const CirculationFunction&) const = default;
};

/// Cycle basis of the dashed subgraph; a cycle lists signed edge ids, +id
/// walked tail to head, -id head to tail.
struct XiClass {
  std::vector<std::vector<int>> basis;
  std::vector<double> coords;
};

struct AugmentedCirculationGraph {
  MeasuredReebGraph graph;
  CirculationFunction circulation;
  XiClass xi;
};

nlohmann::json to_json(const CirculationFunction& c);
CirculationFunction circulation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const XiClass& x);
XiClass xi_from_json(const nlohmann::json& j);
/// Graph JSON extended with "circulation" and "xi".
nlohmann::json to_json(const AugmentedCirculationGraph& a);
AugmentedCirculationGraph augmented_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Graph side

/// Integral of f dmu over the edge.
double edge_moment(const MeasuredReebGraph& g, int edge_id);

struct CirculationCheck {
  bool ok = true;
  double max_residual = 0.0;
  /// "newton_leibniz:<edge>" and "kirchhoff:<vertex>" residuals.
  std::vector<std::pair<std::string, double>> residuals;
};

/// Throws DataError when c does not cover exactly the solid edges.
CirculationCheck check_circulation(const MeasuredReebGraph& g, const CirculationFunction& c,
                                   double tol = 1e-9);

struct CirculationSolution {
  CirculationFunction particular;
  /// Homogeneous solutions; each delta shifts both limits of an edge.
  std::vector<CirculationFunction> basis;
};

/// Throws NoSolution on a graph without dashed edges whose total moment is
/// not zero.
CirculationSolution solve_circulations(const MeasuredReebGraph& g);

/// Spanning-tree cycle basis of the dashed subgraph, one cycle per
/// non-tree dashed edge in id order.
std::vector<std::vector<int>> dashed_cycle_basis(const MeasuredReebGraph& g);

/// Value of xi on a cycle of the dashed subgraph. Throws DataError when the
/// cycle is not a combination of the basis cycles.
double evaluate_xi(const MeasuredReebGraph& g, const XiClass& xi, const std::vector<int>& cycle);

/// h1_rel + h1_dashed.
int orbit_moduli_dimension(const MeasuredReebGraph& g);

// ---------------------------------------------------------------------------
// Surface side

/// Circulation of a around each triangle divided by its area.
std::vector<double> vorticity(const PLSurface& s, const DiscreteOneForm& a);

/// Integral of a over the level component of `edge_id` at level c, with
/// the sublevel set on the left. Throws LevelOnVertex.
double circulation_from_form(const PLSurface& s, const DiscreteOneForm& a, const Extraction& ex,
                             int edge_id, double c);

/// Level used to read the circulation of a solid edge: the mid level, moved
/// off mesh vertex values.
double reference_level(const PLSurface& s, const MeasuredReebGraph& g, int edge_id);

/// Endpoint limits of each solid edge, read at its reference level and
/// carried to the ends with the edge's measure moments.
CirculationFunction circulation_of_form(const PLSurface& s, const DiscreteOneForm& a,
                                        const Extraction& ex);

/// Lift of the dashed subgraph to the surface.
struct LiftedGraph {
  /// Dashed edge id -> boundary vertex path (indices) in increasing f. The
  /// first and last vertices lie on the tree of the tail and head vertex.
  std::map<int, std::vector<int>> arcs;
  /// Graph vertex id -> spanning tree of its critical level component as a
  /// parent map over vertex indices (the root maps to itself).
  std::map<VertexId, std::map<int, int>> trees;
};

/// Throws DataError when the trees of two vertices share a mesh vertex,
/// i.e. the mesh is too coarse to separate their critical levels.
LiftedGraph lift_dashed_graph(const PLSurface& s, const Extraction& ex);

/// Closed vertex path (first vertex repeated at the end) lifting a cycle of
/// the dashed subgraph.
std::vector<int> lift_cycle(const LiftedGraph& lifted, const MeasuredReebGraph& g,
                            const std::vector<int>& cycle);

XiClass xi_class(const PLSurface& s, const DiscreteOneForm& a, const Extraction& ex);

/// Closed cochains representing a basis of the first cohomology: zero on a
/// spanning tree of the vertices, one per edge outside that tree and a dual
/// spanning tree of the triangles.
std::vector<DiscreteOneForm> closed_cochain_basis(const PLSurface& s);

/// Form with vorticity close to the field whose circulation_of_form and
/// xi_class equal the targets. Throws InfeasibleTarget.
DiscreteOneForm synthesize_form(const PLSurface& s, const Extraction& ex,
                                const CirculationFunction& target_c, const XiClass& target_xi);

}  // namespace reeb
