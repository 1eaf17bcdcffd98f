#pragma once

/**
 * Measured Reeb graph extraction from a simple Morse field on a PL surface,
 * plus level-set tracing used by the one-form code.
 *
 * Slabs are the open rank intervals between consecutive critical vertices.
 * A piece is the part of one triangle inside one slab; pieces glued along
 * mesh edges, and across critical levels away from the critical level
 * component, form the edges of the graph.
 */

#include <unordered_map>
#include <utility>
#include <vector>

#include "reeb/reeb_graph.hpp"
#include "reeb/surface.hpp"

namespace reeb {

struct LevelTransition {
  int below_circles = 0;
  int below_segments = 0;
  int above_circles = 0;
  int above_segments = 0;
  bool on_boundary = false;
};

/// Throws UnclassifiableTransition.
std::pair<VertexType, Orientation> classify_level_transition(const LevelTransition& t);

/// Area of {f <= c} inside a triangle with corner values f and area A.
double clipped_area(double A, double f0, double f1, double f2, double c);

struct Extraction {
  MeasuredReebGraph graph;
  /// Mesh vertex index of graph vertex i (graph ids are 0..n-1 by f).
  std::vector<int> mesh_vertex;
  std::vector<int> critical_rank;
  /// Graph edge id of the piece (triangle, slab), per slab.
  std::vector<std::unordered_map<int, int>> slab_edges;

  /// Slab strictly containing level c, or -1 when c is a critical value or
  /// outside the range.
  int slab_of(double c) const;
  /// Edge id containing triangle t at level c, or 0.
  int edge_at(int t, double c) const;
};

Extraction extract(const PLSurface& s, int samples = 64);
MeasuredReebGraph extract_reeb(const PLSurface& s, int samples = 64);

/// Point on a mesh edge: position = (1 - t) * a + t * b of MeshEdge{a, b}.
struct LevelPoint {
  int edge = -1;
  double t = 0.0;
};

/// Connected component of a regular level set. points[i] and points[i+1]
/// bound the segment inside triangles[i]. Closed curves repeat no point:
/// the last segment joins points.back() to points.front().
struct LevelCurve {
  std::vector<LevelPoint> points;
  std::vector<int> triangles;
  bool closed = false;
};

/// Traces the component of {f = c} through triangle t. Throws LevelOnVertex
/// when c equals a vertex value met on the way, DataError when t misses c.
LevelCurve trace_level(const PLSurface& s, double c, int t);

/// trace_level walked so that {f < c} lies on its left.
LevelCurve trace_level_oriented(const PLSurface& s, double c, int t);

/// Mesh edges crossing the level of critical mesh vertex v (in the symbolic
/// order) inside its own level component, sorted.
std::vector<int> critical_component_edges(const PLSurface& s, int v);

/// Cyclic successor order of the dashed edges at a II or IV vertex, read
/// off the oriented boundary of a thin slab around it. eps <= 0 selects a
/// third of the gap to the nearest other critical value.
std::vector<int> cyclic_order(const PLSurface& s, const Extraction& ex, VertexId v,
                              double eps = 0.0);

}  // namespace reeb
