#pragma once

// Surfaces built from abstract measured Reeb graphs.

#include <map>
#include <vector>

#include "reeb/reeb_graph.hpp"
#include "reeb/surface.hpp"

namespace reeb {

struct RealizationWitness {
  std::map<int, std::vector<int>> edge_triangles;         // graph edge id -> triangles
  std::map<VertexId, std::vector<int>> vertex_triangles;  // graph vertex id -> triangles
  std::map<VertexId, VertexId> vertex_of;                 // graph vertex id -> mesh vertex id
  std::map<int, double> edge_area;  // area of each edge region, vertex neighbourhoods included
};

struct RealizationResult {
  PLSurface surface;
  RealizationWitness witness;
};

/// `resolution` is the number of vertices around each level component
/// (at least 4).
RealizationResult realize(const MeasuredReebGraph& g, int resolution = 8);

/// Topology of a minimal realization.
TopologySummary surface_of(const MeasuredReebGraph& g);

}  // namespace reeb
