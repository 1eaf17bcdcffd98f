#pragma once

// Combinatorics of abstract measured Reeb graphs: boundary cycles, sigma,
// homology of the solid/dashed split, genus and compatibility.

#include <string>
#include <vector>

#include "reeb/reeb_graph.hpp"
#include "reeb/surface.hpp"

namespace reeb {

/// Closed walk through dashed edges. vertices has one more entry than
/// edges; the last repeats the first. edges[i] joins vertices[i] and
/// vertices[i + 1].
struct BoundaryCycle {
  std::vector<int> edges;
  std::vector<VertexId> vertices;
  bool operator==(const BoundaryCycle&) const = default;
};

/// One canonical representative per equivalence class, sorted.
std::vector<BoundaryCycle> boundary_cycles(const MeasuredReebGraph& g);
int sigma(const MeasuredReebGraph& g);

struct HomologyDims {
  int h1_gamma = 0;
  int h1_dashed = 0;
  int h1_rel = 0;
  int h0_dashed = 0;
  int h0_solid = 0;
  int h0_intersection = 0;
};

HomologyDims homology_dims(const MeasuredReebGraph& g);

/// Euler characteristic V - E and component count of the subgraph spanned
/// by edges of one style.
struct SubgraphCounts {
  int vertices = 0;
  int edges = 0;
  int components = 0;
};
SubgraphCounts subgraph_counts(const MeasuredReebGraph& g, Style s);

enum class GenusMethod { Realize, Formula };

/// Raw value of the closed genus formula in terms of the solid and dashed
/// subgraphs (may be fractional).
double genus_formula_value(const MeasuredReebGraph& g);
/// Realize: genus of the realized surface. Formula: the closed formula,
/// throwing NonIntegerFormulaValue when it is not a whole number.
int genus(const MeasuredReebGraph& g, GenusMethod method = GenusMethod::Realize);

struct Compatibility {
  bool compatible = true;
  std::vector<std::string> failures;  // "genus", "boundary", "area"
};
Compatibility compatibility(const MeasuredReebGraph& g, const TopologySummary& t);

}  // namespace reeb
