#pragma once

// Isomorphism of measured Reeb graphs and of augmented circulation graphs,
// returning an explicit isomorphism or the first obstruction found.

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "reeb/circulation.hpp"
#include "reeb/reeb_graph.hpp"

namespace reeb {

enum class ObstructionKind { F_VALUES, TYPES, ADJACENCY, STYLE, CYCLIC_ORDER, MEASURE, CIRCULATION, XI };
std::string to_string(ObstructionKind k);

struct Obstruction {
  ObstructionKind kind = ObstructionKind::F_VALUES;
  std::string detail;
};

struct GraphIsomorphism {
  std::map<VertexId, VertexId> vertex_map;
  std::map<int, int> edge_map;
  std::optional<Obstruction> obstruction;

  bool isomorphic() const { return !obstruction.has_value(); }
};

struct MatchTolerances {
  /// Absolute tolerance on f values; negative means 1e-9 times the f range.
  double tol_f = -1.0;
  /// Relative tolerance on masses and cumulative profiles.
  double tol_mass = 1e-6;
  /// Relative tolerance on circulation limits and xi values.
  double tol_circulation = 1e-6;
};

/// Throws AmbiguousMatching when two vertices of one graph lie within tol_f
/// of a single vertex of the other.
GraphIsomorphism match_measured(const MeasuredReebGraph& g1, const MeasuredReebGraph& g2,
                                const MatchTolerances& tol = {});
GraphIsomorphism match_augmented(const AugmentedCirculationGraph& a1,
                                 const AugmentedCirculationGraph& a2, const MatchTolerances& tol = {});

nlohmann::json to_json(const GraphIsomorphism& iso);

}  // namespace reeb
