#pragma once

/**
 * Triangulated oriented surfaces with boundary carrying a vertex scalar
 * field and per-triangle area weights, plus the genericity gate for
 * simple Morse fields.
 *
 * The scalar field is linear on each triangle. Areas are free positive
 * weights; coordinates are optional and never used by the invariants.
 */

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <json.hpp>

namespace reeb {

using VertexId = std::int64_t;

struct SurfaceVertex {
  VertexId id = 0;
  double f = 0.0;
  std::vector<double> xy;  // optional, 2 or 3 entries
};

struct SurfaceTriangle {
  std::array<VertexId, 3> v{};  // oriented: listed order is counterclockwise
  double area = 0.0;
};

/// Undirected mesh edge. `a` has the smaller vertex id, which fixes the
/// sign convention of one-forms.
struct MeshEdge {
  int a = -1;
  int b = -1;
  std::array<int, 2> tri{-1, -1};
  int tri_count = 0;
  bool boundary() const { return tri_count == 1; }
};

class PLSurface {
 public:
  /// Builds and validates. Throws DataError, TopologyError or ParseError.
  static PLSurface build(std::vector<SurfaceVertex> vertices,
                         std::vector<SurfaceTriangle> triangles);

  std::size_t vertex_count() const { return ids_.size(); }
  std::size_t triangle_count() const { return tris_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  VertexId id(int v) const { return ids_[v]; }
  double f(int v) const { return f_[v]; }
  const std::vector<double>& xy(int v) const { return xy_[v]; }
  bool on_boundary(int v) const { return on_boundary_[v]; }
  int index_of(VertexId id) const;

  /// Vertex indices of triangle t in orientation order.
  const std::array<int, 3>& triangle(int t) const { return tris_[t]; }
  double area(int t) const { return area_[t]; }
  const MeshEdge& edge(int e) const { return edges_[e]; }
  /// Edge index of {u, v}, or -1.
  int edge_between(int u, int v) const;
  /// Edge index of side k of triangle t (side k joins corners k and k+1).
  int triangle_edge(int t, int k) const { return tri_edges_[t][k]; }

  /// Link of v in orientation order. Interior: a cycle (first vertex not
  /// repeated). Boundary: a path from the next boundary vertex along the
  /// oriented boundary to the previous one.
  const std::vector<int>& link(int v) const { return links_[v]; }
  const std::vector<int>& star(int v) const { return stars_[v]; }

  /// Boundary polygons, each traversed with the surface on the left.
  const std::vector<std::vector<int>>& boundary_loops() const { return loops_; }

  /// Total order used for all combinatorial decisions: (f, id).
  bool below(int u, int v) const {
    return f_[u] < f_[v] || (f_[u] == f_[v] && ids_[u] < ids_[v]);
  }
  /// Position of v in the (f, id) order.
  int rank(int v) const { return rank_[v]; }
  int vertex_at_rank(int r) const { return by_rank_[r]; }

  double total_area() const { return total_area_; }

  std::vector<SurfaceVertex> vertices() const;
  std::vector<SurfaceTriangle> triangles() const;

 private:
  std::vector<VertexId> ids_;
  std::unordered_map<VertexId, int> index_;
  std::vector<double> f_;
  std::vector<std::vector<double>> xy_;
  std::vector<bool> on_boundary_;
  std::vector<std::array<int, 3>> tris_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<double> area_;
  std::vector<MeshEdge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;  // (neighbor, edge)
  std::vector<std::vector<int>> links_;
  std::vector<std::vector<int>> stars_;
  std::vector<std::vector<int>> loops_;
  std::vector<int> rank_;
  std::vector<int> by_rank_;
  double total_area_ = 0.0;
};

PLSurface load_mesh(std::istream& in);
PLSurface load_mesh_file(const std::string& path);
PLSurface mesh_from_json(const nlohmann::json& j);
nlohmann::json mesh_to_json(const PLSurface& s);

// ---------------------------------------------------------------------------
// Simple Morse validation

enum class CriticalKind { Min, Max, Saddle, BoundaryMin, BoundaryMax };
std::string to_string(CriticalKind k);

struct CriticalPoint {
  VertexId vertex = 0;
  CriticalKind kind = CriticalKind::Min;
  double f = 0.0;
};

struct Violation {
  std::string code;  // DEGENERATE_CRITICAL, BOUNDARY_CRITICAL, ...
  std::vector<VertexId> vertices;
  std::string message;
};

struct ValidationReport {
  bool is_simple_morse = true;
  std::vector<CriticalPoint> critical_points;  // sorted by (f, id)
  std::vector<Violation> violations;
};

/// Per-vertex classification from the link sign pattern.
struct VertexClass {
  bool critical = false;
  CriticalKind kind = CriticalKind::Min;
  std::string violation;  // empty when fine
  int sign_changes = 0;
};
VertexClass classify_vertex(const PLSurface& s, int v);

ValidationReport validate_simple_morse(const PLSurface& s);
nlohmann::json to_json(const ValidationReport& r);

// ---------------------------------------------------------------------------

struct TopologySummary {
  int euler_characteristic = 0;
  int boundary_component_count = 0;
  int genus = 0;
  double total_area = 0.0;
};

TopologySummary topology_summary(const PLSurface& s);
nlohmann::json to_json(const TopologySummary& t);

// ---------------------------------------------------------------------------
// Test transformations that preserve the area form and the field up to
// relabeling.

struct Relabel {
  std::vector<std::pair<VertexId, VertexId>> mapping;  // old -> new
};
struct Shear {
  double factor = 0.0;  // (x, y) -> (x, y + factor * x)
};
struct BarycentricRefine {};

using MapSpec = std::variant<Relabel, Shear, BarycentricRefine>;

PLSurface remap(const PLSurface& s, const MapSpec& spec);

/// Random bijective relabeling with fresh ids.
Relabel random_relabel(const PLSurface& s, std::mt19937_64& rng);

}  // namespace reeb
