#pragma once

// Generators for the model surfaces used by tests, fuzzers and the CLI.

#include <array>
#include <functional>
#include <random>
#include <vector>

#include "reeb/surface.hpp"

namespace reeb::meshes {

using Field = std::function<double(double, double)>;

struct Grid {
  int nx = 16;
  int ny = 16;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  bool periodic_x = false;
  bool periodic_y = false;
  // cells whose centre falls inside one of these boxes {x0, x1, y0, y1} are removed
  std::vector<std::array<double, 4>> holes;
  Field f;
  // area per unit parameter area; flat when empty
  Field density;
};

PLSurface grid_surface(const Grid& g);

/// Two triangles forming the unit square, area 0.5 each.
PLSurface unit_square(double f0 = 0.0, double f1 = 1.0, double f2 = 2.0, double f3 = 3.0);

/// Unit disk from concentric rings; `rings` rings with 6k vertices on ring k.
PLSurface polar_disk(int rings, const Field& f);

PLSurface icosahedron();
/// Subdivided icosahedron projected to the unit sphere, F = z after a
/// rotation drawn from `rng` (identity when rng is null).
PLSurface icosphere(int subdivisions, std::mt19937_64* rng = nullptr);

/// Torus of revolution standing on its side with one rectangular hole in
/// the (theta, phi) chart. Height is -(R + r cos phi) cos theta plus a
/// small tilt.
PLSurface standing_torus_with_hole(int n_theta, int n_phi);

/// Rectangle with two rectangular holes, F a slightly tilted height.
PLSurface disk_with_two_holes(int n);

/// Flat torus [0, 2pi)^2 with F = cos x + 0.6 cos y.
PLSurface flat_torus(int n);

}  // namespace reeb::meshes
