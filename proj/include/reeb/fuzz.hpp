#pragma once

// Random measured Reeb graphs and random simple Morse surfaces, and the
// property suites run over them. Every case draws from its own generator
// seeded by (seed, suite, case index), so results do not depend on the
// thread count.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "reeb/reeb_graph.hpp"
#include "reeb/surface.hpp"

namespace reeb::fuzz {

struct GraphOptions {
  int min_events = 2;
  int max_events = 10;
  int samples = 16;
  bool allow_solid = true;
  bool allow_dashed = true;
  /// Require at least one dashed edge.
  bool require_dashed = false;
  /// Chance of shifting f so that the total moment vanishes.
  double zero_moment_probability = 0.0;
};

/// Event sweep: births, merges and splits of level components drawn in
/// increasing f, then closed off by merges and deaths.
MeasuredReebGraph random_graph(std::mt19937_64& rng, const GraphOptions& o = {});

enum class SurfaceKind { Planar, Torus, Realized };

struct SurfaceOptions {
  std::vector<SurfaceKind> kinds{SurfaceKind::Planar, SurfaceKind::Torus, SurfaceKind::Realized};
  bool require_boundary = false;
};

/// Simple Morse surface: a grid patch with holes, a periodic grid torus with
/// holes, or the realization of a random graph.
PLSurface random_surface(std::mt19937_64& rng, const SurfaceOptions& o = {});

/// Random renumbering of vertex and edge ids.
MeasuredReebGraph permuted(const MeasuredReebGraph& g, std::mt19937_64& rng);

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  /// "case <i>: <detail>" per failure, in case order.
  std::vector<std::string> failures;
};

std::vector<std::string> suite_names();
/// Throws DataError on an unknown suite name. threads <= 0 reads
/// REEB_ORBIT_THREADS, defaulting to the hardware concurrency.
SuiteResult run_suite(const std::string& name, int cases, std::uint64_t seed, int threads = 0);

int thread_budget();

}  // namespace reeb::fuzz
