#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "basp/graph.hpp"

namespace basp {

// Four-node chain s -> 1 -> 2 -> f with unit arcs, unit acceleration and
// caps 1, 2/3, 1. Saturation needs suffixes of three nodes.
RoadGraph ChainExample();

// Triangle s, 1, f where the direct arc s -> f is the fastest route.
RoadGraph ExampleOne();

struct DubinsPath {
  double length = kInf;
  // Segment letters, 'L', 'R' or 'S', and their lengths in meters.
  std::array<char, 3> word{};
  std::array<double, 3> segments{};
  double radius = 0.0;
};

// Shortest of the six Dubins words joining two poses with turning radius r.
DubinsPath Dubins(const Pose& a, const Pose& b, double r);
inline double DubinsLength(const Pose& a, const Pose& b, double r) { return Dubins(a, b, r).length; }

// Distance between two headings on the circle, in [0, pi].
double AngularDistance(double a, double b);

struct GeneratorParams {
  int n = 100;
  std::uint64_t seed = 1;
  // Side of the square holding the positions; <= 0 means 10 sqrt(n).
  double scale = 0.0;
  // Bound on |dw/dlambda|, applied as alpha = +-accel.
  double accel = 0.1;
  // Squared-speed cap per unit of turning radius.
  double cap_per_radius = 2.0;
  double max_radius = 4.0;
  // Caps follow the curvature of each Dubins segment instead of one
  // constant per arc; straight segments get straight_cap.
  bool curvature_bounds = false;
  double straight_cap = 8.0;
};

// Turning radius for a connection: the fixed point of
// r = min(length(r) / d, max_radius), where d is the heading change.
double ConnectionRadius(const Pose& a, const Pose& b, double max_radius);

// Random geometric instance on 2n nodes: n positions joined by a distance
// threshold, each doubled into nodes 2i and 2i+1 with opposite headings.
// The query starts at rest from the first node with the largest reachable
// set and ends at rest at either node of the farthest position it reaches.
// Throws kDegenerate when no node reaches another position.
RoadGraph RandomInstance(const GeneratorParams& params);

struct CorridorParams {
  int rows = 10;
  int cols = 20;
  double spacing = 5.0;
  // Cross connections between adjacent rows every `cross_every` columns
  // and at the last column.
  int cross_every = 4;
  double jitter = 0.3;
  std::uint64_t seed = 1;
  double accel = 0.1;
  double cap_per_radius = 2.0;
  double max_radius = 4.0;
};

// Warehouse-like sparse instance: long aisles with a few cross aisles, with
// the same orientation doubling as RandomInstance.
RoadGraph CorridorInstance(const CorridorParams& params);

// Uniform random query on a generated instance: a source node and both
// nodes of a different position reachable from it. Throws kDegenerate after
// repeated failures.
Query RandomQuery(const RoadGraph& g, std::mt19937_64& rng);

}  // namespace basp
