// Sensor-network localization reduced to the quartic problem class. Each
// distance residual (||u_i - u_j||^2 - d^2)/2 squared becomes a quartic term
// with beta = 4 and theta = d^2/2. Anchors are eliminated by translating each
// connected component of the unknown-unknown graph so that its (single)
// anchor sits at the origin; the builder returns the per-sensor offsets that
// map instance coordinates back to world coordinates. Components that
// reference two distinct anchor positions cannot be expressed exactly in this
// class (the expansion has an odd-degree term no centered quadratic can
// produce) and are rejected.
#pragma once

#include <string>
#include <vector>

#include "cdt/problem.hpp"

namespace cdt {

struct Anchor {
  int index = 0;
  Vec pos;
};

struct DistancePair {
  int i = 0;
  int j = 0;
  double d = 0.0;
};

struct SensorNetwork {
  int dim = 0;
  int sensors = 0;  // total count, anchors included
  std::vector<Anchor> anchors;
  std::vector<DistancePair> distances;
};

// Throws DomainError with a diagnostic on invalid networks (range errors,
// duplicate pairs, fully-anchored pairs, multi-anchor components).
struct SensorReduction {
  ProblemInstance instance;
  std::vector<int> unknown_indices;   // original sensor index per x-slot group
  std::vector<Vec> offsets;           // world = instance coords + offset, per unknown
};

SensorReduction build_sensor_instance(const SensorNetwork& net);

// Direct least-squares objective sum (||u_i-u_j||^2 - d^2)^2 / 2 evaluated
// from the network data; the independent oracle for the reduction.
double direct_least_squares(const SensorNetwork& net, const std::vector<Vec>& unknown_positions);

}  // namespace cdt
