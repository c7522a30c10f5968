#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lkq/polytope.hpp"

namespace lkq {

using Rng = std::mt19937_64;

// uniform on (0, 1], 53 random bits
inline double uniform01(Rng& rng) { return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53; }

// sigma over S with sum 1 on every factor, entries >= 0
struct SigmaPoint {
  Eigen::VectorXd sigma;

  // clamps negatives to 0 and renormalizes each factor; throws Input on a zero factor
  static SigmaPoint make(Eigen::VectorXd raw, const Grouping& g);
};

// Dirichlet(1,...,1) on each factor
SigmaPoint sample_sigma(const Grouping& g, Rng& rng);

struct SampleBatch {
  std::vector<SigmaPoint> points;
  std::uint64_t seed = 0;
  Grouping grouping;
};

SampleBatch sample(const Grouping& g, int n, std::uint64_t seed);

// uniform points of a polytope by rejection from its bounding box
std::vector<Eigen::VectorXd> uniform_in_polytope(const LabelledPolytope& P, int n, Rng& rng);

// interior points as random convex combinations of vertices pulled toward the barycenter
std::vector<Eigen::VectorXd> interior_points(const LabelledPolytope& P, int n, std::uint64_t seed, double shrink = 0.9);

}  // namespace lkq
