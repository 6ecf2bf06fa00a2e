#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "toric_limits/cone.hpp"
#include "toric_limits/point_configuration.hpp"
#include "toric_limits/subdivision.hpp"

namespace toric_limits {

// The secondary cone of a regular subdivision S: all lifts lambda whose induced
// subdivision coarsens to S on the boundary and equals S in the relative
// interior. H-representation: one form lambda~_F(a) - lambda(a) per facet F
// and point a (equalities for a in F, inequalities otherwise); the lineality
// space contains the affine functions on A. Throws when S is not the regular
// subdivision its relative interior induces.
Cone secondary_cone(const PointConfiguration& A, const Subdivision& S);

// One sampled cell of the secondary fan.
struct FanCell {
  Subdivision subdivision;
  Cone cone;
  int hits = 0;             // how many random lifts landed in this cell
  bool full_dimensional = false;
};

struct SecondaryFanSample {
  int ambient_dim = 0;
  int n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<FanCell> cells;  // sorted by (cone dim, facets); trivial cell first
  // Covering relations of the refinement order: (coarser index, finer index).
  std::vector<std::pair<int, int>> poset_edges;
};

// Monte-Carlo exploration of the secondary fan: random gauge-reduced lifts
// give the full-dimensional cones; walls are recovered from pairwise
// intersections of adjacent chambers; the trivial cell is always included.
// Deterministic for fixed (n_samples, seed). Coverage is not guaranteed.
SecondaryFanSample sample_secondary_fan(const PointConfiguration& A, int n_samples,
                                        std::uint64_t seed);

}  // namespace toric_limits
