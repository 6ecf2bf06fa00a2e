#pragma once

#include "toric_limits/toric_variety.hpp"

namespace toric_limits {

// Hausdorff distance between two finite clouds in the l1 metric on the
// simplex, with the witnessing point pair of each direction and the clouds'
// empirical net radii (for error budgets when the clouds stand in for the
// underlying compact sets).
struct DistanceReport {
  double d_forward = 0;   // sup over X of the distance to Y
  double d_backward = 0;  // sup over Y of the distance to X
  double d_h = 0;         // max of the two
  int witness_forward_x = -1, witness_forward_y = -1;
  int witness_backward_y = -1, witness_backward_x = -1;
  double eta_x = 0, eta_y = 0;  // max nearest-neighbor spacing per cloud
};

// l1 distance; the points must have the same arity.
double l1(const SimplexPoint& y, const SimplexPoint& z);

// Empirical net radius: the largest nearest-neighbor distance within the
// cloud (0 for a single point).
double cloud_eta(const PointCloud& cloud);

// Exact Hausdorff distance of the finite samples, brute force. Throws
// std::invalid_argument on empty clouds or arity mismatch.
DistanceReport hausdorff(const PointCloud& X, const PointCloud& Y);

}  // namespace toric_limits
