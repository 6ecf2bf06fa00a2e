#include "toric_limits/hausdorff.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "toric_limits/parallel.hpp"

namespace toric_limits {

double l1(const SimplexPoint& y, const SimplexPoint& z) {
  if (y.coords.size() != z.coords.size())
    throw std::invalid_argument("l1: points live on different label sets");
  double s = 0;
  for (std::size_t i = 0; i < y.coords.size(); ++i) s += std::abs(y.coords[i] - z.coords[i]);
  return s;
}

double cloud_eta(const PointCloud& cloud) {
  const int n = static_cast<int>(cloud.points.size());
  if (n <= 1) return 0;
  std::vector<double> nearest(n);
  parallel_for(n, [&](int i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      if (j != i) best = std::min(best, l1(cloud.points[i], cloud.points[j]));
    nearest[i] = best;
  });
  double eta = 0;
  for (double v : nearest) eta = std::max(eta, v);
  return eta;
}

namespace {

// One direction: sup over X of the nearest distance into Y, with witnesses.
void directed(const PointCloud& X, const PointCloud& Y, double& dist, int& wx, int& wy) {
  const int n = static_cast<int>(X.points.size());
  std::vector<double> best(n);
  std::vector<int> arg(n);
  parallel_for(n, [&](int i) {
    double b = std::numeric_limits<double>::infinity();
    int a = -1;
    for (std::size_t j = 0; j < Y.points.size(); ++j) {
      double d = l1(X.points[i], Y.points[j]);
      if (d < b) {
        b = d;
        a = static_cast<int>(j);
      }
    }
    best[i] = b;
    arg[i] = a;
  });
  dist = -1;
  for (int i = 0; i < n; ++i)
    if (best[i] > dist) {
      dist = best[i];
      wx = i;
      wy = arg[i];
    }
}

}  // namespace

DistanceReport hausdorff(const PointCloud& X, const PointCloud& Y) {
  if (X.points.empty() || Y.points.empty())
    throw std::invalid_argument("hausdorff: clouds must be nonempty");
  DistanceReport r;
  directed(X, Y, r.d_forward, r.witness_forward_x, r.witness_forward_y);
  directed(Y, X, r.d_backward, r.witness_backward_y, r.witness_backward_x);
  r.d_h = std::max(r.d_forward, r.d_backward);
  r.eta_x = cloud_eta(X);
  r.eta_y = cloud_eta(Y);
  return r;
}

}  // namespace toric_limits
