#pragma once

#include <string>
#include <vector>

#include "toric_limits/point_configuration.hpp"
#include "toric_limits/rational.hpp"

namespace toric_limits {

// Numerical realization of the translated toric variety X(A, w): the closure
// in the standard simplex of { w.phi(x) : x > 0 }, phi(x) = (x^a / sum).
// Everything monomial runs in log space so weights like exp(-200) survive.

// A point of the standard simplex on A, in the configuration's label order.
// Entries are >= 0 and sum to 1.
struct SimplexPoint {
  std::vector<double> coords;
};

// A nonnegative affine relation among the points: sum alpha_a = sum beta_a
// and sum alpha_a * a = sum beta_a * a, with disjoint supports. Each relation
// yields one binomial equation cutting out X(A, w).
struct AffineRelation {
  QVec alpha;
  QVec beta;
};

// Sampled points of a variety or complex, with the grid spacing used to
// generate them and a human-readable provenance tag.
struct PointCloud {
  std::vector<SimplexPoint> points;
  double mesh = 0;
  std::string provenance;
};

// Result of inverting the moment map: the unique z in X(A, w) whose moment
// taut(z) equals the requested point of conv(A).
struct BirchResult {
  SimplexPoint z;
  int iterations = 0;
  bool converged = false;
  std::vector<int> support;  // indices with z > 0 (the containing face)
};

inline constexpr double kEpsVariety = 1e-9;   // residual / round-trip budget
inline constexpr double kBirchStop = 1e-11;   // Newton stopping tolerance
inline constexpr int kBirchMaxIter = 200;

// w.phi(x): coords proportional to w_a * x^a, normalized. Requires x > 0.
SimplexPoint parametrize(const PointConfiguration& A, const WeightVector& w,
                         const std::vector<double>& x);

// Moment-map inversion: the unique z in X(A, w) with taut(z) = p, for p in
// conv(A). Points within kEpsVariety of a proper face of conv(A) recurse on
// that face's sub-configuration. Throws std::invalid_argument when p lies
// outside conv(A).
BirchResult birch_inverse(const PointConfiguration& A, const WeightVector& w,
                          const std::vector<double>& p);

// An h-net of X(A, w): Birch inversion over an axis-aligned h-grid of
// conv(A) together with the grids of all its proper faces (so the boundary
// is sampled even when the interior grid misses it). Vertices are always
// included; duplicates are merged.
PointCloud sample_variety(const PointConfiguration& A, const WeightVector& w, double mesh);

// Generating set of the nonnegative affine relations: the exact kernel basis
// of the (d+1) x |A| matrix with rows (1, coordinates), each kernel vector
// scaled so its smallest nonzero magnitude is 1 and split into positive part
// alpha and negative part beta.
std::vector<AffineRelation> affine_relations_basis(const PointConfiguration& A);

// | prod z^alpha * prod w^beta - prod z^beta * prod w^alpha | divided by the
// larger of the two w-products. Log-space on full support; zero entries use
// the product form with 0^0 = 1.
double binomial_residual(const SimplexPoint& z, const WeightVector& w,
                         const AffineRelation& rel);

// The torus translation w.z: coordinatewise product, renormalized.
SimplexPoint translate(const SimplexPoint& z, const WeightVector& w);

// Restriction to the members of a face followed by renormalization. Throws
// std::invalid_argument when z has no mass on the face.
SimplexPoint project_to_face(const SimplexPoint& z, const std::vector<int>& face_members);

// True iff X(A, w) = X(A, w'): Log w - Log w' lies in the affine function
// space of A (residual of the orthogonal-complement projection <= 1e-9,
// relative to the vector's size).
bool same_translate(const PointConfiguration& A, const WeightVector& w,
                    const WeightVector& wprime);

}  // namespace toric_limits
