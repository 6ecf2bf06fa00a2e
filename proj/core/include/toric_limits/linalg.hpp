#pragma once

#include <optional>

#include "toric_limits/rational.hpp"

namespace toric_limits {

// Small dense exact linear algebra over the rationals. Matrices are row-major
// vectors of rows; sizes here never exceed a few dozen.

int rank(QMat m);

// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(QMat& m);

// Solves A x = b exactly. Returns std::nullopt when inconsistent; when the
// system is underdetermined, free variables are set to zero (deterministic).
std::optional<QVec> solve(const QMat& a, const QVec& b);

// Basis of the nullspace {x : A x = 0}, one vector per non-pivot column, in
// RREF-canonical form (free variable set to 1, pivots back-substituted).
std::vector<QVec> nullspace(const QMat& a);

Rational dot(const QVec& a, const QVec& b);

QVec matvec(const QMat& a, const QVec& x);

// Orthogonal projection of v onto span(basis) (exact Gram system).
QVec project_onto_span(const std::vector<QVec>& basis, const QVec& v);

// True if v lies in span(basis).
bool in_span(const std::vector<QVec>& basis, const QVec& v);

// Greedily selects a maximal linearly independent subset; returns indices.
std::vector<int> independent_subset(const std::vector<QVec>& vecs);

// Exact coordinates on the affine span of a point set: y = pseudo * (x - origin)
// maps span points bijectively onto R^sdim, with x = origin + edges^T y inverse
// on the span. sdim is the affine dimension of the set.
struct AffineChart {
  QVec origin;
  std::vector<QVec> edges;  // sdim independent edge vectors from origin
  QMat pseudo;              // sdim x ambient
  int sdim = 0;

  static AffineChart build(const std::vector<QVec>& points);
  QVec coords(const QVec& x) const;
  bool contains(const QVec& x) const;  // x on the affine span
};

}  // namespace toric_limits
