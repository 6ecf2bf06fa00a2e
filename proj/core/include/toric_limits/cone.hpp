#pragma once

#include <vector>

#include "toric_limits/rational.hpp"

namespace toric_limits {

// A polyhedral cone {x : <f, x> >= 0 for f in forms}, stored in both
// representations. Double description runs exactly over the rationals.
struct Cone {
  int ambient_dim = 0;
  // Irredundant facet forms after removing implicit equalities; order follows
  // first appearance in the defining system.
  std::vector<QVec> forms;
  // Implicit equalities (forms vanishing identically on the cone), as an
  // RREF-canonical basis of the annihilator restricted to the given system.
  std::vector<QVec> equalities;
  std::vector<QVec> lineality;  // RREF-canonical basis of the lineality space
  std::vector<QVec> rays;       // primitive integer generators mod lineality, sorted
  int dim = 0;                  // dimension of the linear span of the cone

  bool contains(const QVec& x) const;
};

// Builds a cone from a halfspace system; equality constraints may be passed
// separately (each contributes the pair psi >= 0, -psi >= 0).
Cone make_cone(int ambient_dim, const std::vector<QVec>& inequality_forms,
               const std::vector<QVec>& equality_forms = {});

enum class MembershipKind { interior, boundary, outside };

struct Membership {
  MembershipKind kind = MembershipKind::outside;
  // Indices into Cone::forms that vanish at the query point (boundary case:
  // the minimal face containing the point is cut out by these).
  std::vector<int> tight_forms;
};

// Classifies x against the cone: relative interior, boundary (with the tight
// facet forms), or outside. tol > 0 treats |<f,x>| <= tol * scale(f, x) as
// tight (float-mode queries); tol = 0 is exact.
Membership cone_membership(const Cone& c, const QVec& x, double tol = 0.0);

// A face of a cone, recorded by the facet forms vanishing on it and the rays
// it keeps. The minimal face (lineality only) has an empty ray set.
struct ConeFace {
  std::vector<int> tight;  // indices into parent forms, sorted
  std::vector<int> rays;   // indices into parent rays, sorted
  int dim = 0;
};

// All faces of the cone (minimal face through the cone itself), sorted by
// (dim, rays). Enumerated via closures of ray subsets; intended for the small
// gauge-reduced cones this library works with.
std::vector<ConeFace> cone_faces(const Cone& c);

// Span basis of a face: lineality plus its rays.
std::vector<QVec> face_span(const Cone& c, const ConeFace& f);

// A point of the relative interior: the sum of all rays (the zero vector for a
// cone that is purely lineality).
QVec relative_interior_point(const Cone& c);

}  // namespace toric_limits
