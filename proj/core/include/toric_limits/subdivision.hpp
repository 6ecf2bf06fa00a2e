#pragma once

#include <array>
#include <vector>

#include "toric_limits/growth.hpp"
#include "toric_limits/point_configuration.hpp"

namespace toric_limits {

// A polyhedral subdivision of a point configuration, stored combinatorially:
// each facet is the sorted list of indices of all points lying on that cell's
// lifted hyperplane; points on no cell are nonparticipating.
struct Subdivision {
  std::vector<std::vector<int>> facets;  // sorted members, facets sorted lex
  std::vector<int> nonparticipating;     // sorted
  bool operator==(const Subdivision&) const = default;
  auto operator<=>(const Subdivision&) const = default;

  bool is_trivial() const { return facets.size() == 1 && nonparticipating.empty(); }
};

// A subdivision together with the affine extension of the lift over each cell:
// on cell k the upper envelope equals <plane_normals[k], x> + plane_offsets[k].
struct InducedSubdivision {
  Subdivision combinatorics;
  std::vector<QVec> plane_normals;  // aligned with combinatorics.facets
  QVec plane_offsets;
};

// The subdivision induced by lifting each point a to (a, lift(a)) and taking
// the facets of the upper hull (outward normal with positive last coordinate).
// Requires A to affinely span R^dim. In floating mode, points within a
// relative tolerance of a cell's hyperplane are also collected as members.
InducedSubdivision induced_subdivision(const PointConfiguration& A, const QVec& lift);

// The subdivision induced by the growth-polynomial lift i |-> lifts(i) for all
// sufficiently large i. Combinatorics only; exact (sign tests are eventual
// signs of growth polynomials).
Subdivision eventual_subdivision(const PointConfiguration& A,
                                 const std::vector<GrowthPoly>& lifts);

// Value of the concave upper envelope of the lift at x. Throws if x lies
// outside conv(A).
Rational upper_envelope(const PointConfiguration& A, const QVec& lift, const QVec& x);
Rational upper_envelope(const PointConfiguration& A, const InducedSubdivision& S,
                        const QVec& x);

// Minimal non-faces of a subdivision: the pairs of participating points that
// lie in no common facet, plus every nonparticipating point as a singleton.
struct NonfaceSet {
  std::vector<std::array<int, 2>> pairs;  // each sorted, list sorted lex
  std::vector<int> singletons;            // sorted
  bool operator==(const NonfaceSet&) const = default;
};
NonfaceSet minimal_nonfaces(const PointConfiguration& A, const Subdivision& S);

// True iff every face of `finer` is contained in some face of `coarser` —
// i.e. coarser ≺ finer in the refinement order whose bottom element is the
// trivial subdivision. refines(S, T) answers "is T a refinement of S".
bool refines(const Subdivision& coarser, const Subdivision& finer);

// Certificates that a non-face's defining inequality holds with strict margin.
enum class CertificateKind { pair, singleton, external };

struct Certificate {
  CertificateKind kind;
  std::vector<int> facet;       // G: sorted member indices
  std::vector<Rational> alpha;  // combination weights, aligned with `facet`
  Rational beta_a, beta_b;      // pair kind: p = beta_a * a + beta_b * b
  QVec p;                       // witness point in R^dim
  Rational margin;              // strict gap, > 0
};

// For a minimal non-face pair {a,b}: a facet G met by the open segment (a,b)
// in an interval of positive length (earliest such from a; ties broken by
// lexicographic member order), the midpoint p of that interval as a convex
// combination of G, and margin = lift~_G(p) - (beta_a lift(a) + beta_b lift(b)).
Certificate convex_certificate(const PointConfiguration& A, const QVec& lift,
                               const InducedSubdivision& S, const std::array<int, 2>& pair);

// For a nonparticipating singleton c: the lexicographically first facet G whose
// hull contains c, convex weights of c over G, margin = lift~_G(c) - lift(c).
Certificate convex_certificate(const PointConfiguration& A, const QVec& lift,
                               const InducedSubdivision& S, int singleton);

// For any facet G of S and a point d of A outside G: affine (sign-unrestricted)
// weights over the lexicographically first affinely independent subset of G
// expressing d, and margin = lift~_G(d) - lift(d) > 0.
Certificate affine_certificate(const PointConfiguration& A, const QVec& lift,
                               const InducedSubdivision& S, const std::vector<int>& facetG,
                               int d);

// Deterministic triangulation of conv(pts) (fan from the lexicographically
// smallest point, recursing on hull facets). Returns simplices as index lists
// into pts, each of size (affine dimension + 1).
std::vector<std::vector<int>> triangulate_points(const std::vector<QVec>& pts);

// Euclidean volume of conv(pts) in R^dim; zero when the points do not span.
Rational polytope_volume(const std::vector<QVec>& pts);

}  // namespace toric_limits
