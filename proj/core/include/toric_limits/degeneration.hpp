#pragma once

#include <string>
#include <vector>

#include "toric_limits/hausdorff.hpp"
#include "toric_limits/point_configuration.hpp"
#include "toric_limits/sequence.hpp"
#include "toric_limits/subdivision.hpp"
#include "toric_limits/toric_variety.hpp"

namespace toric_limits {

// The complex of toric varieties X(S, w): over each facet F of the
// subdivision, the translated variety X(F, w|F), glued along shared faces.
struct ToricComplex {
  Subdivision subdivision;
  WeightVector weight;
};

// One row of a verification run: parameter value, Hausdorff distance to the
// predicted limit, and the sampling error budget (sum of the two clouds'
// net radii) the distance must be judged against.
struct ScheduleEntry {
  double t = 0;
  double d_h = 0;
  double eta_budget = 0;
};

enum class Verdict { converged, inconclusive };

struct DegenerationReport {
  std::vector<double> t_schedule;
  std::vector<ScheduleEntry> distances;
  Verdict verdict = Verdict::inconclusive;
  ToricComplex predicted;
};

// One binomial equation of the limit complex, supported inside a single
// facet: exp(log_beta_weight) * z^alpha - exp(log_alpha_weight) * z^beta,
// with the relation indexed over all of A (zeros off the facet).
struct FacetBinomial {
  int facet = 0;  // index into subdivision.facets
  AffineRelation relation;
  double log_alpha_weight = 0;  // log prod w^alpha (coefficient of z^beta)
  double log_beta_weight = 0;   // log prod w^beta  (coefficient of z^alpha)
};

// The defining equations of |S| and X(S, w): vanishing monomials from the
// minimal nonfaces (pairs and singletons) and per-facet binomials from the
// affine relation bases.
struct LimitEquations {
  std::vector<std::vector<int>> monomials;  // size-1 or size-2 member lists
  std::vector<FacetBinomial> binomials;
};

struct SequenceLimitResult {
  ToricComplex predicted;
  std::string diagnostics;
  DegenerationReport report;
  // The complex-continuity check: distance of X(S, Exp(vbar_i)) to the
  // predicted X(S, w) along the same schedule.
  std::vector<ScheduleEntry> complex_limit_distances;
  bool heuristic = false;
  SigmaDecomposition decomposition;
  Cone tau;
  ConeFace sigma;
};

// {0, 2, 4, ..., 40}
std::vector<double> default_t_schedule();

// Union over facets F of sample_variety(F, w|F, mesh), embedded with zeros
// off F; duplicates on shared faces merged. Nonparticipating labels carry
// coordinate 0 throughout.
PointCloud complex_sample(const PointConfiguration& A, const Subdivision& S,
                          const WeightVector& w, double mesh);

// a -> exp(t * lambda(a)) * w_a, in log space.
WeightVector one_param_weight(const QVec& lambda, const WeightVector& w, double t);

// Samples the family X(A, w_lambda(t)) along the schedule and compares each
// cloud against the predicted limit complex X(S_lambda, w).
DegenerationReport verify_toric_degeneration(const PointConfiguration& A, const QVec& lambda,
                                             const WeightVector& w,
                                             const std::vector<double>& t_schedule, double mesh,
                                             double tol);

// The full limit pipeline for a sequence of translates X(A, Exp(v_i)):
// reduce mod Aff, find the eventual subdivision and its secondary cone,
// take the minimum face of boundedness, decompose, predict X(S_sigma, w),
// and verify numerically along a geometric index schedule.
SequenceLimitResult sequence_limit(const PointConfiguration& A, const SequenceSpec& seq,
                                   double mesh, double tol);

// Monomial and binomial equations of X(S, w).
LimitEquations limit_equations(const PointConfiguration& A, const Subdivision& S,
                               const WeightVector& w);

}  // namespace toric_limits
