#pragma once

#include <string>
#include <vector>

#include "toric_limits/cone.hpp"
#include "toric_limits/growth.hpp"
#include "toric_limits/point_configuration.hpp"

namespace toric_limits {

// A sequence i |-> v_i in R^A given in closed form: one growth polynomial per
// point of A (the value of that coordinate as a function of i). This is the
// exact, ground-truth representation: boundedness questions become coefficient
// tests.
struct StructuredSequence {
  std::vector<GrowthPoly> growth;  // per label
  double declared_bound = 0;       // user's bound for the bounded remainder (0 = none)
  std::vector<long> samples;       // indices used for reports and cross-checks
};

// A finite prefix of sample values, one vector per index (1-based index i is
// implicit: values[k] = v_{k+1}). All conclusions drawn from it are heuristic.
struct RawSequence {
  std::vector<std::vector<double>> values;
};

struct SequenceSpec {
  enum class Mode { structured, raw };
  Mode mode = Mode::structured;
  StructuredSequence structured;
  RawSequence raw;

  int arity() const;
};

// The linear forms vanishing on the span of a face (RREF-canonical basis).
std::vector<QVec> face_annihilators(const Cone& tau, const ConeFace& sigma);

struct BoundednessResult {
  bool bounded = false;
  bool heuristic = false;      // true for raw mode
  QVec violated_form;          // a witness annihilator when unbounded
  double achieved_bound = 0;   // max |psi(v_i)| over samples when bounded (raw/report)
  std::vector<long> tau_violations;  // sample indices where v_i is not in tau
  std::string witness;
};

// Is {v_i} sigma-bounded: does psi(v_i) stay bounded for every linear form psi
// vanishing on sigma? Structured mode answers exactly (no positive powers of i
// in psi applied to the growth vector); raw mode uses the documented
// median-based divergence heuristic.
BoundednessResult is_sigma_bounded(const SequenceSpec& seq, const Cone& tau,
                                   const ConeFace& sigma);

struct MinFaceResult {
  ConeFace sigma;
  std::vector<long> selector;  // indices of the subsequence the answer is valid for
  bool heuristic = false;
  std::string diagnostics;
};

// The smallest face of tau admitting a sigma-bounded subsequence. Structured
// mode: the minimal face whose span contains every divergent coefficient
// vector of the growth; exact. Raw mode: the first face (ascending dimension)
// passing the boundedness heuristic.
MinFaceResult minimum_face_of_boundedness(const SequenceSpec& seq, const Cone& tau);

struct SigmaDecomposition {
  // structured mode: exact growth split v = u + vbar
  std::vector<GrowthPoly> u;     // divergent part, inside sigma eventually
  std::vector<GrowthPoly> vbar;  // bounded remainder
  QVec v;                        // the accumulation point of vbar (exact)
  WeightVector weight;           // w = Exp(v)
  bool heuristic = false;
  bool multiple_accumulation = false;
  double achieved_bound = 0;     // max |vbar_i| over samples
  std::string diagnostics;
  // per-sample numeric views (also filled in raw mode)
  std::vector<std::vector<double>> u_samples, vbar_samples;
  std::vector<long> selector;
};

// Splits v_i = u_i + vbar_i with u_i in sigma and vbar_i bounded, and extracts
// the accumulation point v of {vbar_i} (w = Exp(v)). Structured mode splits the
// growth polynomial exactly: u = the positive powers, vbar = the rest, v = the
// constant coefficient. Raw mode projects each sample onto the cone sigma
// (nonnegative least squares over its generators) and clusters the tail.
// Throws when sigma cannot absorb the divergent part (vbar would be unbounded).
SigmaDecomposition sigma_decomposition(const SequenceSpec& seq, const Cone& tau,
                                       const ConeFace& sigma);

// Nearest point (Euclidean) of the cone spanned by the lineality vectors
// (free sign) and the rays (nonnegative weights), via nonnegative least
// squares; tolerance 1e-10.
std::vector<double> nearest_point_in_cone(const std::vector<QVec>& lineality,
                                          const std::vector<QVec>& rays,
                                          const std::vector<double>& x);

}  // namespace toric_limits
