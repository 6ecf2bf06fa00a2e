#include "toric_limits/degeneration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "toric_limits/secondary_fan.hpp"

namespace toric_limits {

namespace {

// Tail rule shared by every verification: converged iff the final distance
// fits inside tol plus its sampling budget and the second half of the
// schedule is nonincreasing within budget.
Verdict judge(const std::vector<ScheduleEntry>& rows, double tol) {
  if (rows.empty()) return Verdict::inconclusive;
  const ScheduleEntry& last = rows.back();
  if (!(last.d_h <= tol + last.eta_budget)) return Verdict::inconclusive;
  for (std::size_t j = rows.size() / 2; j + 1 < rows.size(); ++j)
    if (rows[j + 1].d_h > rows[j].d_h + rows[j + 1].eta_budget) return Verdict::inconclusive;
  return Verdict::converged;
}

WeightVector restrict_weight(const WeightVector& w, const std::vector<int>& members) {
  WeightVector out;
  for (int m : members) out.log_values.push_back(w.log_values[m]);
  return out;
}

std::vector<long> geometric_indices(long cap) {
  std::vector<long> idx;
  for (long i = 1; i <= cap; i *= 2) idx.push_back(i);
  return idx;
}

}  // namespace

std::vector<double> default_t_schedule() {
  std::vector<double> t;
  for (int k = 0; k <= 20; ++k) t.push_back(2.0 * k);
  return t;
}

PointCloud complex_sample(const PointConfiguration& A, const Subdivision& S,
                          const WeightVector& w, double mesh) {
  if (w.size() != A.size())
    throw std::invalid_argument("complex_sample: weight arity mismatch");
  PointCloud cloud;
  cloud.mesh = mesh;
  cloud.provenance = "complex sample";
  auto push_unique = [&](const SimplexPoint& z) {
    for (const auto& q : cloud.points) {
      double delta = 0;
      for (std::size_t k = 0; k < z.coords.size(); ++k)
        delta = std::max(delta, std::abs(q.coords[k] - z.coords[k]));
      if (delta <= 1e-9) return;
    }
    cloud.points.push_back(z);
  };
  for (const auto& facet : S.facets) {
    PointConfiguration sub = subconfiguration(A, facet);
    PointCloud part = sample_variety(sub, restrict_weight(w, facet), mesh);
    for (const auto& zsub : part.points) {
      SimplexPoint z;
      z.coords.assign(A.size(), 0.0);
      for (std::size_t i = 0; i < facet.size(); ++i) z.coords[facet[i]] = zsub.coords[i];
      push_unique(z);
    }
  }
  return cloud;
}

WeightVector one_param_weight(const QVec& lambda, const WeightVector& w, double t) {
  if (static_cast<int>(lambda.size()) != w.size())
    throw std::invalid_argument("one_param_weight: arity mismatch");
  std::vector<double> logs(w.log_values);
  for (std::size_t j = 0; j < lambda.size(); ++j) logs[j] += t * to_double(lambda[j]);
  return WeightVector::from_logs(std::move(logs));
}

DegenerationReport verify_toric_degeneration(const PointConfiguration& A, const QVec& lambda,
                                             const WeightVector& w,
                                             const std::vector<double>& t_schedule, double mesh,
                                             double tol) {
  if (t_schedule.empty())
    throw std::invalid_argument("verify_toric_degeneration: empty schedule");
  for (std::size_t k = 0; k + 1 < t_schedule.size(); ++k)
    if (!(t_schedule[k] < t_schedule[k + 1]))
      throw std::invalid_argument("verify_toric_degeneration: schedule must increase");
  if (!(mesh > 0) || !(tol > 0))
    throw std::invalid_argument("verify_toric_degeneration: mesh and tol must be positive");

  DegenerationReport rep;
  rep.t_schedule = t_schedule;
  rep.predicted.subdivision = induced_subdivision(A, lambda).combinatorics;
  rep.predicted.weight = w;
  PointCloud target = complex_sample(A, rep.predicted.subdivision, w, mesh);
  double eta_target = cloud_eta(target);

  for (double t : t_schedule) {
    PointCloud snap = sample_variety(A, one_param_weight(lambda, w, t), mesh);
    DistanceReport d = hausdorff(snap, target);
    rep.distances.push_back({t, d.d_h, d.eta_x + eta_target});
  }
  rep.verdict = judge(rep.distances, tol);
  return rep;
}

LimitEquations limit_equations(const PointConfiguration& A, const Subdivision& S,
                               const WeightVector& w) {
  LimitEquations eq;
  NonfaceSet nf = minimal_nonfaces(A, S);
  for (const auto& pr : nf.pairs) eq.monomials.push_back({pr[0], pr[1]});
  for (int s : nf.singletons) eq.monomials.push_back({s});

  for (std::size_t f = 0; f < S.facets.size(); ++f) {
    const auto& facet = S.facets[f];
    PointConfiguration sub = subconfiguration(A, facet);
    for (const AffineRelation& rsub : affine_relations_basis(sub)) {
      FacetBinomial b;
      b.facet = static_cast<int>(f);
      b.relation.alpha.assign(A.size(), Rational(0));
      b.relation.beta.assign(A.size(), Rational(0));
      for (std::size_t i = 0; i < facet.size(); ++i) {
        b.relation.alpha[facet[i]] = rsub.alpha[i];
        b.relation.beta[facet[i]] = rsub.beta[i];
        b.log_alpha_weight += to_double(rsub.alpha[i]) * w.log_values[facet[i]];
        b.log_beta_weight += to_double(rsub.beta[i]) * w.log_values[facet[i]];
      }
      eq.binomials.push_back(std::move(b));
    }
  }
  return eq;
}

SequenceLimitResult sequence_limit(const PointConfiguration& A, const SequenceSpec& seq,
                                   double mesh, double tol) {
  if (!(mesh > 0) || !(tol > 0))
    throw std::invalid_argument("sequence_limit: mesh and tol must be positive");
  SequenceLimitResult out;
  std::ostringstream diag;
  const Gauge gauge{OrthogonalGauge{}};

  // (1) reduce mod Aff; (2) eventual subdivision and its secondary cone
  SequenceSpec reduced = seq;
  std::vector<long> schedule;  // verification indices (1-based sample/index)
  Subdivision S_tail;

  if (seq.mode == SequenceSpec::Mode::structured) {
    if (static_cast<int>(seq.structured.growth.size()) != A.size())
      throw std::invalid_argument("sequence_limit: sequence arity mismatch");
    reduced.structured.growth = reduce_mod_aff(A, seq.structured.growth, gauge);
    S_tail = eventual_subdivision(A, reduced.structured.growth);
    schedule = geometric_indices(256);
    // cross-check: the subdivision at the largest perfect-square index equals
    // the eventual one (exact arithmetic at x = sqrt(256) = 16)
    QVec lift(A.size());
    for (int j = 0; j < A.size(); ++j) {
      Rational v(0);
      for (const auto& [k, c] : reduced.structured.growth[j].terms()) {
        Rational xk(1);
        for (int p = 0; p < std::abs(k); ++p) xk *= 16;
        if (k < 0) xk = 1 / xk;
        v += c * xk;
      }
      lift[j] = v;
    }
    if (!(induced_subdivision(A, lift).combinatorics == S_tail))
      diag << "note: subdivision at index 256 differs from the eventual one; "
              "the asymptotic regime starts later\n";
  } else {
    if (seq.raw.values.size() < 8)
      throw std::invalid_argument("sequence_limit: raw sequences need at least 8 samples");
    out.heuristic = true;
    const std::size_t N = seq.raw.values.size();
    for (std::size_t k = 0; k < N; ++k)
      reduced.raw.values[k] = reduce_mod_aff(A, seq.raw.values[k], gauge);
    // recurring subdivision over the tail half
    std::map<Subdivision, int> tally;
    std::vector<Subdivision> per_sample;
    for (std::size_t k = 0; k < N; ++k)
      per_sample.push_back(
          induced_subdivision(A, rationals_from_doubles(reduced.raw.values[k])).combinatorics);
    for (std::size_t k = N / 2; k < N; ++k) tally[per_sample[k]]++;
    int best = 0;
    for (const auto& [sub, count] : tally)
      if (count > best) {
        best = count;
        S_tail = sub;
      }
    if (tally.size() > 1)
      diag << "note: mixed subdivisions in the raw tail (" << tally.size()
           << " distinct); using the most frequent\n";
    for (long i = 1; i <= static_cast<long>(N); i *= 2) schedule.push_back(i);
  }

  Cone tau = secondary_cone(A, S_tail);

  // (3) minimum face of boundedness; (4) the limit subdivision S_sigma
  MinFaceResult mf = minimum_face_of_boundedness(reduced, tau);
  out.heuristic = out.heuristic || mf.heuristic;
  if (!mf.diagnostics.empty()) diag << mf.diagnostics << "\n";
  QVec relint(A.size(), Rational(0));
  for (int r : mf.sigma.rays)
    for (int j = 0; j < A.size(); ++j) relint[j] += tau.rays[r][j];
  Subdivision S_limit = induced_subdivision(A, relint).combinatorics;

  // (5) decomposition and the limit weight, reported in the orthogonal gauge
  SigmaDecomposition dec = sigma_decomposition(reduced, tau, mf.sigma);
  out.heuristic = out.heuristic || dec.heuristic;
  if (!dec.diagnostics.empty()) diag << dec.diagnostics << "\n";
  if (dec.multiple_accumulation)
    diag << "warning: multiple accumulation points; the verdict below applies to the "
            "reported centroid only\n";
  QVec v_gauge = reduce_mod_aff(A, dec.v, gauge);
  WeightVector w = WeightVector::from_logs(to_doubles(v_gauge));

  out.predicted.subdivision = S_limit;
  out.predicted.weight = w;
  out.decomposition = dec;
  out.tau = tau;
  out.sigma = mf.sigma;

  // (6) verification along the schedule
  PointCloud target = complex_sample(A, S_limit, w, mesh);
  double eta_target = cloud_eta(target);
  DegenerationReport rep;
  rep.predicted = out.predicted;
  for (long i : schedule) {
    std::vector<double> logs(A.size());
    if (seq.mode == SequenceSpec::Mode::structured) {
      for (int j = 0; j < A.size(); ++j)
        logs[j] = reduced.structured.growth[j].eval(static_cast<double>(i));
    } else {
      logs = reduced.raw.values[static_cast<std::size_t>(i - 1)];
    }
    PointCloud snap = sample_variety(A, WeightVector::from_logs(logs), mesh);
    DistanceReport d = hausdorff(snap, target);
    rep.t_schedule.push_back(static_cast<double>(i));
    rep.distances.push_back({static_cast<double>(i), d.d_h, d.eta_x + eta_target});

    // Lemma-style continuity check: X(S, Exp(vbar_i)) -> X(S, w)
    std::vector<double> vb(A.size());
    if (seq.mode == SequenceSpec::Mode::structured) {
      for (int j = 0; j < A.size(); ++j) vb[j] = dec.vbar[j].eval(static_cast<double>(i));
    } else {
      vb = dec.vbar_samples[static_cast<std::size_t>(i - 1)];
    }
    std::vector<double> vb_gauge = reduce_mod_aff(A, vb, gauge);
    PointCloud translated = complex_sample(A, S_limit, WeightVector::from_logs(vb_gauge), mesh);
    DistanceReport dc = hausdorff(translated, target);
    out.complex_limit_distances.push_back(
        {static_cast<double>(i), dc.d_h, dc.eta_x + eta_target});
  }
  rep.verdict = judge(rep.distances, tol);
  out.report = std::move(rep);
  out.diagnostics = diag.str();
  return out;
}

}  // namespace toric_limits
