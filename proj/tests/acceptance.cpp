// Acceptance checks for the toric limit toolkit. Each numbered check prints
// one PASS/FAIL line with a short detail and its wall time; the process exit
// status is the number of failed checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracle.hpp"
#include "toric_limits/cone.hpp"
#include "toric_limits/degeneration.hpp"
#include "toric_limits/hausdorff.hpp"
#include "toric_limits/secondary_fan.hpp"
#include "toric_limits/sequence.hpp"
#include "toric_limits/subdivision.hpp"
#include "toric_limits/toric_variety.hpp"

using namespace toric_limits;

namespace {

const std::vector<std::vector<int>> kRho4Facets = {{0, 1, 2, 4}, {2, 3, 4}};
const std::vector<std::vector<int>> kTau3Facets = {{0, 1, 2}, {0, 2, 4}, {2, 3, 4}};

struct Check {
  int number;
  std::string name;
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

int g_failures = 0;

template <typename Fn>
void run_check(int number, const std::string& name, double budget_s, Fn body) {
  Check c{number, name};
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_s)
    c.require(false, "runtime " + std::to_string(secs) + " s exceeds " +
                         std::to_string(budget_s) + " s");
  if (!c.pass) ++g_failures;
  std::printf("criterion %d [%s]: %s%s%s (%.2f s)\n", c.number, c.name.c_str(),
              c.pass ? "PASS" : "FAIL", c.detail.empty() ? "" : " — ", c.detail.c_str(), secs);
  std::fflush(stdout);
}

SequenceSpec structured_sequence(std::vector<std::string> exprs, double bound = 10) {
  SequenceSpec seq;
  seq.mode = SequenceSpec::Mode::structured;
  for (const auto& e : exprs) seq.structured.growth.push_back(parse_growth_expression(e));
  seq.structured.declared_bound = bound;
  seq.structured.samples = {1, 2, 4, 8, 16, 32, 64, 128, 256};
  return seq;
}

double sup_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// final distance within tol + its own eta budget, and the tail never grows by
// more than the local eta budget
bool schedule_converges(const std::vector<ScheduleEntry>& rows, double tol, std::string& why) {
  if (rows.empty()) {
    why = "empty schedule";
    return false;
  }
  const auto& last = rows.back();
  if (last.d_h > tol + last.eta_budget) {
    why = "final d_H " + std::to_string(last.d_h) + " > " + std::to_string(tol) + " + eta " +
          std::to_string(last.eta_budget);
    return false;
  }
  for (size_t k = 0; k + 1 < rows.size(); ++k) {
    double slack = std::max(rows[k].eta_budget, rows[k + 1].eta_budget);
    if (rows[k + 1].d_h > rows[k].d_h + slack) {
      why = "tail grows at step " + std::to_string(k);
      return false;
    }
  }
  return true;
}

// all barycentric triples (i, j, m - i - j) / m
PointCloud triangle_grid(int m) {
  PointCloud g;
  g.mesh = 1.0 / m;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; i + j <= m; ++j)
      g.points.push_back(SimplexPoint{{double(i) / m, double(j) / m, double(m - i - j) / m}});
  return g;
}

SimplexPoint random_simplex_point(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> E(1.0);
  SimplexPoint z;
  z.coords.resize(n);
  double total = 0;
  for (double& c : z.coords) {
    c = E(rng);
    total += c;
  }
  for (double& c : z.coords) c /= total;
  return z;
}

PointCloud random_cloud(std::mt19937_64& rng, int n, int size) {
  PointCloud c;
  for (int k = 0; k < size; ++k) c.points.push_back(random_simplex_point(rng, n));
  return c;
}

QVec random_affine_values(const PointConfiguration& A, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> U(-768, 768);
  Rational c0(U(rng), 256), c1(U(rng), 256), c2(U(rng), 256);
  c0.canonicalize();
  c1.canonicalize();
  c2.canonicalize();
  QVec v;
  for (const auto& a : A.points) {
    Rational val = c0 + c1 * a[0] + c2 * a[1];
    v.push_back(val);
  }
  return v;
}

void check_1_pentagon_sequence(Check& c) {
  auto A = pentagon();
  auto seq = structured_sequence({"-i - 1/i", "i - 1", "i", "-i/2", "-i"});
  auto res = sequence_limit(A, seq, 0.05, 0.05);

  c.require(res.predicted.subdivision.facets == kRho4Facets,
            "predicted facets are not the square-plus-triangle complex");
  c.require(res.predicted.subdivision.nonparticipating.empty(), "unexpected dropped labels");

  std::vector<double> diff = res.predicted.weight.log_values;
  diff[1] -= -1.0;  // target log w = (0, -1, 0, 0, 0)
  double werr = sup_abs(reduce_mod_aff(A, diff));
  c.require(werr <= 1e-9, "weight differs from (1, e^-1, 1, 1, 1) mod Aff by " +
                              std::to_string(werr));

  const auto& rows = res.report.distances;
  c.require(!rows.empty() && rows.back().t == 256.0, "schedule does not end at i = 256");
  std::string why;
  c.require(schedule_converges(rows, 0.05, why), why);
  c.require(res.report.verdict == Verdict::converged, "verdict is not converged");
}

void check_2_sqrt_sequence(Check& c) {
  auto A = pentagon();
  auto res1 = sequence_limit(A, structured_sequence({"sqrt(i) - i", "-i", "0", "0", "0"}), 0.05,
                             0.05);
  auto res2 = sequence_limit(
      A, structured_sequence({"sqrt(i) - i + 4/5", "-i - 1/2", "3/10", "1/10", "-1/5"}), 0.05,
      0.05);

  c.require(res1.predicted.subdivision.facets == kTau3Facets, "first run: not tau3");
  c.require(res2.predicted.subdivision.facets == kTau3Facets, "second run: not tau3");
  c.require(res1.report.verdict == Verdict::converged, "first run: not converged");
  c.require(res2.report.verdict == Verdict::converged, "second run: not converged");
  c.require(res1.predicted.subdivision == res2.predicted.subdivision,
            "predicted subdivisions differ");

  // the two weights are genuinely different translates
  c.require(!same_translate(A, res1.predicted.weight, res2.predicted.weight),
            "the two weights coincide mod Aff; the check would be vacuous");

  // each facet cloud fills the facet's simplex: compare with a plain
  // barycentric grid, judged against the two net radii
  for (const auto& F : res1.predicted.subdivision.facets) {
    auto AF = subconfiguration(A, F);
    std::vector<double> logs;
    for (int a : F) logs.push_back(res1.predicted.weight.log_values[a]);
    auto cloud = sample_variety(AF, WeightVector::from_logs(logs), 0.05);
    auto rep = hausdorff(cloud, triangle_grid(40));
    c.require(rep.d_h <= rep.eta_x + rep.eta_y,
              "facet cloud does not fill its simplex (d_H " + std::to_string(rep.d_h) + ")");
  }

  // identical predicted complexes: the two sampled complexes are nets of the
  // same set
  auto ca = complex_sample(A, res1.predicted.subdivision, res1.predicted.weight, 0.05);
  auto cb = complex_sample(A, res2.predicted.subdivision, res2.predicted.weight, 0.05);
  auto rep = hausdorff(ca, cb);
  c.require(rep.d_h <= rep.eta_x + rep.eta_y,
            "predicted complexes differ beyond the sampling budget");
}

void check_3_degeneration_spot_checks(Check& c) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> L(-3072, 3072);  // lift entries k/1024 in [-3, 3]
  std::uniform_real_distribution<double> W(-3, 3);

  for (const auto& A : {pentagon(), grid3x3()}) {
    for (int trial = 0; trial < 20; ++trial) {
      QVec lam;
      for (int a = 0; a < A.size(); ++a) {
        Rational q(L(rng), 1024);
        q.canonicalize();
        lam.push_back(q);
      }
      std::vector<double> logs(A.size());
      for (auto& v : logs) v = W(rng);
      auto w = WeightVector::from_logs(logs);
      auto rep = verify_toric_degeneration(A, lam, w, default_t_schedule(), 0.05, 0.05);
      const auto& last = rep.distances.back();
      bool ok = rep.verdict == Verdict::converged && last.t == 40.0 &&
                last.d_h <= 0.05 + last.eta_budget;
      c.require(ok, "run " + std::to_string(trial) + " on " + std::to_string(A.size()) +
                        " points: final d_H " + std::to_string(last.d_h) + ", eta " +
                        std::to_string(last.eta_budget));
      if (!c.pass) return;
    }
  }
}

void check_4_secondary_fan(Check& c) {
  auto A = pentagon();
  auto fan = sample_secondary_fan(A, 2000, 0);

  int full = 0, walls = 0, minimal = 0;
  for (const auto& cell : fan.cells) {
    if (cell.full_dimensional)
      ++full;
    else if (cell.cone.dim == 4)
      ++walls;
    else if (cell.cone.dim == 3)
      ++minimal;
  }
  c.require(full == 5, "expected 5 chambers, found " + std::to_string(full));
  c.require(walls == 5, "expected 5 walls, found " + std::to_string(walls));
  c.require(minimal == 1, "expected one minimal cell, found " + std::to_string(minimal));
  c.require(fan.cells.size() == 11, "expected 11 cells in total");

  Gauge lg = LabelGauge{{"1,1", "1/2,3/2", "0,1"}};
  auto gauge_xy = [&](const QVec& v) {
    QVec red = primitive_integer_direction(reduce_mod_aff(A, v, lg));
    return std::make_pair(red[0], red[1]);
  };

  bool tau3_ok = false, rho4_ok = false;
  for (const auto& cell : fan.cells) {
    if (cell.subdivision.facets == kTau3Facets && cell.subdivision.nonparticipating.empty()) {
      // inequalities {s < 0, t < s} up to positive scaling: reduced forms
      // (-1, 0) and (1, -1) in the gauge plane
      std::vector<std::pair<Rational, Rational>> forms;
      for (const auto& psi : cell.cone.forms) {
        QVec g = primitive_integer_direction(QVec{psi[0], psi[1]});
        forms.emplace_back(g[0], g[1]);
      }
      std::sort(forms.begin(), forms.end());
      tau3_ok = forms == std::vector<std::pair<Rational, Rational>>{
                             {Rational(-1), Rational(0)}, {Rational(1), Rational(-1)}};
    }
    if (cell.subdivision.facets == kRho4Facets && cell.subdivision.nonparticipating.empty()) {
      rho4_ok = cell.cone.rays.size() == 1 &&
                gauge_xy(cell.cone.rays[0]) == std::make_pair(Rational(-1), Rational(-1));
    }
  }
  c.require(tau3_ok, "tau3 chamber inequalities do not match {s < 0, t < s}");
  c.require(rho4_ok, "rho4 ray is not (-1, -1) in gauge coordinates");
}

void check_5_birch_round_trip(Check& c) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> W(-3, 3);

  for (const auto& A : {pentagon(), unit_square(), grid3x3()}) {
    auto rels = affine_relations_basis(A);
    // bounding box of the configuration
    double xmax = 0, ymax = 0;
    for (const auto& a : A.points) {
      xmax = std::max(xmax, to_double(a[0]));
      ymax = std::max(ymax, to_double(a[1]));
    }
    double worst_rt = 0, worst_res = 0;
    int worst_iter = 0;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> logs(A.size());
      for (auto& v : logs) v = W(rng);
      auto w = WeightVector::from_logs(logs);
      for (int ix = 0; ix * 0.05 <= xmax + 1e-12; ++ix)
        for (int iy = 0; iy * 0.05 <= ymax + 1e-12; ++iy) {
          double x = ix * 0.05, y = iy * 0.05;
          BirchResult r;
          try {
            r = birch_inverse(A, w, {x, y});
          } catch (const std::invalid_argument&) {
            continue;  // grid point outside conv(A)
          }
          auto p = taut(A, r.z.coords);
          worst_rt = std::max({worst_rt, std::abs(p[0] - x), std::abs(p[1] - y)});
          worst_iter = std::max(worst_iter, r.iterations);
          for (const auto& rel : rels)
            worst_res = std::max(worst_res, binomial_residual(r.z, w, rel));
          if (!r.converged) {
            c.require(false, "a solve did not converge");
            return;
          }
        }
    }
    c.require(worst_rt <= 1e-9, "round-trip error " + std::to_string(worst_rt));
    c.require(worst_res <= 1e-9, "binomial residual " + std::to_string(worst_res));
    c.require(worst_iter <= 200, "iteration count " + std::to_string(worst_iter));
    if (!c.pass) return;
  }
}

void check_6_exact_identities(Check& c) {
  auto A = pentagon();
  auto faces = faces_of_configuration(A);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<size_t> F(0, faces.size() - 1);

  // projection distance formula
  double worst = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    auto z = random_simplex_point(rng, 5);
    const auto& face = faces[F(rng)].members;
    double off = 0;
    SimplexPoint embedded;
    embedded.coords.assign(5, 0.0);
    for (int a = 0; a < 5; ++a)
      if (!std::binary_search(face.begin(), face.end(), a)) off += z.coords[a];
    auto proj = project_to_face(z, face);
    for (size_t k = 0; k < face.size(); ++k) embedded.coords[face[k]] = proj.coords[k];
    worst = std::max(worst, std::abs(l1(z, embedded) - 2 * off));
  }
  c.require(worst <= 1e-12, "projection formula error " + std::to_string(worst));

  // metric axioms
  std::uniform_int_distribution<int> S(3, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    auto X = random_cloud(rng, 4, S(rng));
    auto Y = random_cloud(rng, 4, S(rng));
    auto Z = random_cloud(rng, 4, S(rng));
    double xy = hausdorff(X, Y).d_h;
    double yx = hausdorff(Y, X).d_h;
    double yz = hausdorff(Y, Z).d_h;
    double xz = hausdorff(X, Z).d_h;
    if (xy != yx) {
      c.require(false, "hausdorff is not symmetric");
      return;
    }
    if (xz > xy + yz + 1e-12) {
      c.require(false, "triangle inequality fails");
      return;
    }
    if (hausdorff(X, X).d_h != 0.0) {
      c.require(false, "self distance is nonzero");
      return;
    }
  }

  // |tu - v| >= |u - v| for Euclidean-unit u, v and t >= 1
  std::normal_distribution<double> N(0, 1);
  std::uniform_real_distribution<double> T(1, 100);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<double> u(5), v(5);
    double nu = 0, nv = 0;
    for (int i = 0; i < 5; ++i) {
      u[i] = N(rng);
      v[i] = N(rng);
      nu += u[i] * u[i];
      nv += v[i] * v[i];
    }
    nu = std::sqrt(nu);
    nv = std::sqrt(nv);
    double t = T(rng);
    double tuv = 0, uv = 0;
    for (int i = 0; i < 5; ++i) {
      tuv += (t * u[i] / nu - v[i] / nv) * (t * u[i] / nu - v[i] / nv);
      uv += (u[i] / nu - v[i] / nv) * (u[i] / nu - v[i] / nv);
    }
    if (std::sqrt(tuv) < std::sqrt(uv) - 1e-12) {
      c.require(false, "scaling inequality fails");
      return;
    }
  }
}

void check_7_stabilizer_invariance(Check& c) {
  auto A = pentagon();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> W(-3, 3);
  std::vector<double> sched = {0, 2, 4};

  for (int trial = 0; trial < 100; ++trial) {
    QVec aff = random_affine_values(A, rng);

    // subdivisions ignore affine shifts of the lift
    QVec lift = random_rational_lift(rng, 5);
    QVec shifted = lift;
    for (int a = 0; a < 5; ++a) shifted[a] += aff[a];
    auto S1 = induced_subdivision(A, lift).combinatorics;
    auto S2 = induced_subdivision(A, shifted).combinatorics;
    if (!(S1 == S2)) {
      c.require(false, "subdivision changed under an affine shift");
      return;
    }

    // sampled varieties ignore affine shifts of the log-weight
    std::vector<double> logs(5), logs2(5);
    for (int a = 0; a < 5; ++a) {
      logs[a] = W(rng);
      logs2[a] = logs[a] + to_double(aff[a]);
    }
    auto c1 = sample_variety(A, WeightVector::from_logs(logs), 0.3);
    auto c2 = sample_variety(A, WeightVector::from_logs(logs2), 0.3);
    if (c1.points.size() != c2.points.size()) {
      c.require(false, "cloud sizes differ under an affine shift");
      return;
    }
    for (size_t k = 0; k < c1.points.size(); ++k)
      for (int a = 0; a < 5; ++a)
        if (std::abs(c1.points[k].coords[a] - c2.points[k].coords[a]) > 1e-9) {
          c.require(false, "sampled point moved under an affine shift");
          return;
        }

    // degeneration predictions are unchanged
    auto r1 = verify_toric_degeneration(A, lift, WeightVector::from_logs(logs), sched, 0.3, 0.3);
    auto r2 = verify_toric_degeneration(A, shifted, WeightVector::from_logs(logs2), sched, 0.3,
                                        0.3);
    if (!(r1.predicted.subdivision == r2.predicted.subdivision) ||
        !same_translate(A, r1.predicted.weight, r2.predicted.weight)) {
      c.require(false, "degeneration prediction changed under an affine shift");
      return;
    }
    for (size_t k = 0; k < sched.size(); ++k)
      if (std::abs(r1.distances[k].d_h - r2.distances[k].d_h) > 1e-9) {
        c.require(false, "distance curve changed under an affine shift");
        return;
      }
  }
}

void check_8_oracle_equivalence(Check& c) {
  std::mt19937_64 rng(5);

  auto compare = [&](const PointConfiguration& A, const QVec& lift) {
    auto fast = induced_subdivision(A, lift).combinatorics;
    auto slow = test_oracle::upper_facets(A, lift);
    return fast == slow;
  };

  for (const auto& A : {pentagon(), grid3x3()})
    for (int trial = 0; trial < 200; ++trial) {
      std::uniform_int_distribution<int> K(-640, 640);
      QVec lift;
      for (int a = 0; a < A.size(); ++a) {
        Rational q(K(rng), 128);
        q.canonicalize();
        lift.push_back(q);
      }
      if (!compare(A, lift)) {
        c.require(false, "mismatch on a fixed configuration, trial " + std::to_string(trial));
        return;
      }
    }

  // fresh random 6-point planar configurations
  std::uniform_int_distribution<int> C(-4, 4);
  std::uniform_int_distribution<int> K(-640, 640);
  int done = 0;
  while (done < 200) {
    std::vector<QVec> pts;
    std::vector<std::string> labels;
    while (pts.size() < 6) {
      QVec p = {Rational(C(rng)), Rational(C(rng))};
      bool dup = false;
      for (const auto& q : pts) dup = dup || q == p;
      if (dup) continue;
      labels.push_back("p" + std::to_string(pts.size()));
      pts.push_back(p);
    }
    PointConfiguration A;
    try {
      A = new_configuration(2, labels, pts);
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (!A.spans()) continue;
    QVec lift;
    for (int a = 0; a < 6; ++a) {
      Rational q(K(rng), 128);
      q.canonicalize();
      lift.push_back(q);
    }
    if (!compare(A, lift)) {
      c.require(false, "mismatch on a random 6-point configuration");
      return;
    }
    ++done;
  }
}

void check_9_limit_equations(Check& c) {
  auto A = pentagon();
  Subdivision rho4{kRho4Facets, {}};
  auto w = WeightVector::from_logs({0, -1, 0, 0, 0});
  auto eq = limit_equations(A, rho4, w);

  // monomials z_{10} z_{1/2,3/2} and z_{00} z_{1/2,3/2}, as sorted label pairs
  c.require(eq.monomials == std::vector<std::vector<int>>{{0, 3}, {1, 3}},
            "monomial supports are wrong");

  c.require(eq.binomials.size() == 1, "expected exactly one binomial");
  if (!eq.binomials.empty()) {
    const auto& b = eq.binomials[0];
    c.require(rho4.facets[b.facet] == std::vector<int>{0, 1, 2, 4},
              "binomial not on the square facet");
    // coefficient ratio between the two monomials is e^{-1}, orientation-free
    double ratio = std::exp(-std::abs(b.log_alpha_weight - b.log_beta_weight));
    double rel = std::abs(ratio - std::exp(-1.0)) / std::exp(-1.0);
    c.require(rel <= 1e-12, "coefficient ratio off by relative " + std::to_string(rel));
    // and the e^{-1} coefficient sits opposite the relation side containing
    // the weighted label (1,0)
    bool alpha_has_10 = sign(b.relation.alpha[1]) != 0;
    double lighter = alpha_has_10 ? b.log_alpha_weight : b.log_beta_weight;
    c.require(std::abs(lighter - (-1.0)) <= 1e-12, "e^{-1} attaches to the wrong monomial");
  }
}

}  // namespace

int main() {
  run_check(1, "pentagon sequence end-to-end", 60, check_1_pentagon_sequence);
  run_check(2, "square-root sequence and its complex", 60, check_2_sqrt_sequence);
  run_check(3, "degeneration spot checks", 300, check_3_degeneration_spot_checks);
  run_check(4, "pentagon secondary fan", 30, check_4_secondary_fan);
  run_check(5, "birch round trip", 120, check_5_birch_round_trip);
  run_check(6, "exact metric identities", 600, check_6_exact_identities);
  run_check(7, "stabilizer invariance", 600, check_7_stabilizer_invariance);
  run_check(8, "oracle equivalence", 60, check_8_oracle_equivalence);
  run_check(9, "limit equations", 60, check_9_limit_equations);
  return g_failures;
}
