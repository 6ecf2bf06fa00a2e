#include "toric_limits/sequence.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "toric_limits/linalg.hpp"

namespace toric_limits {

namespace {

constexpr double kRawDivergenceFactor = 10.0;  // documented raw-mode heuristic
constexpr double kClusterTol = 1e-6;
constexpr double kNnlsTol = 1e-10;

GrowthPoly apply_form_growth(const QVec& psi, const std::vector<GrowthPoly>& g) {
  GrowthPoly out;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (psi[j] == 0) continue;
    out = out + GrowthPoly(psi[j]) * g[j];
  }
  return out;
}

double apply_form_double(const QVec& psi, const std::vector<double>& v) {
  double s = 0;
  for (std::size_t j = 0; j < v.size(); ++j) s += psi[j].get_d() * v[j];
  return s;
}

std::vector<long> default_samples() {
  return {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
}

std::vector<long> structured_samples(const StructuredSequence& s) {
  return s.samples.empty() ? default_samples() : s.samples;
}

// Indices where the structured sequence provably sits outside tau are empty
// only "eventually"; report the sampled violations for transparency.
std::vector<long> tau_violations_structured(const StructuredSequence& seq, const Cone& tau) {
  std::vector<long> bad;
  for (long i : structured_samples(seq)) {
    bool ok = true;
    std::vector<double> v(seq.growth.size());
    for (std::size_t j = 0; j < seq.growth.size(); ++j)
      v[j] = seq.growth[j].eval(static_cast<double>(i));
    for (const auto& psi : tau.equalities)
      if (std::abs(apply_form_double(psi, v)) > 1e-7 * (1 + std::abs(v[0]))) ok = false;
    for (const auto& psi : tau.forms)
      if (apply_form_double(psi, v) < -1e-7) ok = false;
    if (!ok) bad.push_back(i);
  }
  return bad;
}

std::vector<long> tau_violations_raw(const RawSequence& seq, const Cone& tau) {
  std::vector<long> bad;
  for (std::size_t k = 0; k < seq.values.size(); ++k) {
    const auto& v = seq.values[k];
    bool ok = true;
    for (const auto& psi : tau.equalities)
      if (std::abs(apply_form_double(psi, v)) > 1e-7) ok = false;
    for (const auto& psi : tau.forms)
      if (apply_form_double(psi, v) < -1e-7) ok = false;
    if (!ok) bad.push_back(static_cast<long>(k + 1));
  }
  return bad;
}

double median_abs(std::vector<double> vals) {
  if (vals.empty()) return 0;
  for (auto& v : vals) v = std::abs(v);
  std::sort(vals.begin(), vals.end());
  std::size_t m = vals.size() / 2;
  return vals.size() % 2 ? vals[m] : 0.5 * (vals[m - 1] + vals[m]);
}

}  // namespace

int SequenceSpec::arity() const {
  return mode == Mode::structured ? static_cast<int>(structured.growth.size())
                                  : (raw.values.empty() ? 0 : static_cast<int>(raw.values[0].size()));
}

std::vector<QVec> face_annihilators(const Cone& tau, const ConeFace& sigma) {
  std::vector<QVec> span = face_span(tau, sigma);
  if (span.empty()) {
    // annihilator of {0} is everything: standard basis
    std::vector<QVec> basis;
    for (int i = 0; i < tau.ambient_dim; ++i) {
      QVec e(tau.ambient_dim, Rational(0));
      e[i] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  QMat rows(span.begin(), span.end());
  return nullspace(rows);
}

BoundednessResult is_sigma_bounded(const SequenceSpec& seq, const Cone& tau,
                                   const ConeFace& sigma) {
  BoundednessResult res;
  std::vector<QVec> annihilators = face_annihilators(tau, sigma);

  if (seq.mode == SequenceSpec::Mode::structured) {
    const auto& s = seq.structured;
    if (s.growth.empty()) throw std::invalid_argument("empty sequence");
    if (static_cast<int>(s.growth.size()) != tau.ambient_dim)
      throw std::invalid_argument("sequence arity does not match cone ambient dimension");
    res.heuristic = false;
    res.tau_violations = tau_violations_structured(s, tau);
    for (const auto& psi : annihilators) {
      GrowthPoly val = apply_form_growth(psi, s.growth);
      if (!val.is_bounded()) {
        res.bounded = false;
        res.violated_form = psi;
        res.witness = "psi(v_i) = " + val.to_text() + " diverges";
        return res;
      }
    }
    res.bounded = true;
    double best = 0;
    for (const auto& psi : annihilators)
      for (long i : structured_samples(s)) {
        std::vector<double> v(s.growth.size());
        for (std::size_t j = 0; j < s.growth.size(); ++j)
          v[j] = s.growth[j].eval(static_cast<double>(i));
        best = std::max(best, std::abs(apply_form_double(psi, v)));
      }
    res.achieved_bound = best;
    res.witness = "all annihilators of the face stay bounded";
    return res;
  }

  const auto& r = seq.raw;
  if (r.values.size() < 8) throw std::invalid_argument("raw sequences need at least 8 samples");
  res.heuristic = true;
  res.tau_violations = tau_violations_raw(r, tau);
  const std::size_t N = r.values.size();
  for (const auto& psi : annihilators) {
    std::vector<double> prefix;
    for (std::size_t k = 0; k < N / 2; ++k)
      prefix.push_back(apply_form_double(psi, r.values[k]));
    double med = median_abs(prefix);
    double last = std::abs(apply_form_double(psi, r.values[N - 1]));
    if (last > kRawDivergenceFactor * (1 + med)) {
      res.bounded = false;
      res.violated_form = psi;
      std::ostringstream os;
      os << "|psi(v_N)| = " << last << " exceeds " << kRawDivergenceFactor << "*(1 + median "
         << med << ")";
      res.witness = os.str();
      return res;
    }
    for (std::size_t k = 0; k < N; ++k)
      res.achieved_bound =
          std::max(res.achieved_bound, std::abs(apply_form_double(psi, r.values[k])));
  }
  res.bounded = true;
  res.witness = "no annihilator exceeded the divergence threshold";
  return res;
}

MinFaceResult minimum_face_of_boundedness(const SequenceSpec& seq, const Cone& tau) {
  MinFaceResult out;
  std::vector<ConeFace> faces = cone_faces(tau);  // ascending dim

  if (seq.mode == SequenceSpec::Mode::structured) {
    const auto& s = seq.structured;
    // divergent coefficient vectors: coefficients of positive powers
    std::set<int> exps;
    for (const auto& g : s.growth)
      for (const auto& [k, c] : g.terms())
        if (k > 0) exps.insert(k);
    std::vector<QVec> divergent;
    for (int k : exps) {
      QVec c(s.growth.size());
      for (std::size_t j = 0; j < s.growth.size(); ++j) c[j] = s.growth[j].coefficient(k);
      divergent.push_back(std::move(c));
    }
    std::vector<int> matches;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      std::vector<QVec> span = face_span(tau, faces[f]);
      bool ok = true;
      for (const auto& c : divergent)
        if (!in_span(span, c)) {
          ok = false;
          break;
        }
      if (ok) matches.push_back(static_cast<int>(f));
    }
    if (matches.empty())
      throw std::invalid_argument(
          "no face of the cone contains the divergent directions (sequence not in cone?)");
    // faces is dim-ascending: the first match is minimal; note ambiguity if a
    // second match of the same dimension exists
    int first = matches[0];
    out.sigma = faces[first];
    for (long i : structured_samples(s)) out.selector.push_back(i);
    out.heuristic = false;
    int same_dim = 0;
    for (int f : matches)
      if (faces[f].dim == faces[first].dim) same_dim++;
    if (same_dim > 1)
      out.diagnostics = "multiple minimal faces contain the divergent directions; "
                        "picked the first in (dim, rays) order";
    return out;
  }

  const auto& r = seq.raw;
  for (const auto& face : faces) {
    SequenceSpec probe = seq;
    BoundednessResult b = is_sigma_bounded(probe, tau, face);
    if (b.bounded) {
      out.sigma = face;
      out.heuristic = true;
      for (std::size_t k = 0; k < r.values.size(); ++k)
        out.selector.push_back(static_cast<long>(k + 1));
      out.diagnostics = "raw-mode heuristic: first face (ascending dimension) passing the "
                        "divergence test";
      return out;
    }
  }
  // tau itself always passes (no annihilators beyond its span)
  out.sigma = faces.back();
  out.heuristic = true;
  out.diagnostics = "fell through to the full cone";
  return out;
}

std::vector<double> nearest_point_in_cone(const std::vector<QVec>& lineality,
                                          const std::vector<QVec>& rays,
                                          const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> cols;
  for (const auto& l : lineality) {
    std::vector<double> c = to_doubles(l), neg(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) neg[j] = -c[j];
    cols.push_back(c);
    cols.push_back(neg);
  }
  for (const auto& r : rays) cols.push_back(to_doubles(r));
  const int m = static_cast<int>(cols.size());
  if (m == 0) return std::vector<double>(n, 0.0);

  Eigen::MatrixXd G(n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) G(i, j) = cols[j][i];
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b(i) = x[i];

  // Lawson–Hanson nonnegative least squares.
  Eigen::VectorXd sol = Eigen::VectorXd::Zero(m);
  std::vector<bool> passive(m, false);
  for (int iter = 0; iter < 30 * m + 30; ++iter) {
    Eigen::VectorXd grad = G.transpose() * (b - G * sol);
    int best = -1;
    double bestv = kNnlsTol;
    for (int j = 0; j < m; ++j)
      if (!passive[j] && grad(j) > bestv) {
        bestv = grad(j);
        best = j;
      }
    if (best < 0) break;
    passive[best] = true;
    while (true) {
      std::vector<int> pidx;
      for (int j = 0; j < m; ++j)
        if (passive[j]) pidx.push_back(j);
      Eigen::MatrixXd Gp(n, pidx.size());
      for (std::size_t k = 0; k < pidx.size(); ++k) Gp.col(k) = G.col(pidx[k]);
      Eigen::VectorXd zp = Gp.colPivHouseholderQr().solve(b);
      bool all_pos = true;
      for (std::size_t k = 0; k < pidx.size(); ++k)
        if (zp(k) <= 0) all_pos = false;
      if (all_pos) {
        sol.setZero();
        for (std::size_t k = 0; k < pidx.size(); ++k) sol(pidx[k]) = zp(k);
        break;
      }
      double alpha = 1.0;
      for (std::size_t k = 0; k < pidx.size(); ++k)
        if (zp(k) <= 0) {
          double cur = sol(pidx[k]);
          if (cur - zp(k) > 0) alpha = std::min(alpha, cur / (cur - zp(k)));
        }
      for (std::size_t k = 0; k < pidx.size(); ++k) {
        double nv = sol(pidx[k]) + alpha * (zp(k) - sol(pidx[k]));
        sol(pidx[k]) = nv;
        if (nv <= kNnlsTol) passive[pidx[k]] = false;
      }
      sol = sol.unaryExpr([](double v) { return v < 0 ? 0.0 : v; });
    }
  }
  Eigen::VectorXd y = G * sol;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = y(i);
  return out;
}

SigmaDecomposition sigma_decomposition(const SequenceSpec& seq, const Cone& tau,
                                       const ConeFace& sigma) {
  SigmaDecomposition out;

  if (seq.mode == SequenceSpec::Mode::structured) {
    const auto& s = seq.structured;
    const std::size_t n = s.growth.size();
    if (n == 0) throw std::invalid_argument("empty sequence");

    // cone membership of the whole sequence, exact eventual signs
    for (const auto& psi : tau.equalities)
      if (!apply_form_growth(psi, s.growth).is_zero())
        throw std::invalid_argument("sequence leaves the cone: equality form not identically 0");
    for (const auto& psi : tau.forms) {
      GrowthPoly val = apply_form_growth(psi, s.growth);
      if (!val.is_zero() && val.sign() < 0)
        throw std::invalid_argument("sequence leaves the cone: facet form eventually negative");
    }

    // exact split: u = positive powers, vbar = the rest
    out.u.resize(n);
    out.vbar.resize(n);
    QVec v(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [k, c] : s.growth[j].terms()) {
        if (k > 0)
          out.u[j] = out.u[j] + GrowthPoly::term(c, k);
        else
          out.vbar[j] = out.vbar[j] + GrowthPoly::term(c, k);
      }
      v[j] = s.growth[j].coefficient(0);
    }

    // u must lie in the span of sigma (otherwise sigma is too small: any u_i
    // in sigma would leave vbar_i = v_i - u_i unbounded)
    std::vector<QVec> span = face_span(tau, sigma);
    std::set<int> exps;
    for (const auto& g : out.u)
      for (const auto& [k, c] : g.terms()) exps.insert(k);
    for (int k : exps) {
      QVec c(n);
      for (std::size_t j = 0; j < n; ++j) c[j] = out.u[j].coefficient(k);
      if (!in_span(span, c))
        throw std::invalid_argument(
            "sigma too small: a divergent direction leaves the face span, so the bounded "
            "remainder would be unbounded");
    }
    // sanity: u is eventually inside sigma (follows from the span check plus
    // the cone membership above)
    for (const auto& psi : tau.forms) {
      GrowthPoly val = apply_form_growth(psi, out.u);
      if (!val.is_zero() && val.sign() < 0)
        throw std::logic_error("sigma_decomposition: divergent part exits the cone");
    }

    out.v = v;
    out.weight = WeightVector::from_logs(to_doubles(v));
    out.heuristic = false;
    out.multiple_accumulation = false;

    auto samples = structured_samples(s);
    out.selector = samples;
    for (long i : samples) {
      std::vector<double> ui(n), vb(n);
      for (std::size_t j = 0; j < n; ++j) {
        ui[j] = out.u[j].eval(static_cast<double>(i));
        vb[j] = out.vbar[j].eval(static_cast<double>(i));
        out.achieved_bound = std::max(out.achieved_bound, std::abs(vb[j]));
      }
      out.u_samples.push_back(std::move(ui));
      out.vbar_samples.push_back(std::move(vb));
    }
    if (s.declared_bound > 0 && out.achieved_bound > s.declared_bound) {
      std::ostringstream os;
      os << "declared bound " << s.declared_bound << " exceeded by sampled remainder "
         << out.achieved_bound;
      out.diagnostics = os.str();
    }
    return out;
  }

  // raw mode: project each sample onto sigma, cluster the tail half
  const auto& r = seq.raw;
  if (r.values.size() < 8) throw std::invalid_argument("raw sequences need at least 8 samples");
  const std::size_t N = r.values.size();
  const std::size_t n = r.values[0].size();
  std::vector<QVec> rays;
  for (int i : sigma.rays) rays.push_back(tau.rays[i]);

  for (std::size_t k = 0; k < N; ++k) {
    std::vector<double> u = nearest_point_in_cone(tau.lineality, rays, r.values[k]);
    std::vector<double> vb(n);
    for (std::size_t j = 0; j < n; ++j) vb[j] = r.values[k][j] - u[j];
    out.u_samples.push_back(std::move(u));
    out.vbar_samples.push_back(std::move(vb));
    out.selector.push_back(static_cast<long>(k + 1));
  }

  // cluster the tail half of vbar
  std::vector<double> centroid(n, 0.0);
  std::size_t tail_start = N / 2;
  double scale = 1.0;
  for (std::size_t k = tail_start; k < N; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      centroid[j] += out.vbar_samples[k][j];
      scale = std::max(scale, std::abs(out.vbar_samples[k][j]));
    }
  for (auto& c : centroid) c /= static_cast<double>(N - tail_start);
  double diam = 0;
  for (std::size_t k = tail_start; k < N; ++k)
    for (std::size_t l = k + 1; l < N; ++l) {
      double d = 0;
      for (std::size_t j = 0; j < n; ++j)
        d = std::max(d, std::abs(out.vbar_samples[k][j] - out.vbar_samples[l][j]));
      diam = std::max(diam, d);
    }
  out.multiple_accumulation = diam > kClusterTol * scale;
  out.heuristic = true;
  out.v = rationals_from_doubles(centroid);
  out.weight = WeightVector::from_logs(centroid);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t j = 0; j < n; ++j)
      out.achieved_bound = std::max(out.achieved_bound, std::abs(out.vbar_samples[k][j]));
  if (out.multiple_accumulation) {
    std::ostringstream os;
    os << "tail diameter " << diam << " exceeds " << kClusterTol
       << "*scale: multiple accumulation points likely; returned the tail centroid";
    out.diagnostics = os.str();
  }
  return out;
}

}  // namespace toric_limits
