#include "toric_limits/toric_variety.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "toric_limits/linalg.hpp"
#include "toric_limits/parallel.hpp"

namespace toric_limits {

namespace {

double logsumexp(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

void check_weight(const PointConfiguration& A, const WeightVector& w) {
  if (w.size() != A.size())
    throw std::invalid_argument("weight vector arity does not match configuration");
}

// Orthonormal basis (columns) of the linear span of {a_j - a_0}.
Eigen::MatrixXd span_basis(const PointConfiguration& A) {
  const int d = A.dim, n = A.size();
  const int s = A.affine_rank - 1;
  if (s == 0) return Eigen::MatrixXd(d, 0);
  Eigen::MatrixXd M(d, n - 1);
  for (int j = 1; j < n; ++j)
    for (int k = 0; k < d; ++k) {
      Rational e = A.points[j][k] - A.points[0][k];
      M(k, j - 1) = e.get_d();
    }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(d, s);
  return Q;
}

// Halfspace membership of p in conv(A), within a relative tolerance, using
// the codim-1 face certificates; plus affine-span membership when A does not
// span the ambient space.
bool inside_hull(const PointConfiguration& A, const std::vector<ConfigFace>& faces,
                 const std::vector<double>& p, double tol) {
  const int d = A.dim;
  double pscale = 1;
  for (double x : p) pscale = std::max(pscale, std::abs(x));
  const int full_dim = A.affine_rank - 1;
  if (full_dim < d) {
    Eigen::MatrixXd U = span_basis(A);
    Eigen::VectorXd r(d);
    for (int k = 0; k < d; ++k) r(k) = p[k] - A.points[0][k].get_d();
    Eigen::VectorXd off = r - U * (U.transpose() * r);
    if (off.lpNorm<Eigen::Infinity>() > tol * pscale) return false;
  }
  for (const auto& f : faces) {
    if (f.dim != full_dim - 1) continue;
    double v = -to_double(f.offset), scale = std::abs(to_double(f.offset));
    for (int k = 0; k < d; ++k) {
      double nk = to_double(f.normal[k]);
      v += nk * p[k];
      scale += std::abs(nk) * pscale;
    }
    if (v > tol * std::max(1.0, scale)) return false;
  }
  return true;
}

SimplexPoint from_logs_normalized(const std::vector<double>& logs) {
  double L = logsumexp(logs);
  SimplexPoint z;
  z.coords.resize(logs.size());
  for (std::size_t j = 0; j < logs.size(); ++j) z.coords[j] = std::exp(logs[j] - L);
  return z;
}

WeightVector restrict_weight(const WeightVector& w, const std::vector<int>& members) {
  WeightVector out;
  for (int m : members) out.log_values.push_back(w.log_values[m]);
  return out;
}

// Newton on the dual variables of the entropy maximization: z_j proportional
// to w_j * exp<theta, abar_j> with abar the span coordinates of the points.
// Requires p in the affine span and in the relative interior of conv(A).
BirchResult birch_newton(const PointConfiguration& A, const WeightVector& w,
                         const std::vector<double>& p) {
  const int d = A.dim, n = A.size();
  const int s = A.affine_rank - 1;
  BirchResult out;
  out.support.resize(n);
  for (int j = 0; j < n; ++j) out.support[j] = j;

  if (s == 0) {  // single point
    out.z.coords = {1.0};
    out.converged = true;
    return out;
  }

  Eigen::MatrixXd U = span_basis(A);
  Eigen::VectorXd o(d);
  for (int k = 0; k < d; ++k) o(k) = A.points[0][k].get_d();
  Eigen::MatrixXd abar(s, n);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd aj(d);
    for (int k = 0; k < d; ++k) aj(k) = A.points[j][k].get_d();
    abar.col(j) = U.transpose() * (aj - o);
  }
  Eigen::VectorXd pv(d);
  for (int k = 0; k < d; ++k) pv(k) = p[k];
  Eigen::VectorXd qbar = U.transpose() * (pv - o);
  // the effective target: p projected onto the span (off-span part is within
  // the membership tolerance by contract)
  Eigen::VectorXd peff = o + U * qbar;

  // Continuation in the weight: extreme log-weights (the t -> infinity end of
  // degeneration schedules) put the dual optimum far from 0 and force the
  // iteration through a flat mass-transfer valley, so ramp the weight up in
  // stages of bounded log-range, warm-starting theta. Each stage is one
  // Newton solve with its own iteration cap.
  double wrange = 0;
  for (int j = 0; j < n; ++j) wrange = std::max(wrange, std::abs(w.log_values[j]));
  const int stages = std::max(1, static_cast<int>(std::ceil(wrange / 5.0)));

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(s);
  std::vector<double> logw(n), logs(n);
  auto objective = [&](const Eigen::VectorXd& th) {
    for (int j = 0; j < n; ++j) logs[j] = logw[j] + abar.col(j).dot(th);
    return logsumexp(logs) - qbar.dot(th);
  };

  std::vector<double> z(n);
  bool converged = false;
  int used = 0;
  for (int stage = 1; stage <= stages; ++stage) {
    double frac = static_cast<double>(stage) / stages;
    for (int j = 0; j < n; ++j) logw[j] = frac * w.log_values[j];
    double f = objective(theta);
    converged = false;
    for (int it = 0; it < kBirchMaxIter; ++it, ++used) {
      double L = logsumexp(logs);
      for (int j = 0; j < n; ++j) z[j] = std::exp(logs[j] - L);

      Eigen::VectorXd m = Eigen::VectorXd::Zero(s);
      for (int j = 0; j < n; ++j) m += z[j] * abar.col(j);
      // ambient-space stopping test against the effective target
      Eigen::VectorXd tz = o + U * m;
      if ((tz - peff).lpNorm<Eigen::Infinity>() <= kBirchStop) {
        converged = true;
        break;
      }

      Eigen::VectorXd g = m - qbar;
      Eigen::MatrixXd H = -m * m.transpose();
      for (int j = 0; j < n; ++j) H += z[j] * abar.col(j) * abar.col(j).transpose();
      double mu = 0;
      Eigen::VectorXd step;
      for (int tries = 0; tries < 8; ++tries) {
        Eigen::MatrixXd Hd = H + mu * Eigen::MatrixXd::Identity(s, s);
        step = -Eigen::LDLT<Eigen::MatrixXd>(Hd).solve(g);
        if (step.allFinite() && g.dot(step) < 0) break;
        mu = (mu == 0) ? 1e-10 * std::max(1.0, H.trace()) : 10 * mu;
        step = -g;
      }

      // Cap the proposal's log-space motion: shifting any point's relative
      // log-mass by more than ~30 in one step is an artifact of a nearly
      // singular Hessian and would exceed the line search's dynamic range.
      double lmove = 0;
      for (int j = 0; j < n; ++j) lmove = std::max(lmove, std::abs(abar.col(j).dot(step)));
      if (lmove > 30.0) step *= 30.0 / lmove;

      if (g.lpNorm<Eigen::Infinity>() <= 1e-6) {
        // local phase: the objective is flat to machine precision here, so an
        // Armijo test on it stalls; take the undamped Newton step (quadratic
        // convergence in this basin)
        theta += step;
        f = objective(theta);
        continue;
      }
      double t = 1.0;
      const double slope = g.dot(step);
      bool moved = false;
      while (t > 1e-16) {
        double fnew = objective(theta + t * step);
        if (fnew <= f + 1e-4 * t * slope) {
          theta += t * step;
          f = fnew;
          moved = true;
          break;
        }
        t /= 2;
      }
      if (!moved) break;  // line search stalled at numerical precision
    }
    objective(theta);  // restore logs for the current theta
    if (!converged) break;
  }
  {
    double L = logsumexp(logs);
    for (int j = 0; j < n; ++j) z[j] = std::exp(logs[j] - L);
  }
  out.iterations = used;
  out.converged = converged;
  out.z.coords = z;
  if (!converged)
    throw std::runtime_error("birch_inverse: solver did not converge within the iteration cap");
  return out;
}

}  // namespace

SimplexPoint parametrize(const PointConfiguration& A, const WeightVector& w,
                         const std::vector<double>& x) {
  check_weight(A, w);
  if (static_cast<int>(x.size()) != A.dim)
    throw std::invalid_argument("parametrize: x has wrong dimension");
  for (double xi : x)
    if (!(xi > 0)) throw std::invalid_argument("parametrize: x must be strictly positive");
  std::vector<double> lx(A.dim);
  for (int k = 0; k < A.dim; ++k) lx[k] = std::log(x[k]);
  std::vector<double> logs(A.size());
  for (int j = 0; j < A.size(); ++j) {
    double e = w.log_values[j];
    for (int k = 0; k < A.dim; ++k) e += to_double(A.points[j][k]) * lx[k];
    logs[j] = e;
  }
  return from_logs_normalized(logs);
}

BirchResult birch_inverse(const PointConfiguration& A, const WeightVector& w,
                          const std::vector<double>& p) {
  check_weight(A, w);
  if (static_cast<int>(p.size()) != A.dim)
    throw std::invalid_argument("birch_inverse: p has wrong dimension");
  std::vector<ConfigFace> faces = faces_of_configuration(A);
  if (!inside_hull(A, faces, p, kEpsVariety))
    throw std::invalid_argument("birch_inverse: point lies outside the polytope");

  std::vector<int> members = face_containing(A, faces, p, kEpsVariety);
  if (static_cast<int>(members.size()) == A.size()) return birch_newton(A, w, p);

  // p sits on a proper face: recurse on its sub-configuration and embed
  PointConfiguration sub = subconfiguration(A, members);
  BirchResult rec = birch_inverse(sub, restrict_weight(w, members), p);
  BirchResult out;
  out.iterations = rec.iterations;
  out.converged = rec.converged;
  out.z.coords.assign(A.size(), 0.0);
  for (std::size_t i = 0; i < members.size(); ++i)
    out.z.coords[members[i]] = rec.z.coords[i];
  for (int si : rec.support) out.support.push_back(members[si]);
  std::sort(out.support.begin(), out.support.end());
  return out;
}

PointCloud sample_variety(const PointConfiguration& A, const WeightVector& w, double mesh) {
  check_weight(A, w);
  if (!(mesh > 0)) throw std::invalid_argument("sample_variety: mesh must be positive");
  const int d = A.dim;
  PointCloud cloud;
  cloud.mesh = mesh;
  cloud.provenance = "variety sample";

  std::vector<ConfigFace> faces = faces_of_configuration(A);  // ascending dim
  std::vector<std::vector<double>> kept;  // ambient duplicates filter

  auto push_point = [&](const SimplexPoint& z) {
    std::vector<double> amb = taut(A, z.coords);
    for (const auto& q : kept) {
      double delta = 0;
      for (int k = 0; k < d; ++k) delta = std::max(delta, std::abs(q[k] - amb[k]));
      if (delta <= 1e-9) return;
    }
    kept.push_back(amb);
    cloud.points.push_back(z);
  };

  for (const auto& face : faces) {
    PointConfiguration sub = subconfiguration(A, face.members);
    WeightVector wsub = restrict_weight(w, face.members);
    std::vector<std::vector<double>> grid;

    if (face.dim == 0) {
      grid.push_back(to_doubles(sub.points[0]));
    } else {
      const int s = face.dim;
      Eigen::MatrixXd U = span_basis(sub);
      Eigen::VectorXd o(d);
      for (int k = 0; k < d; ++k) o(k) = sub.points[0][k].get_d();
      // bounding box of the face in its span coordinates
      std::vector<double> lo(s, 0.0), hi(s, 0.0);
      for (int j = 0; j < sub.size(); ++j) {
        Eigen::VectorXd aj(d);
        for (int k = 0; k < d; ++k) aj(k) = sub.points[j][k].get_d();
        Eigen::VectorXd c = U.transpose() * (aj - o);
        for (int k = 0; k < s; ++k) {
          lo[k] = std::min(lo[k], c(k));
          hi[k] = std::max(hi[k], c(k));
        }
      }
      std::vector<std::vector<double>> axes(s);
      for (int k = 0; k < s; ++k) {
        for (double v = lo[k]; v < hi[k] - 1e-12; v += mesh) axes[k].push_back(v);
        axes[k].push_back(hi[k]);
      }
      std::vector<ConfigFace> subfaces = faces_of_configuration(sub);
      std::vector<int> idx(s, 0);
      while (true) {
        Eigen::VectorXd c(s);
        for (int k = 0; k < s; ++k) c(k) = axes[k][idx[k]];
        Eigen::VectorXd amb = o + U * c;
        std::vector<double> pt(d);
        for (int k = 0; k < d; ++k) pt[k] = amb(k);
        if (inside_hull(sub, subfaces, pt, kEpsVariety)) grid.push_back(pt);
        int k = 0;
        for (; k < s; ++k) {
          if (++idx[k] < static_cast<int>(axes[k].size())) break;
          idx[k] = 0;
        }
        if (k == s) break;
      }
    }

    std::vector<SimplexPoint> solved(grid.size());
    parallel_for(static_cast<int>(grid.size()), [&](int g) {
      BirchResult res = birch_inverse(sub, wsub, grid[g]);
      solved[g].coords.assign(A.size(), 0.0);
      for (std::size_t i = 0; i < face.members.size(); ++i)
        solved[g].coords[face.members[i]] = res.z.coords[i];
    });
    for (const auto& z : solved) push_point(z);
  }
  return cloud;
}

std::vector<AffineRelation> affine_relations_basis(const PointConfiguration& A) {
  const int n = A.size();
  QMat rows;
  rows.push_back(QVec(n, Rational(1)));
  for (int k = 0; k < A.dim; ++k) {
    QVec row(n);
    for (int j = 0; j < n; ++j) row[j] = A.points[j][k];
    rows.push_back(row);
  }
  std::vector<AffineRelation> out;
  for (QVec& ker : nullspace(rows)) {
    Rational scale;
    bool first = true;
    for (const auto& v : ker) {
      if (v == 0) continue;
      Rational m = abs(v);
      if (first || m < scale) scale = m;
      first = false;
    }
    if (first) continue;  // zero vector (cannot happen for a basis)
    AffineRelation rel;
    rel.alpha.assign(n, Rational(0));
    rel.beta.assign(n, Rational(0));
    for (int j = 0; j < n; ++j) {
      Rational v = ker[j] / scale;
      if (v > 0)
        rel.alpha[j] = v;
      else if (v < 0)
        rel.beta[j] = -v;
    }
    out.push_back(std::move(rel));
  }
  return out;
}

double binomial_residual(const SimplexPoint& z, const WeightVector& w,
                         const AffineRelation& rel) {
  const std::size_t n = z.coords.size();
  if (w.log_values.size() != n || rel.alpha.size() != n || rel.beta.size() != n)
    throw std::invalid_argument("binomial_residual: arity mismatch");
  double la = 0, lb = 0, lwa = 0, lwb = 0;
  bool za_zero = false, zb_zero = false;
  for (std::size_t j = 0; j < n; ++j) {
    double a = to_double(rel.alpha[j]), b = to_double(rel.beta[j]);
    if (a > 0) {
      lwa += a * w.log_values[j];
      if (z.coords[j] <= 0)
        za_zero = true;
      else
        la += a * std::log(z.coords[j]);
    }
    if (b > 0) {
      lwb += b * w.log_values[j];
      if (z.coords[j] <= 0)
        zb_zero = true;
      else
        lb += b * std::log(z.coords[j]);
    }
  }
  double M = std::max(lwa, lwb);
  double side1 = za_zero ? 0.0 : std::exp(la + lwb - M);
  double side2 = zb_zero ? 0.0 : std::exp(lb + lwa - M);
  return std::abs(side1 - side2);
}

SimplexPoint translate(const SimplexPoint& z, const WeightVector& w) {
  const std::size_t n = z.coords.size();
  if (w.log_values.size() != n) throw std::invalid_argument("translate: arity mismatch");
  std::vector<double> logs;
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < n; ++j)
    if (z.coords[j] > 0) {
      support.push_back(j);
      logs.push_back(std::log(z.coords[j]) + w.log_values[j]);
    }
  double L = logsumexp(logs);
  SimplexPoint out;
  out.coords.assign(n, 0.0);
  for (std::size_t i = 0; i < support.size(); ++i)
    out.coords[support[i]] = std::exp(logs[i] - L);
  return out;
}

SimplexPoint project_to_face(const SimplexPoint& z, const std::vector<int>& face_members) {
  double mass = 0;
  for (int m : face_members) mass += z.coords.at(m);
  if (!(mass > 0))
    throw std::invalid_argument("project_to_face: point has no mass on the face");
  SimplexPoint out;
  for (int m : face_members) out.coords.push_back(z.coords[m] / mass);
  return out;
}

bool same_translate(const PointConfiguration& A, const WeightVector& w,
                    const WeightVector& wprime) {
  check_weight(A, w);
  check_weight(A, wprime);
  std::vector<double> diff(A.size());
  double scale = 1;
  for (int j = 0; j < A.size(); ++j) {
    diff[j] = w.log_values[j] - wprime.log_values[j];
    scale = std::max(scale, std::abs(diff[j]));
  }
  std::vector<double> rep = reduce_mod_aff(A, diff, Gauge{OrthogonalGauge{}});
  double res = 0;
  for (double r : rep) res = std::max(res, std::abs(r));
  return res <= 1e-9 * scale;
}

}  // namespace toric_limits
