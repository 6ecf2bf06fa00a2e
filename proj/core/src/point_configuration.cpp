#include "toric_limits/point_configuration.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "toric_limits/hull.hpp"
#include "toric_limits/linalg.hpp"

namespace toric_limits {

int PointConfiguration::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

namespace {

int affine_rank_of(const std::vector<QVec>& points, int dim) {
  QMat rows;
  for (const auto& p : points) {
    QVec row(dim + 1);
    row[0] = 1;
    for (int j = 0; j < dim; ++j) row[j + 1] = p[j];
    rows.push_back(std::move(row));
  }
  return rank(std::move(rows));
}

}  // namespace

PointConfiguration new_configuration(int dim, std::vector<std::string> labels,
                                     std::vector<QVec> points, ScalarMode mode) {
  if (dim < 1) throw std::invalid_argument("configuration dimension must be >= 1");
  if (labels.empty()) throw std::invalid_argument("configuration needs at least one point");
  if (labels.size() != points.size())
    throw std::invalid_argument("labels and points must have equal length");
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate label '" + l + "'");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("point arity does not match dimension");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw std::invalid_argument("points must be pairwise distinct ('" + labels[i] +
                                    "' and '" + labels[j] + "' coincide)");
  PointConfiguration A;
  A.dim = dim;
  A.mode = mode;
  A.labels = std::move(labels);
  A.points = std::move(points);
  A.affine_rank = affine_rank_of(A.points, dim);
  return A;
}

PointConfiguration subconfiguration(const PointConfiguration& A,
                                    const std::vector<int>& members) {
  std::vector<std::string> labels;
  std::vector<QVec> pts;
  for (int i : members) {
    labels.push_back(A.labels.at(i));
    pts.push_back(A.points.at(i));
  }
  return new_configuration(A.dim, std::move(labels), std::move(pts), A.mode);
}

double WeightVector::value(int i) const { return std::exp(log_values.at(i)); }

WeightVector WeightVector::ones(int n) {
  WeightVector w;
  w.log_values.assign(n, 0.0);
  return w;
}

WeightVector WeightVector::from_values(const std::vector<double>& vals) {
  WeightVector w;
  for (double v : vals) {
    if (!(v > 0) || !std::isfinite(v))
      throw std::invalid_argument("weights must be strictly positive and finite");
    w.log_values.push_back(std::log(v));
  }
  return w;
}

WeightVector WeightVector::from_logs(std::vector<double> logs) {
  for (double v : logs)
    if (!std::isfinite(v)) throw std::invalid_argument("weight logs must be finite");
  WeightVector w;
  w.log_values = std::move(logs);
  return w;
}

std::vector<QVec> affine_function_space(const PointConfiguration& A) {
  const int n = A.size();
  std::vector<QVec> gens;
  gens.emplace_back(n, Rational(1));
  for (int j = 0; j < A.dim; ++j) {
    QVec coord(n);
    for (int i = 0; i < n; ++i) coord[i] = A.points[i][j];
    gens.push_back(std::move(coord));
  }
  std::vector<QVec> basis;
  for (int i : independent_subset(gens)) basis.push_back(gens[i]);
  return basis;
}

QVec reduce_mod_aff(const PointConfiguration& A, const QVec& values, const Gauge& gauge) {
  if (static_cast<int>(values.size()) != A.size())
    throw std::invalid_argument("function has wrong arity for configuration");
  auto basis = affine_function_space(A);
  if (std::holds_alternative<OrthogonalGauge>(gauge)) {
    QVec proj = project_onto_span(basis, values);
    QVec out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] - proj[i];
    return out;
  }
  const auto& lg = std::get<LabelGauge>(gauge);
  if (static_cast<int>(lg.labels.size()) != A.affine_rank)
    throw std::invalid_argument("label gauge needs exactly " + std::to_string(A.affine_rank) +
                                " labels");
  std::vector<int> idx;
  for (const auto& l : lg.labels) {
    int i = A.index_of(l);
    if (i < 0) throw std::invalid_argument("gauge label '" + l + "' not in configuration");
    idx.push_back(i);
  }
  // Solve for the affine function agreeing with `values` at the gauge labels:
  // columns are the affine basis, rows the gauge points.
  QMat sys(idx.size(), QVec(basis.size()));
  QVec rhs(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) sys[r][c] = basis[c][idx[r]];
    rhs[r] = values[idx[r]];
  }
  {
    QMat check = sys;
    if (rank(std::move(check)) != static_cast<int>(idx.size()))
      throw std::invalid_argument("gauge labels must name affinely independent points");
  }
  auto coef = solve(sys, rhs);
  if (!coef) throw std::invalid_argument("gauge labels must name affinely independent points");
  QVec out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    Rational g = 0;
    for (std::size_t c = 0; c < basis.size(); ++c) g += (*coef)[c] * basis[c][i];
    out[i] = values[i] - g;
  }
  return out;
}

FunctionOnA reduce_mod_aff(const PointConfiguration& A, const FunctionOnA& f,
                           const Gauge& gauge) {
  return FunctionOnA{reduce_mod_aff(A, f.values, gauge)};
}

std::vector<GrowthPoly> reduce_mod_aff(const PointConfiguration& A,
                                       const std::vector<GrowthPoly>& values,
                                       const Gauge& gauge) {
  if (static_cast<int>(values.size()) != A.size())
    throw std::invalid_argument("sequence has wrong arity for configuration");
  std::set<int> exponents;
  for (const auto& p : values)
    for (const auto& [k, c] : p.terms()) exponents.insert(k);
  std::vector<GrowthPoly> out(values.size());
  for (int k : exponents) {
    QVec coeff(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) coeff[i] = values[i].coefficient(k);
    QVec red = reduce_mod_aff(A, coeff, gauge);
    for (std::size_t i = 0; i < values.size(); ++i)
      out[i] = out[i] + GrowthPoly::term(red[i], k);
  }
  return out;
}

std::vector<double> reduce_mod_aff(const PointConfiguration& A,
                                   const std::vector<double>& values, const Gauge& gauge) {
  return to_doubles(reduce_mod_aff(A, rationals_from_doubles(values), gauge));
}

bool is_affine_on(const PointConfiguration& A, const QVec& values) {
  return in_span(affine_function_space(A), values);
}

std::vector<double> taut(const PointConfiguration& A, const std::vector<double>& z) {
  if (static_cast<int>(z.size()) != A.size())
    throw std::invalid_argument("simplex point has wrong arity for configuration");
  std::vector<double> x(A.dim, 0.0);
  for (int i = 0; i < A.size(); ++i)
    for (int j = 0; j < A.dim; ++j) x[j] += z[i] * A.points[i][j].get_d();
  return x;
}

// ---- faces ----

namespace {

struct SpanData {
  QVec origin;
  std::vector<QVec> edges;   // independent edge vectors, size sdim
  QMat pseudo;               // sdim x dim, y = pseudo * (x - origin)
  int sdim = 0;
};

SpanData affine_span(const PointConfiguration& A) {
  SpanData s;
  s.origin = A.points[0];
  std::vector<QVec> all_edges;
  for (int i = 1; i < A.size(); ++i) {
    QVec e(A.dim);
    for (int j = 0; j < A.dim; ++j) e[j] = A.points[i][j] - s.origin[j];
    all_edges.push_back(std::move(e));
  }
  for (int i : independent_subset(all_edges)) s.edges.push_back(all_edges[i]);
  s.sdim = static_cast<int>(s.edges.size());
  if (s.sdim == 0) return s;
  // pseudo-inverse (E^T E)^{-1} E^T, rows = span coordinates
  QMat gram(s.sdim, QVec(s.sdim));
  for (int i = 0; i < s.sdim; ++i)
    for (int j = 0; j < s.sdim; ++j) gram[i][j] = dot(s.edges[i], s.edges[j]);
  s.pseudo.assign(s.sdim, QVec(A.dim));
  for (int col = 0; col < A.dim; ++col) {
    QVec rhs(s.sdim);
    for (int i = 0; i < s.sdim; ++i) rhs[i] = s.edges[i][col];
    auto sol = solve(gram, rhs);
    if (!sol) throw std::logic_error("affine_span: singular Gram matrix");
    for (int i = 0; i < s.sdim; ++i) s.pseudo[i][col] = (*sol)[i];
  }
  return s;
}

QVec span_coordinates(const SpanData& s, const QVec& x) {
  QVec diff(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) diff[j] = x[j] - s.origin[j];
  return matvec(s.pseudo, diff);
}

int face_dimension(const PointConfiguration& A, const std::vector<int>& members) {
  std::vector<QVec> pts;
  for (int i : members) pts.push_back(A.points[i]);
  return affine_rank_of(pts, A.dim) - 1;
}

}  // namespace

std::vector<ConfigFace> faces_of_configuration(const PointConfiguration& A) {
  const int n = A.size();
  std::vector<ConfigFace> out;

  std::vector<int> everyone(n);
  for (int i = 0; i < n; ++i) everyone[i] = i;

  SpanData span = affine_span(A);
  if (span.sdim == 0) {
    // single point
    out.push_back(ConfigFace{everyone, QVec(A.dim, Rational(0)), Rational(0), 0});
    return out;
  }

  // hull in span coordinates
  std::vector<std::vector<Rational>> ypts;
  for (int i = 0; i < n; ++i) ypts.push_back(span_coordinates(span, A.points[i]));
  auto hull = convex_hull_facets(ypts);

  // facet halfspaces lifted back to ambient coordinates
  struct FacetData {
    std::vector<int> members;
    QVec normal;
    Rational offset;
  };
  std::vector<FacetData> facets;
  for (std::size_t f = 0; f < hull.members.size(); ++f) {
    QVec nu(A.dim, Rational(0));
    for (int j = 0; j < A.dim; ++j)
      for (int i = 0; i < span.sdim; ++i) nu[j] += span.pseudo[i][j] * hull.normals[f][i];
    Rational c = hull.offsets[f] + dot(nu, span.origin);
    facets.push_back({hull.members[f], std::move(nu), std::move(c)});
  }

  // meet-closure of facet member sets gives every proper face
  std::set<std::vector<int>> sets;
  for (const auto& f : facets) sets.insert(f.members);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> current(sets.begin(), sets.end());
    for (std::size_t a = 0; a < current.size(); ++a)
      for (std::size_t b = a + 1; b < current.size(); ++b) {
        std::vector<int> meet;
        std::set_intersection(current[a].begin(), current[a].end(), current[b].begin(),
                              current[b].end(), std::back_inserter(meet));
        if (!meet.empty() && sets.insert(meet).second) grew = true;
      }
  }

  for (const auto& members : sets) {
    QVec nu(A.dim, Rational(0));
    Rational c = 0;
    for (const auto& f : facets) {
      if (std::includes(f.members.begin(), f.members.end(), members.begin(), members.end())) {
        for (int j = 0; j < A.dim; ++j) nu[j] += f.normal[j];
        c += f.offset;
      }
    }
    out.push_back(ConfigFace{members, std::move(nu), std::move(c),
                             face_dimension(A, members)});
  }
  out.push_back(ConfigFace{everyone, QVec(A.dim, Rational(0)), Rational(0), span.sdim});

  std::sort(out.begin(), out.end(), [](const ConfigFace& a, const ConfigFace& b) {
    return std::tie(a.dim, a.members) < std::tie(b.dim, b.members);
  });
  return out;
}

std::vector<int> face_containing(const PointConfiguration& A,
                                 const std::vector<ConfigFace>& faces,
                                 const std::vector<double>& p, double tol) {
  // Tight facets (faces of codimension one within the span) pin the face.
  int full_dim = faces.back().dim;
  std::vector<int> members;
  bool first = true;
  for (const auto& face : faces) {
    if (face.dim != full_dim - 1) continue;
    double nu_p = 0, scale = 1;
    for (int j = 0; j < A.dim; ++j) {
      double c = face.normal[j].get_d();
      nu_p += c * p[j];
      scale = std::max(scale, std::abs(c));
    }
    double gap = face.offset.get_d() - nu_p;
    if (std::abs(gap) > tol * scale) continue;
    if (first) {
      members = face.members;
      first = false;
    } else {
      std::vector<int> meet;
      std::set_intersection(members.begin(), members.end(), face.members.begin(),
                            face.members.end(), std::back_inserter(meet));
      members = std::move(meet);
    }
  }
  if (first) {
    members.resize(A.size());
    for (int i = 0; i < A.size(); ++i) members[i] = i;
  }
  return members;
}

std::optional<QVec> affine_combination_weights(const QMat& points, const QVec& x) {
  if (points.empty()) return std::nullopt;
  const std::size_t dim = x.size();
  QMat sys(dim + 1, QVec(points.size()));
  QVec rhs(dim + 1);
  for (std::size_t i = 0; i < points.size(); ++i) sys[0][i] = 1;
  rhs[0] = 1;
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < points.size(); ++i) sys[j + 1][i] = points[i][j];
    rhs[j + 1] = x[j];
  }
  return solve(sys, rhs);
}

std::vector<int> lex_first_affine_basis(const PointConfiguration& A,
                                        const std::vector<int>& members) {
  std::vector<QVec> rows;
  for (int i : members) {
    QVec row(A.dim + 1);
    row[0] = 1;
    for (int j = 0; j < A.dim; ++j) row[j + 1] = A.points[i][j];
    rows.push_back(std::move(row));
  }
  std::vector<int> out;
  for (int i : independent_subset(rows)) out.push_back(members[i]);
  return out;
}

}  // namespace toric_limits
