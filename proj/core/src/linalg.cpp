#include "toric_limits/linalg.hpp"

#include <stdexcept>

namespace toric_limits {

std::vector<int> rref(QMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

int rank(QMat m) { return static_cast<int>(rref(m).size()); }

std::optional<QVec> solve(const QMat& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve: shape mismatch");
  if (a.empty()) return QVec{};
  const std::size_t cols = a[0].size();
  QMat aug(a.size(), QVec(cols + 1));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  auto pivots = rref(aug);
  for (int p : pivots)
    if (p == static_cast<int>(cols)) return std::nullopt;  // 0 = 1 row
  QVec x(cols, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

std::vector<QVec> nullspace(const QMat& a) {
  if (a.empty()) return {};
  QMat m = a;
  auto pivots = rref(m);
  const std::size_t cols = a[0].size();
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVec v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec matvec(const QMat& a, const QVec& x) {
  QVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
  return out;
}

QVec project_onto_span(const std::vector<QVec>& basis, const QVec& v) {
  auto idx = independent_subset(basis);
  if (idx.empty()) return QVec(v.size(), Rational(0));
  QMat gram(idx.size(), QVec(idx.size()));
  QVec rhs(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) gram[i][j] = dot(basis[idx[i]], basis[idx[j]]);
    rhs[i] = dot(basis[idx[i]], v);
  }
  auto coef = solve(gram, rhs);
  if (!coef) throw std::logic_error("project_onto_span: singular Gram matrix");
  QVec out(v.size(), Rational(0));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t k = 0; k < v.size(); ++k) out[k] += (*coef)[i] * basis[idx[i]][k];
  return out;
}

bool in_span(const std::vector<QVec>& basis, const QVec& v) {
  bool v_zero = true;
  for (const auto& q : v)
    if (q != 0) { v_zero = false; break; }
  if (v_zero) return true;
  QMat m;
  for (const auto& b : basis) m.push_back(b);
  int r0 = rank(m);
  m.push_back(v);
  return rank(std::move(m)) == r0;
}

std::vector<int> independent_subset(const std::vector<QVec>& vecs) {
  std::vector<int> chosen;
  QMat m;
  int r = 0;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    m.push_back(vecs[i]);
    int r2 = rank(m);
    if (r2 > r) {
      chosen.push_back(static_cast<int>(i));
      r = r2;
    } else {
      m.pop_back();
    }
  }
  return chosen;
}

AffineChart AffineChart::build(const std::vector<QVec>& points) {
  if (points.empty()) throw std::invalid_argument("AffineChart: empty point set");
  AffineChart chart;
  chart.origin = points[0];
  const std::size_t dim = chart.origin.size();
  std::vector<QVec> all_edges;
  for (std::size_t i = 1; i < points.size(); ++i) {
    QVec e(dim);
    for (std::size_t j = 0; j < dim; ++j) e[j] = points[i][j] - chart.origin[j];
    all_edges.push_back(std::move(e));
  }
  for (int i : independent_subset(all_edges)) chart.edges.push_back(all_edges[i]);
  chart.sdim = static_cast<int>(chart.edges.size());
  if (chart.sdim == 0) return chart;
  QMat gram(chart.sdim, QVec(chart.sdim));
  for (int i = 0; i < chart.sdim; ++i)
    for (int j = 0; j < chart.sdim; ++j) gram[i][j] = dot(chart.edges[i], chart.edges[j]);
  chart.pseudo.assign(chart.sdim, QVec(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    QVec rhs(chart.sdim);
    for (int i = 0; i < chart.sdim; ++i) rhs[i] = chart.edges[i][col];
    auto sol = solve(gram, rhs);
    if (!sol) throw std::logic_error("AffineChart: singular Gram matrix");
    for (int i = 0; i < chart.sdim; ++i) chart.pseudo[i][col] = (*sol)[i];
  }
  return chart;
}

QVec AffineChart::coords(const QVec& x) const {
  QVec diff(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) diff[j] = x[j] - origin[j];
  if (sdim == 0) return {};
  return matvec(pseudo, diff);
}

bool AffineChart::contains(const QVec& x) const {
  QVec y = coords(x);
  QVec back = origin;
  for (int i = 0; i < sdim; ++i)
    for (std::size_t j = 0; j < back.size(); ++j) back[j] += y[i] * edges[i][j];
  return back == x;
}

}  // namespace toric_limits
