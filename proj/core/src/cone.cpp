#include "toric_limits/cone.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "toric_limits/linalg.hpp"

namespace toric_limits {

namespace {

bool is_zero_vec(const QVec& v) {
  for (const auto& q : v)
    if (q != 0) return false;
  return true;
}

// Double description state: cone = span(lineality) + nonneg combinations of rays.
struct DDState {
  std::vector<QVec> lineality;
  std::vector<QVec> rays;
};

void add_halfspace(DDState& st, const QVec& psi) {
  // Pivot away any lineality component not on the hyperplane.
  int pivot = -1;
  for (std::size_t i = 0; i < st.lineality.size(); ++i)
    if (dot(psi, st.lineality[i]) != 0) {
      pivot = static_cast<int>(i);
      break;
    }
  if (pivot >= 0) {
    QVec l = st.lineality[pivot];
    Rational pl = dot(psi, l);
    st.lineality.erase(st.lineality.begin() + pivot);
    for (auto& v : st.lineality) {
      Rational c = dot(psi, v) / pl;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * l[j];
    }
    for (auto& r : st.rays) {
      Rational c = dot(psi, r) / pl;
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= c * l[j];
      r = primitive_integer_direction(r);
    }
    if (pl < 0)
      for (auto& q : l) q = -q;
    st.rays.push_back(primitive_integer_direction(l));
    return;
  }

  std::vector<int> pos, zero, neg;
  std::vector<Rational> val(st.rays.size());
  for (std::size_t i = 0; i < st.rays.size(); ++i) {
    val[i] = dot(psi, st.rays[i]);
    int s = sgn(val[i]);
    if (s > 0)
      pos.push_back(static_cast<int>(i));
    else if (s < 0)
      neg.push_back(static_cast<int>(i));
    else
      zero.push_back(static_cast<int>(i));
  }
  if (neg.empty()) return;  // halfspace already contains the cone

  std::vector<QVec> next;
  for (int i : pos) next.push_back(st.rays[i]);
  for (int i : zero) next.push_back(st.rays[i]);
  for (int p : pos)
    for (int n : neg) {
      QVec combo(st.rays[p].size());
      for (std::size_t j = 0; j < combo.size(); ++j)
        combo[j] = val[p] * st.rays[n][j] - val[n] * st.rays[p][j];
      combo = primitive_integer_direction(combo);
      if (is_zero_vec(combo)) continue;
      next.push_back(std::move(combo));
    }
  // dedup identical (already primitive, so proportional rays coincide)
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  st.rays = std::move(next);
}

// Rewrites rays modulo the current lineality space (orthogonal complement
// representative, primitive) and removes duplicates.
void canonicalize_rays(DDState& st) {
  std::set<QVec> canon;
  for (const auto& r : st.rays) {
    QVec reduced = r;
    if (!st.lineality.empty()) {
      QVec proj = project_onto_span(st.lineality, r);
      for (std::size_t j = 0; j < reduced.size(); ++j) reduced[j] = r[j] - proj[j];
    }
    reduced = primitive_integer_direction(reduced);
    if (!is_zero_vec(reduced)) canon.insert(std::move(reduced));
  }
  st.rays.assign(canon.begin(), canon.end());
}

// Removes rays that are nonnegative combinations of the others, using the
// standard zero-set test on canonical rays: r is extreme iff no other ray's
// zero set (over the processed forms) contains r's zero set.
void prune_non_extreme(DDState& st, const std::vector<QVec>& processed_forms) {
  if (st.rays.empty()) return;
  std::vector<std::vector<char>> zsets(st.rays.size(),
                                       std::vector<char>(processed_forms.size(), 0));
  for (std::size_t i = 0; i < st.rays.size(); ++i)
    for (std::size_t f = 0; f < processed_forms.size(); ++f)
      zsets[i][f] = (dot(processed_forms[f], st.rays[i]) == 0);
  std::vector<QVec> kept;
  for (std::size_t i = 0; i < st.rays.size(); ++i) {
    bool extreme = true;
    for (std::size_t j = 0; j < st.rays.size() && extreme; ++j) {
      if (j == i) continue;
      bool superset = true;
      for (std::size_t f = 0; f < processed_forms.size(); ++f)
        if (zsets[i][f] && !zsets[j][f]) {
          superset = false;
          break;
        }
      if (superset) extreme = false;  // zero(i) ⊆ zero(j): i is not extreme
    }
    if (extreme) kept.push_back(st.rays[i]);
  }
  st.rays = std::move(kept);
}

std::vector<QVec> rref_basis(std::vector<QVec> vecs) {
  if (vecs.empty()) return {};
  QMat m(vecs.begin(), vecs.end());
  auto pivots = rref(m);
  std::vector<QVec> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(m[i]);
  return out;
}

}  // namespace

Cone make_cone(int ambient_dim, const std::vector<QVec>& inequality_forms,
               const std::vector<QVec>& equality_forms) {
  std::vector<QVec> system;
  for (const auto& f : inequality_forms) {
    if (static_cast<int>(f.size()) != ambient_dim)
      throw std::invalid_argument("form arity does not match ambient dimension");
    if (!is_zero_vec(f)) system.push_back(f);
  }
  for (const auto& f : equality_forms) {
    if (static_cast<int>(f.size()) != ambient_dim)
      throw std::invalid_argument("form arity does not match ambient dimension");
    if (is_zero_vec(f)) continue;
    system.push_back(f);
    QVec neg(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) neg[j] = -f[j];
    system.push_back(std::move(neg));
  }

  DDState st;
  for (int i = 0; i < ambient_dim; ++i) {
    QVec e(ambient_dim, Rational(0));
    e[i] = 1;
    st.lineality.push_back(std::move(e));
  }
  std::vector<QVec> processed;
  for (const auto& psi : system) {
    add_halfspace(st, psi);
    processed.push_back(psi);
    canonicalize_rays(st);
    prune_non_extreme(st, processed);
  }

  Cone c;
  c.ambient_dim = ambient_dim;
  c.lineality = rref_basis(st.lineality);
  c.rays = st.rays;

  std::vector<QVec> span = c.lineality;
  span.insert(span.end(), c.rays.begin(), c.rays.end());
  {
    QMat m(span.begin(), span.end());
    c.dim = m.empty() ? 0 : rank(std::move(m));
  }

  // classify the defining forms: implicit equalities vanish on the whole cone;
  // facet forms have a tight set of dimension dim-1 (two forms with the same
  // tight ray set cut the same facet — keep the first); the rest are redundant.
  std::vector<QVec> eq_candidates;
  std::set<std::vector<char>> seen_facets;
  for (const auto& psi : system) {
    std::vector<char> tight(c.rays.size(), 0);
    bool all_tight = true;
    for (std::size_t i = 0; i < c.rays.size(); ++i) {
      int s = sgn(dot(psi, c.rays[i]));
      tight[i] = (s == 0);
      if (s != 0) all_tight = false;
    }
    if (all_tight) {
      eq_candidates.push_back(psi);
      continue;
    }
    std::vector<QVec> tight_span = c.lineality;
    for (std::size_t i = 0; i < c.rays.size(); ++i)
      if (tight[i]) tight_span.push_back(c.rays[i]);
    QMat m(tight_span.begin(), tight_span.end());
    int face_dim = m.empty() ? 0 : rank(std::move(m));
    if (face_dim != c.dim - 1) continue;  // redundant (cuts a lower-dimensional face)
    if (seen_facets.insert(tight).second) c.forms.push_back(psi);
  }
  c.equalities = rref_basis(std::move(eq_candidates));
  return c;
}

bool Cone::contains(const QVec& x) const {
  return cone_membership(*this, x).kind != MembershipKind::outside;
}

Membership cone_membership(const Cone& c, const QVec& x, double tol) {
  if (static_cast<int>(x.size()) != c.ambient_dim)
    throw std::invalid_argument("point arity does not match ambient dimension");
  auto near_zero = [&](const Rational& v, const QVec& psi) {
    if (tol <= 0) return v == 0;
    double scale = 1.0;
    for (const auto& q : psi) scale = std::max(scale, std::abs(q.get_d()));
    for (const auto& q : x) scale = std::max(scale, std::abs(q.get_d()));
    return std::abs(v.get_d()) <= tol * scale;
  };
  Membership m;
  for (const auto& psi : c.equalities) {
    Rational v = dot(psi, x);
    if (!near_zero(v, psi)) return m;  // outside
  }
  std::vector<int> tight;
  for (std::size_t f = 0; f < c.forms.size(); ++f) {
    Rational v = dot(c.forms[f], x);
    if (near_zero(v, c.forms[f]))
      tight.push_back(static_cast<int>(f));
    else if (v < 0)
      return m;  // outside
  }
  m.kind = tight.empty() ? MembershipKind::interior : MembershipKind::boundary;
  m.tight_forms = std::move(tight);
  return m;
}

std::vector<ConeFace> cone_faces(const Cone& c) {
  const std::size_t nr = c.rays.size();
  if (nr > 20) throw std::invalid_argument("cone_faces: too many rays for subset enumeration");

  // zero sets of rays over facet forms
  std::vector<std::vector<char>> zsets(nr, std::vector<char>(c.forms.size(), 0));
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t f = 0; f < c.forms.size(); ++f)
      zsets[i][f] = (dot(c.forms[f], c.rays[i]) == 0);

  std::set<std::vector<int>> ray_sets;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << nr); ++mask) {
    // common tight forms of the subset
    std::vector<char> common(c.forms.size(), 1);
    for (std::size_t i = 0; i < nr; ++i)
      if (mask & (std::uint64_t(1) << i))
        for (std::size_t f = 0; f < c.forms.size(); ++f)
          if (!zsets[i][f]) common[f] = 0;
    // closure: all rays tight on every common form
    std::vector<int> closure;
    for (std::size_t i = 0; i < nr; ++i) {
      bool in = true;
      for (std::size_t f = 0; f < c.forms.size() && in; ++f)
        if (common[f] && !zsets[i][f]) in = false;
      if (in) closure.push_back(static_cast<int>(i));
    }
    // a proper face needs at least one tight form unless it is the cone itself
    bool any_common = false;
    for (std::size_t f = 0; f < c.forms.size(); ++f)
      if (common[f]) any_common = true;
    if (!any_common && closure.size() != nr) continue;  // not a face
    ray_sets.insert(std::move(closure));
  }
  ray_sets.insert(std::vector<int>{});  // minimal face (lineality)

  std::vector<ConeFace> out;
  for (const auto& rays : ray_sets) {
    ConeFace face;
    face.rays = rays;
    for (std::size_t f = 0; f < c.forms.size(); ++f) {
      bool tight_on_all = true;
      for (int i : rays)
        if (!zsets[i][f]) {
          tight_on_all = false;
          break;
        }
      if (tight_on_all) face.tight.push_back(static_cast<int>(f));
    }
    std::vector<QVec> span = c.lineality;
    for (int i : rays) span.push_back(c.rays[i]);
    QMat m(span.begin(), span.end());
    face.dim = m.empty() ? 0 : rank(std::move(m));
    out.push_back(std::move(face));
  }
  std::sort(out.begin(), out.end(), [](const ConeFace& a, const ConeFace& b) {
    return std::tie(a.dim, a.rays) < std::tie(b.dim, b.rays);
  });
  return out;
}

std::vector<QVec> face_span(const Cone& c, const ConeFace& f) {
  std::vector<QVec> span = c.lineality;
  for (int i : f.rays) span.push_back(c.rays[i]);
  return span;
}

QVec relative_interior_point(const Cone& c) {
  QVec p(c.ambient_dim, Rational(0));
  for (const auto& r : c.rays)
    for (int j = 0; j < c.ambient_dim; ++j) p[j] += r[j];
  return p;
}

}  // namespace toric_limits
