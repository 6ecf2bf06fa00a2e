#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "toric_limits/growth.hpp"
#include "toric_limits/rational.hpp"

namespace toric_limits {

// Division-free incremental convex hull over an ordered ring (exact rationals
// or growth polynomials — the latter yields the hull "for all sufficiently
// large i"). Only sign evaluations of ring expressions are used, so any
// totally ordered integral domain works.

template <typename R>
inline int ring_sign(const R& x) {
  return x.sign();
}
template <>
inline int ring_sign<Rational>(const Rational& x) {
  return sgn(x);
}

template <typename R>
struct HullFacets {
  // One entry per facet: all input points lying on the facet hyperplane,
  // sorted by index; facets sorted lexicographically.
  std::vector<std::vector<int>> members;
  // Outward halfspace per facet: <normal, x> <= offset on the hull.
  std::vector<std::vector<R>> normals;
  std::vector<R> offsets;
};

namespace hull_detail {

template <typename R>
R det(std::vector<std::vector<R>> m) {
  // Recursive cofactor expansion; sizes here are tiny (<= 6).
  const std::size_t n = m.size();
  if (n == 0) return R(1);
  if (n == 1) return m[0][0];
  R acc{};
  int s = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<R>> minor(n - 1, std::vector<R>(n - 1));
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        minor[i - 1][jj++] = m[i][j];
      }
    }
    R term = m[0][k] * det(minor);
    if (s > 0)
      acc = acc + term;
    else
      acc = acc - term;
    s = -s;
  }
  return acc;
}

// Normal of the hyperplane through the m rows of q in R^m via the generalized
// cross product of the m-1 edge vectors (cofactor expansion).
template <typename R>
std::vector<R> hyperplane_normal(const std::vector<std::vector<R>>& q) {
  const std::size_t m = q[0].size();
  std::vector<std::vector<R>> edges(m - 1, std::vector<R>(m));
  for (std::size_t i = 0; i + 1 < m; ++i)
    for (std::size_t j = 0; j < m; ++j) edges[i][j] = q[i + 1][j] - q[0][j];
  std::vector<R> nu(m);
  int s = 1;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<std::vector<R>> minor(m - 1, std::vector<R>(m - 1));
    for (std::size_t i = 0; i + 1 < m; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == k) continue;
        minor[i][jj++] = edges[i][j];
      }
    }
    R cof = det(minor);
    if (s > 0)
      nu[k] = cof;
    else
      nu[k] = R{} - cof;
    s = -s;
  }
  return nu;
}

template <typename R>
R dot(const std::vector<R>& a, const std::vector<R>& b) {
  R s{};
  for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
  return s;
}

// rank of the edge matrix of the chosen points, via minor enumeration — only
// used while building the initial simplex, on at most m+1 rows.
template <typename R>
bool affinely_independent(const std::vector<std::vector<R>>& pts,
                          const std::vector<int>& chosen, int candidate) {
  const std::size_t m = pts[0].size();
  std::vector<std::vector<R>> edges;
  for (std::size_t i = 1; i < chosen.size(); ++i) {
    std::vector<R> e(m);
    for (std::size_t j = 0; j < m; ++j) e[j] = pts[chosen[i]][j] - pts[chosen[0]][j];
    edges.push_back(std::move(e));
  }
  {
    std::vector<R> e(m);
    for (std::size_t j = 0; j < m; ++j) e[j] = pts[candidate][j] - pts[chosen[0]][j];
    edges.push_back(std::move(e));
  }
  const std::size_t k = edges.size();
  if (k > m) return false;
  // some k x k minor must be nonzero; enumerate column subsets
  std::vector<int> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<int>(i);
  while (true) {
    std::vector<std::vector<R>> minor(k, std::vector<R>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = edges[i][idx[j]];
    if (ring_sign(det(minor)) != 0) return true;
    // next combination
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && idx[i] == static_cast<int>(m - k + i)) --i;
    if (i < 0) return false;
    ++idx[i];
    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace hull_detail

// Facets of conv(pts) for points affinely spanning R^m. Facet member lists
// contain every input point on the facet hyperplane (exact incidence); facets
// with identical hyperplanes are merged by construction.
template <typename R>
HullFacets<R> convex_hull_facets(const std::vector<std::vector<R>>& pts) {
  using hull_detail::dot;
  const int n = static_cast<int>(pts.size());
  if (n == 0) throw std::invalid_argument("hull of empty set");
  const std::size_t m = pts[0].size();

  // ---- initial simplex ----
  std::vector<int> simplex = {0};
  for (int i = 1; i < n && simplex.size() < m + 1; ++i)
    if (hull_detail::affinely_independent(pts, simplex, i)) simplex.push_back(i);
  if (simplex.size() != m + 1)
    throw std::invalid_argument("hull: points do not affinely span the ambient space");

  struct Facet {
    std::vector<int> verts;  // m indices, sorted
    std::vector<R> normal;
    R offset;
    bool alive = true;
  };
  std::vector<Facet> facets;

  auto make_facet = [&](std::vector<int> verts, int inside_ref) {
    std::sort(verts.begin(), verts.end());
    std::vector<std::vector<R>> q;
    for (int v : verts) q.push_back(pts[v]);
    Facet f;
    f.normal = hull_detail::hyperplane_normal(q);
    f.offset = dot(f.normal, pts[verts[0]]);
    R gap = dot(f.normal, pts[inside_ref]) - f.offset;
    int s = ring_sign(gap);
    if (s == 0) throw std::logic_error("hull: degenerate orientation reference");
    if (s > 0) {
      for (auto& c : f.normal) c = R{} - c;
      f.offset = R{} - f.offset;
    }
    f.verts = std::move(verts);
    return f;
  };

  for (std::size_t skip = 0; skip < simplex.size(); ++skip) {
    std::vector<int> verts;
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != skip) verts.push_back(simplex[i]);
    facets.push_back(make_facet(std::move(verts), simplex[skip]));
  }

  // ---- incremental insertion ----
  for (int p = 0; p < n; ++p) {
    if (std::find(simplex.begin(), simplex.end(), p) != simplex.end()) continue;
    std::vector<int> visible;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (!facets[f].alive) continue;
      R gap = dot(facets[f].normal, pts[p]) - facets[f].offset;
      if (ring_sign(gap) > 0) visible.push_back(static_cast<int>(f));
    }
    if (visible.empty()) continue;  // inside or on the boundary

    // horizon ridges: (m-1)-subsets shared by exactly one visible facet
    std::map<std::vector<int>, std::vector<int>> ridge_owners;
    for (int f : visible) {
      const auto& verts = facets[f].verts;
      for (std::size_t skip = 0; skip < verts.size(); ++skip) {
        std::vector<int> ridge;
        for (std::size_t i = 0; i < verts.size(); ++i)
          if (i != skip) ridge.push_back(verts[i]);
        ridge_owners[ridge].push_back(f);
      }
    }
    // count how often each ridge occurs among *all* alive facets
    std::map<std::vector<int>, int> ridge_total;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (!facets[f].alive) continue;
      const auto& verts = facets[f].verts;
      for (std::size_t skip = 0; skip < verts.size(); ++skip) {
        std::vector<int> ridge;
        for (std::size_t i = 0; i < verts.size(); ++i)
          if (i != skip) ridge.push_back(verts[i]);
        ridge_total[ridge]++;
      }
    }

    std::vector<Facet> fresh;
    for (const auto& [ridge, owners] : ridge_owners) {
      if (owners.size() != 1) continue;          // interior ridge of the visible set
      if (ridge_total[ridge] != 2) continue;     // hull boundary ridge must have 2 facets
      int f = owners[0];
      // inside reference: a vertex of the visible facet not on the ridge
      int ref = -1;
      for (int v : facets[f].verts)
        if (std::find(ridge.begin(), ridge.end(), v) == ridge.end()) { ref = v; break; }
      std::vector<int> verts = ridge;
      verts.push_back(p);
      fresh.push_back(make_facet(std::move(verts), ref));
    }
    for (int f : visible) facets[f].alive = false;
    for (auto& f : fresh) facets.push_back(std::move(f));
  }

  // ---- collect exact members and merge coplanar facets ----
  HullFacets<R> out;
  std::vector<std::vector<int>> seen;
  for (const auto& f : facets) {
    if (!f.alive) continue;
    std::vector<int> mem;
    for (int i = 0; i < n; ++i) {
      R gap = dot(f.normal, pts[i]) - f.offset;
      if (ring_sign(gap) == 0) mem.push_back(i);
    }
    if (std::find(seen.begin(), seen.end(), mem) != seen.end()) continue;
    seen.push_back(mem);
    out.members.push_back(std::move(mem));
    out.normals.push_back(f.normal);
    out.offsets.push_back(f.offset);
  }
  // deterministic order
  std::vector<std::size_t> order(out.members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.members[a] < out.members[b]; });
  HullFacets<R> sorted;
  for (std::size_t i : order) {
    sorted.members.push_back(std::move(out.members[i]));
    sorted.normals.push_back(std::move(out.normals[i]));
    sorted.offsets.push_back(std::move(out.offsets[i]));
  }
  return sorted;
}

}  // namespace toric_limits
