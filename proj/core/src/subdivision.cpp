#include "toric_limits/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "toric_limits/hull.hpp"
#include "toric_limits/linalg.hpp"

namespace toric_limits {

namespace {

void require_spanning(const PointConfiguration& A) {
  if (A.affine_rank != A.dim + 1)
    throw std::invalid_argument("configuration must affinely span R^dim");
}

// Affine function through all lifted points of an affine lift: lift(a) = <nu,a> + c.
std::pair<QVec, Rational> interpolating_plane(const PointConfiguration& A, const QVec& lift) {
  QMat sys;
  for (const auto& p : A.points) {
    QVec row = p;
    row.push_back(1);
    sys.push_back(std::move(row));
  }
  auto sol = solve(sys, lift);
  if (!sol) throw std::logic_error("interpolating_plane: lift is not affine");
  Rational c = sol->back();
  sol->pop_back();
  return {std::move(*sol), std::move(c)};
}

struct Cell {
  std::vector<int> members;
  QVec normal;
  Rational offset;
};

void sort_cells(std::vector<Cell>& cells) {
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.members < b.members; });
}

InducedSubdivision assemble(const PointConfiguration& A, std::vector<Cell> cells) {
  sort_cells(cells);
  InducedSubdivision out;
  std::vector<char> participating(A.size(), 0);
  for (auto& c : cells) {
    for (int i : c.members) participating[i] = 1;
    out.combinatorics.facets.push_back(std::move(c.members));
    out.plane_normals.push_back(std::move(c.normal));
    out.plane_offsets.push_back(std::move(c.offset));
  }
  for (int i = 0; i < A.size(); ++i)
    if (!participating[i]) out.combinatorics.nonparticipating.push_back(i);
  return out;
}

}  // namespace

InducedSubdivision induced_subdivision(const PointConfiguration& A, const QVec& lift) {
  require_spanning(A);
  if (static_cast<int>(lift.size()) != A.size())
    throw std::invalid_argument("lift has wrong arity for configuration");

  if (is_affine_on(A, lift)) {
    auto [nu, c] = interpolating_plane(A, lift);
    std::vector<int> all(A.size());
    for (int i = 0; i < A.size(); ++i) all[i] = i;
    return assemble(A, {Cell{std::move(all), std::move(nu), std::move(c)}});
  }

  std::vector<QVec> lifted;
  for (int i = 0; i < A.size(); ++i) {
    QVec p = A.points[i];
    p.push_back(lift[i]);
    lifted.push_back(std::move(p));
  }
  auto hull = convex_hull_facets(lifted);

  std::vector<Cell> cells;
  for (std::size_t f = 0; f < hull.members.size(); ++f) {
    const Rational& nu_h = hull.normals[f][A.dim];
    if (sgn(nu_h) <= 0) continue;  // not an upper facet
    QVec nu(A.dim);
    for (int j = 0; j < A.dim; ++j) nu[j] = -hull.normals[f][j] / nu_h;
    Rational c = hull.offsets[f] / nu_h;
    cells.push_back(Cell{hull.members[f], std::move(nu), std::move(c)});
  }

  if (A.mode == ScalarMode::floating) {
    // Collect near-incident points as members, then drop cells whose member
    // set is contained in another's.
    for (auto& cell : cells) {
      std::vector<int> grown;
      for (int i = 0; i < A.size(); ++i) {
        Rational ext = dot(cell.normal, A.points[i]) + cell.offset;
        double gap = ext.get_d() - lift[i].get_d();
        double scale = std::max({1.0, std::abs(ext.get_d()), std::abs(lift[i].get_d())});
        if (std::abs(gap) <= kEpsHull * scale) grown.push_back(i);
      }
      cell.members = std::move(grown);
    }
    std::vector<std::size_t> order(cells.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (cells[a].members.size() != cells[b].members.size())
        return cells[a].members.size() > cells[b].members.size();
      return cells[a].members < cells[b].members;
    });
    std::vector<Cell> kept;
    for (std::size_t i : order) {
      bool absorbed = false;
      for (const auto& k : kept)
        if (std::includes(k.members.begin(), k.members.end(), cells[i].members.begin(),
                          cells[i].members.end())) {
          absorbed = true;
          break;
        }
      if (!absorbed) kept.push_back(std::move(cells[i]));
    }
    cells = std::move(kept);
  }

  return assemble(A, std::move(cells));
}

Subdivision eventual_subdivision(const PointConfiguration& A,
                                 const std::vector<GrowthPoly>& lifts) {
  require_spanning(A);
  if (static_cast<int>(lifts.size()) != A.size())
    throw std::invalid_argument("lift sequence has wrong arity for configuration");

  std::vector<GrowthPoly> reduced = reduce_mod_aff(A, lifts);
  bool all_zero = true;
  for (const auto& g : reduced)
    if (!g.is_zero()) {
      all_zero = false;
      break;
    }

  Subdivision out;
  if (all_zero) {
    std::vector<int> all(A.size());
    for (int i = 0; i < A.size(); ++i) all[i] = i;
    out.facets.push_back(std::move(all));
    return out;
  }

  std::vector<std::vector<GrowthPoly>> lifted;
  for (int i = 0; i < A.size(); ++i) {
    std::vector<GrowthPoly> p;
    for (int j = 0; j < A.dim; ++j) p.push_back(GrowthPoly(A.points[i][j]));
    p.push_back(reduced[i]);
    lifted.push_back(std::move(p));
  }
  auto hull = convex_hull_facets(lifted);

  std::vector<char> participating(A.size(), 0);
  for (std::size_t f = 0; f < hull.members.size(); ++f) {
    if (hull.normals[f][A.dim].sign() <= 0) continue;
    for (int i : hull.members[f]) participating[i] = 1;
    out.facets.push_back(hull.members[f]);
  }
  std::sort(out.facets.begin(), out.facets.end());
  for (int i = 0; i < A.size(); ++i)
    if (!participating[i]) out.nonparticipating.push_back(i);
  return out;
}

Rational upper_envelope(const PointConfiguration& A, const InducedSubdivision& S,
                        const QVec& x) {
  require_spanning(A);
  if (static_cast<int>(x.size()) != A.dim)
    throw std::invalid_argument("query point has wrong arity");
  auto hull = convex_hull_facets(A.points);
  for (std::size_t f = 0; f < hull.members.size(); ++f) {
    Rational v = dot(hull.normals[f], x);
    if (v > hull.offsets[f])
      throw std::invalid_argument("query point lies outside the configuration hull");
  }
  Rational best;
  bool have = false;
  for (std::size_t k = 0; k < S.plane_normals.size(); ++k) {
    Rational v = dot(S.plane_normals[k], x) + S.plane_offsets[k];
    if (!have || v < best) {
      best = std::move(v);
      have = true;
    }
  }
  if (!have) throw std::logic_error("upper_envelope: subdivision has no cells");
  return best;
}

Rational upper_envelope(const PointConfiguration& A, const QVec& lift, const QVec& x) {
  return upper_envelope(A, induced_subdivision(A, lift), x);
}

NonfaceSet minimal_nonfaces(const PointConfiguration& A, const Subdivision& S) {
  NonfaceSet out;
  std::vector<char> participating(A.size(), 0);
  for (const auto& f : S.facets)
    for (int i : f) participating[i] = 1;
  for (int i = 0; i < A.size(); ++i)
    for (int j = i + 1; j < A.size(); ++j) {
      if (!participating[i] || !participating[j]) continue;
      bool together = false;
      for (const auto& f : S.facets)
        if (std::binary_search(f.begin(), f.end(), i) &&
            std::binary_search(f.begin(), f.end(), j)) {
          together = true;
          break;
        }
      if (!together) out.pairs.push_back({i, j});
    }
  out.singletons = S.nonparticipating;
  return out;
}

bool refines(const Subdivision& coarser, const Subdivision& finer) {
  for (const auto& ff : finer.facets) {
    bool contained = false;
    for (const auto& cf : coarser.facets)
      if (std::includes(cf.begin(), cf.end(), ff.begin(), ff.end())) {
        contained = true;
        break;
      }
    if (!contained) return false;
  }
  return true;
}

// ---- triangulation and volume ----

std::vector<std::vector<int>> triangulate_points(const std::vector<QVec>& pts) {
  if (pts.empty()) throw std::invalid_argument("triangulate_points: empty set");
  AffineChart chart = AffineChart::build(pts);
  const int s = chart.sdim;
  if (s == 0) return {{0}};
  if (static_cast<int>(pts.size()) == s + 1) {
    std::vector<int> all(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) all[i] = static_cast<int>(i);
    return {all};
  }

  std::vector<QVec> y;
  for (const auto& p : pts) y.push_back(chart.coords(p));
  auto hull = convex_hull_facets(y);

  int v0 = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] < pts[v0]) v0 = static_cast<int>(i);

  std::vector<std::vector<int>> simplices;
  for (const auto& facet : hull.members) {
    if (std::binary_search(facet.begin(), facet.end(), v0)) continue;
    std::vector<QVec> sub;
    for (int i : facet) sub.push_back(pts[i]);
    for (const auto& local : triangulate_points(sub)) {
      std::vector<int> simplex{v0};
      for (int li : local) simplex.push_back(facet[li]);
      std::sort(simplex.begin(), simplex.end());
      simplices.push_back(std::move(simplex));
    }
  }
  std::sort(simplices.begin(), simplices.end());
  return simplices;
}

Rational polytope_volume(const std::vector<QVec>& pts) {
  if (pts.empty()) return 0;
  const std::size_t dim = pts[0].size();
  AffineChart chart = AffineChart::build(pts);
  if (chart.sdim < static_cast<int>(dim)) return 0;
  Rational total = 0;
  Rational fact = 1;
  for (std::size_t k = 2; k <= dim; ++k) fact *= static_cast<int>(k);
  for (const auto& simplex : triangulate_points(pts)) {
    QMat edges;
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      QVec e(dim);
      for (std::size_t j = 0; j < dim; ++j)
        e[j] = pts[simplex[i]][j] - pts[simplex[0]][j];
      edges.push_back(std::move(e));
    }
    Rational d = hull_detail::det(edges);
    total += abs(d);
  }
  return total / fact;
}

// ---- certificates ----

namespace {

// H-representation of conv(points of G); assumes G spans R^dim.
struct FacetHull {
  std::vector<QVec> normals;
  QVec offsets;
};

FacetHull facet_hull(const PointConfiguration& A, const std::vector<int>& G) {
  std::vector<QVec> pts;
  for (int i : G) pts.push_back(A.points[i]);
  auto hull = convex_hull_facets(pts);
  return FacetHull{std::move(hull.normals), std::move(hull.offsets)};
}

bool hull_contains(const FacetHull& h, const QVec& x) {
  for (std::size_t f = 0; f < h.normals.size(); ++f)
    if (dot(h.normals[f], x) > h.offsets[f]) return false;
  return true;
}

// Convex weights of x over the points of G via a deterministic triangulation.
std::vector<Rational> convex_weights(const PointConfiguration& A, const std::vector<int>& G,
                                     const QVec& x) {
  std::vector<QVec> pts;
  for (int i : G) pts.push_back(A.points[i]);
  for (const auto& simplex : triangulate_points(pts)) {
    QMat corners;
    for (int li : simplex) corners.push_back(pts[li]);
    auto w = affine_combination_weights(corners, x);
    if (!w) continue;
    bool ok = true;
    for (const auto& wi : *w)
      if (wi < 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::vector<Rational> alpha(G.size(), Rational(0));
    for (std::size_t k = 0; k < simplex.size(); ++k) alpha[simplex[k]] = (*w)[k];
    return alpha;
  }
  throw std::logic_error("convex_weights: point not in the facet hull");
}

int facet_index(const InducedSubdivision& S, const std::vector<int>& G) {
  for (std::size_t k = 0; k < S.combinatorics.facets.size(); ++k)
    if (S.combinatorics.facets[k] == G) return static_cast<int>(k);
  return -1;
}

Rational plane_value(const InducedSubdivision& S, int k, const QVec& x) {
  return dot(S.plane_normals[k], x) + S.plane_offsets[k];
}

}  // namespace

Certificate convex_certificate(const PointConfiguration& A, const QVec& lift,
                               const InducedSubdivision& S,
                               const std::array<int, 2>& pair) {
  auto nonfaces = minimal_nonfaces(A, S.combinatorics);
  std::array<int, 2> key = pair;
  std::sort(key.begin(), key.end());
  if (std::find(nonfaces.pairs.begin(), nonfaces.pairs.end(), key) == nonfaces.pairs.end())
    throw std::invalid_argument("pair is not a minimal non-face of the subdivision");

  const QVec& a = A.points[key[0]];
  const QVec& b = A.points[key[1]];
  QVec dir(A.dim);
  for (int j = 0; j < A.dim; ++j) dir[j] = b[j] - a[j];

  // Earliest positive-length overlap of [a,b] with a cell hull.
  int best = -1;
  Rational best_t0, best_t1;
  for (std::size_t k = 0; k < S.combinatorics.facets.size(); ++k) {
    FacetHull h = facet_hull(A, S.combinatorics.facets[k]);
    Rational t0 = 0, t1 = 1;
    bool empty = false;
    for (std::size_t f = 0; f < h.normals.size() && !empty; ++f) {
      Rational u = dot(h.normals[f], a);
      Rational v = dot(h.normals[f], dir);
      Rational c = h.offsets[f];
      int sv = sgn(v);
      if (sv == 0) {
        if (u > c) empty = true;
      } else if (sv > 0) {
        Rational bound = (c - u) / v;
        if (bound < t1) t1 = bound;
      } else {
        Rational bound = (c - u) / v;
        if (bound > t0) t0 = bound;
      }
    }
    if (empty || !(t0 < t1)) continue;
    if (best < 0 || t0 < best_t0 ||
        (t0 == best_t0 &&
         S.combinatorics.facets[k] < S.combinatorics.facets[best])) {
      best = static_cast<int>(k);
      best_t0 = t0;
      best_t1 = t1;
    }
  }
  if (best < 0)
    throw std::logic_error("convex_certificate: segment meets no cell in positive length");

  Rational t = (best_t0 + best_t1) / 2;
  QVec p(A.dim);
  for (int j = 0; j < A.dim; ++j) p[j] = a[j] + t * dir[j];

  Certificate cert;
  cert.kind = CertificateKind::pair;
  cert.facet = S.combinatorics.facets[best];
  cert.alpha = convex_weights(A, cert.facet, p);
  cert.beta_a = 1 - t;
  cert.beta_b = t;
  cert.p = p;
  cert.margin = plane_value(S, best, p) - (cert.beta_a * lift[key[0]] + cert.beta_b * lift[key[1]]);
  return cert;
}

Certificate convex_certificate(const PointConfiguration& A, const QVec& lift,
                               const InducedSubdivision& S, int singleton) {
  if (!std::binary_search(S.combinatorics.nonparticipating.begin(),
                          S.combinatorics.nonparticipating.end(), singleton))
    throw std::invalid_argument("point is not a nonparticipating singleton");
  const QVec& c = A.points[singleton];
  for (std::size_t k = 0; k < S.combinatorics.facets.size(); ++k) {
    FacetHull h = facet_hull(A, S.combinatorics.facets[k]);
    if (!hull_contains(h, c)) continue;
    Certificate cert;
    cert.kind = CertificateKind::singleton;
    cert.facet = S.combinatorics.facets[k];
    cert.alpha = convex_weights(A, cert.facet, c);
    cert.beta_a = 0;
    cert.beta_b = 0;
    cert.p = c;
    cert.margin = plane_value(S, static_cast<int>(k), c) - lift[singleton];
    return cert;
  }
  throw std::logic_error("convex_certificate: singleton lies in no cell hull");
}

Certificate affine_certificate(const PointConfiguration& A, const QVec& lift,
                               const InducedSubdivision& S, const std::vector<int>& facetG,
                               int d) {
  int k = facet_index(S, facetG);
  if (k < 0) throw std::invalid_argument("facetG is not a facet of the subdivision");
  if (std::binary_search(facetG.begin(), facetG.end(), d))
    throw std::invalid_argument("point already belongs to the facet");

  std::vector<int> basis = lex_first_affine_basis(A, facetG);
  QMat corners;
  for (int i : basis) corners.push_back(A.points[i]);
  auto w = affine_combination_weights(corners, A.points[d]);
  if (!w) throw std::invalid_argument("facet does not affinely span R^dim");

  Certificate cert;
  cert.kind = CertificateKind::external;
  cert.facet = facetG;
  cert.alpha.assign(facetG.size(), Rational(0));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto pos = std::find(facetG.begin(), facetG.end(), basis[i]) - facetG.begin();
    cert.alpha[pos] = (*w)[i];
  }
  cert.beta_a = 0;
  cert.beta_b = 0;
  cert.p = A.points[d];
  cert.margin = plane_value(S, k, A.points[d]) - lift[d];
  if (!(cert.margin > 0))
    throw std::logic_error("affine_certificate: margin is not strictly positive");
  return cert;
}

}  // namespace toric_limits
