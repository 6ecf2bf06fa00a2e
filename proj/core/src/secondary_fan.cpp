#include "toric_limits/secondary_fan.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "toric_limits/linalg.hpp"

namespace toric_limits {

Cone secondary_cone(const PointConfiguration& A, const Subdivision& S) {
  const int n = A.size();
  if (S.facets.empty()) throw std::invalid_argument("subdivision has no facets");

  std::vector<QVec> ineqs, eqs;
  for (const auto& F : S.facets) {
    std::vector<int> basis = lex_first_affine_basis(A, F);
    if (static_cast<int>(basis.size()) != A.dim + 1)
      throw std::invalid_argument("subdivision facet does not affinely span R^dim");
    QMat corners;
    for (int b : basis) corners.push_back(A.points[b]);
    for (int a = 0; a < n; ++a) {
      if (std::find(basis.begin(), basis.end(), a) != basis.end()) continue;
      auto w = affine_combination_weights(corners, A.points[a]);
      if (!w) throw std::logic_error("secondary_cone: affine weights must exist");
      QVec psi(n, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) psi[basis[k]] += (*w)[k];
      psi[a] -= 1;
      bool in_facet = std::binary_search(F.begin(), F.end(), a);
      (in_facet ? eqs : ineqs).push_back(std::move(psi));
    }
  }
  Cone cone = make_cone(n, ineqs, eqs);

  // Certify: a relative-interior lift must induce exactly S.
  QVec probe = relative_interior_point(cone);
  if (induced_subdivision(A, probe).combinatorics != S)
    throw std::invalid_argument(
        "subdivision is not regular over the configuration (secondary cone "
        "relative interior induces a different subdivision)");
  return cone;
}

namespace {

// splitmix64: deterministic, platform-independent sample streams.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // exact rational uniform on [-1, 1) with 2^-52 resolution
  Rational uniform_rational() {
    std::uint64_t bits = next() >> 11;  // 53 bits
    Rational r(static_cast<long>(bits >> 1), 1);  // [0, 2^52)
    Rational denom;
    mpz_class two52 = 1;
    two52 <<= 52;
    denom = Rational(two52);
    Rational u = r / denom;  // [0, 1)
    return 2 * u - 1;
  }
};

Subdivision trivial_subdivision(const PointConfiguration& A) {
  Subdivision t;
  std::vector<int> all(A.size());
  for (int i = 0; i < A.size(); ++i) all[i] = i;
  t.facets.push_back(std::move(all));
  return t;
}

}  // namespace

SecondaryFanSample sample_secondary_fan(const PointConfiguration& A, int n_samples,
                                        std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  const int n = A.size();

  SecondaryFanSample out;
  out.ambient_dim = n;
  out.n_samples = n_samples;
  out.seed = seed;

  std::map<Subdivision, int> hits_by_subdivision;
  std::vector<Subdivision> order;  // first-seen order (only for stable iteration)
  auto record = [&](const Subdivision& S, int hit) {
    auto it = hits_by_subdivision.find(S);
    if (it == hits_by_subdivision.end()) {
      hits_by_subdivision.emplace(S, hit);
      order.push_back(S);
    } else {
      it->second += hit;
    }
  };

  for (int k = 0; k < n_samples; ++k) {
    SplitMix64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(k + 1));
    QVec lift(n);
    for (int i = 0; i < n; ++i) lift[i] = rng.uniform_rational();
    QVec reduced = reduce_mod_aff(A, lift);
    record(induced_subdivision(A, reduced).combinatorics, 1);
  }
  record(trivial_subdivision(A), 0);

  // cones of the sampled cells
  std::map<Subdivision, Cone> cones;
  for (const auto& S : order) cones.emplace(S, secondary_cone(A, S));

  // walls: pairwise intersections of distinct sampled full-dimensional cones
  int lineality_dim = 0;
  {
    const Cone& any = cones.begin()->second;
    lineality_dim = static_cast<int>(any.lineality.size());
  }
  std::vector<Subdivision> chambers;
  for (const auto& S : order)
    if (cones.at(S).dim == n) chambers.push_back(S);
  for (std::size_t i = 0; i < chambers.size(); ++i)
    for (std::size_t j = i + 1; j < chambers.size(); ++j) {
      const Cone& a = cones.at(chambers[i]);
      const Cone& b = cones.at(chambers[j]);
      std::vector<QVec> forms = a.forms;
      forms.insert(forms.end(), b.forms.begin(), b.forms.end());
      std::vector<QVec> eqs = a.equalities;
      eqs.insert(eqs.end(), b.equalities.begin(), b.equalities.end());
      Cone meet = make_cone(n, forms, eqs);
      if (meet.dim <= lineality_dim) continue;  // only the trivial cell
      QVec probe = relative_interior_point(meet);
      Subdivision S = induced_subdivision(A, probe).combinatorics;
      if (!hits_by_subdivision.count(S)) {
        record(S, 0);
        cones.emplace(S, secondary_cone(A, S));
      }
    }

  // assemble cells, sorted by (cone dim, facets)
  std::vector<Subdivision> all(order);
  std::sort(all.begin(), all.end(), [&](const Subdivision& x, const Subdivision& y) {
    int dx = cones.at(x).dim, dy = cones.at(y).dim;
    if (dx != dy) return dx < dy;
    return x.facets < y.facets;
  });
  for (const auto& S : all) {
    FanCell cell;
    cell.subdivision = S;
    cell.cone = cones.at(S);
    cell.hits = hits_by_subdivision.at(S);
    cell.full_dimensional = (cell.cone.dim == n);
    out.cells.push_back(std::move(cell));
  }

  // covering edges of the refinement order (coarser -> finer)
  const std::size_t m = out.cells.size();
  std::vector<std::vector<char>> lt(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const Subdivision& si = out.cells[i].subdivision;
      const Subdivision& sj = out.cells[j].subdivision;
      if (si != sj && refines(si, sj)) lt[i][j] = 1;  // i coarser than j
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (!lt[i][j]) continue;
      bool covering = true;
      for (std::size_t k = 0; k < m && covering; ++k)
        if (lt[i][k] && lt[k][j]) covering = false;
      if (covering) out.poset_edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return out;
}

}  // namespace toric_limits
