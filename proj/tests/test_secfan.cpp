#include <algorithm>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "toric_limits/secondary_fan.hpp"

using namespace toric_limits;

namespace {

const std::vector<std::vector<int>> kRho4Facets = {{0, 1, 2, 4}, {2, 3, 4}};
const std::vector<std::vector<int>> kTau3Facets = {{0, 1, 2}, {0, 2, 4}, {2, 3, 4}};

// Restriction of a form on R^A to the two-parameter gauge plane
// lambda(s,t) = (s, t, 0, 0, 0): the pair (psi(e0), psi(e1)).
QVec gauge_restrict(const QVec& psi) { return primitive_integer_direction({psi[0], psi[1]}); }

}  // namespace

TEST_CASE("secondary cone of the trivial subdivision is the affine space") {
  auto A = pentagon();
  Cone c = secondary_cone(A, Subdivision{{{0, 1, 2, 3, 4}}, {}});
  CHECK(c.ambient_dim == 5);
  CHECK(c.dim == 3);
  CHECK(c.lineality.size() == 3);
  CHECK(c.forms.empty());
  CHECK(c.rays.empty());
  // it contains exactly the affine functions
  QVec aff;
  for (int i = 0; i < 5; ++i) aff.push_back(Rational(2) - A.points[i][0] + 3 * A.points[i][1]);
  CHECK(c.contains(aff));
  CHECK_FALSE(c.contains(qvec({"-1", "-1", "0", "0", "0"})));
}

TEST_CASE("three-triangle chamber: gauge inequalities s<0 and t<s") {
  auto A = pentagon();
  Cone c = secondary_cone(A, Subdivision{kTau3Facets, {}});
  CHECK(c.dim == 5);
  CHECK(c.lineality.size() == 3);
  REQUIRE(c.forms.size() == 2);

  std::vector<QVec> got = {gauge_restrict(c.forms[0]), gauge_restrict(c.forms[1])};
  std::sort(got.begin(), got.end());
  std::vector<QVec> want = {qvec({"-1", "0"}), qvec({"1", "-1"})};  // -s >= 0, s-t >= 0
  std::sort(want.begin(), want.end());
  CHECK(got == want);

  // rays of the chamber, reduced to gauge coordinates: (0,-1) and (-1,-1)
  LabelGauge lg{{"1,1", "1/2,3/2", "0,1"}};
  REQUIRE(c.rays.size() == 2);
  std::vector<QVec> rays;
  for (const auto& r : c.rays) {
    QVec red = primitive_integer_direction(reduce_mod_aff(A, r, Gauge{lg}));
    rays.push_back({red[0], red[1]});
  }
  std::sort(rays.begin(), rays.end());
  CHECK(rays == std::vector<QVec>{qvec({"-1", "-1"}), qvec({"0", "-1"})});
}

TEST_CASE("square-plus-triangle wall is a single ray at (-1,-1)") {
  auto A = pentagon();
  Cone c = secondary_cone(A, Subdivision{kRho4Facets, {}});
  CHECK(c.dim == 4);  // lineality (3) plus one ray
  REQUIRE(c.rays.size() == 1);
  LabelGauge lg{{"1,1", "1/2,3/2", "0,1"}};
  QVec red = primitive_integer_direction(reduce_mod_aff(A, c.rays[0], Gauge{lg}));
  CHECK(red == qvec({"-1", "-1", "0", "0", "0"}));
}

TEST_CASE("secondary cone rejects invented subdivisions") {
  auto A = pentagon();
  // overlapping cells that no lift induces
  CHECK_THROWS(secondary_cone(A, Subdivision{{{0, 1, 3}, {0, 2, 4}, {2, 3, 4}}, {}}));
}

TEST_CASE("cone membership classification") {
  auto A = pentagon();
  Cone tau = secondary_cone(A, Subdivision{kTau3Facets, {}});

  // affine functions sit on the minimal face: boundary with every form tight
  QVec aff;
  for (int i = 0; i < 5; ++i) aff.push_back(Rational(1) + A.points[i][0]);
  auto m_aff = cone_membership(tau, aff);
  CHECK(m_aff.kind == MembershipKind::boundary);
  CHECK(m_aff.tight_forms.size() == tau.forms.size());

  auto m_in = cone_membership(tau, qvec({"-2", "-3", "0", "0", "0"}));
  CHECK(m_in.kind == MembershipKind::interior);

  // the wall between the chambers: exactly one tight form
  auto m_wall = cone_membership(tau, qvec({"-1", "-1", "0", "0", "0"}));
  CHECK(m_wall.kind == MembershipKind::boundary);
  CHECK(m_wall.tight_forms.size() == 1);

  auto m_out = cone_membership(tau, qvec({"1", "0", "0", "0", "0"}));
  CHECK(m_out.kind == MembershipKind::outside);

  // against the wall cone itself: its relative interior point is interior
  Cone rho = secondary_cone(A, Subdivision{kRho4Facets, {}});
  CHECK(cone_membership(rho, qvec({"-1", "-1", "0", "0", "0"})).kind ==
        MembershipKind::interior);
  CHECK(cone_membership(rho, qvec({"-2", "-3", "0", "0", "0"})).kind ==
        MembershipKind::outside);
}

TEST_CASE("cone faces and relative interior points") {
  auto A = pentagon();
  Cone tau = secondary_cone(A, Subdivision{kTau3Facets, {}});
  auto faces = cone_faces(tau);
  // minimal face, two walls, the cone itself
  REQUIRE(faces.size() == 4);
  CHECK(faces[0].dim == 3);
  CHECK(faces[0].rays.empty());
  CHECK(faces[1].dim == 4);
  CHECK(faces[2].dim == 4);
  CHECK(faces[3].dim == 5);
  CHECK(faces[3].rays.size() == 2);

  QVec rip = relative_interior_point(tau);
  CHECK(cone_membership(tau, rip).kind == MembershipKind::interior);

  // span of a wall face: lineality + one ray = 4 vectors
  CHECK(face_span(tau, faces[1]).size() == 4);
  CHECK(face_span(tau, faces[0]).size() == 3);
}

TEST_CASE("secondary cone contains its inducing lift") {
  std::mt19937_64 rng(5);
  for (auto A : {pentagon(), grid3x3()}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto lift = random_rational_lift(rng, A.size());
      auto S = induced_subdivision(A, lift).combinatorics;
      Cone c = secondary_cone(A, S);
      CHECK(c.contains(lift));
      // generic lifts land in the relative interior
      auto m = cone_membership(c, lift);
      CHECK(m.kind != MembershipKind::outside);
    }
  }
}

TEST_CASE("sampled secondary fan of the pentagon") {
  auto A = pentagon();
  auto fan = sample_secondary_fan(A, 2000, 0);
  CHECK(fan.n_samples == 2000);

  int full = 0, walls = 0, minimal = 0;
  int tau3_at = -1, rho4_at = -1;
  for (size_t i = 0; i < fan.cells.size(); ++i) {
    const auto& cell = fan.cells[i];
    if (cell.cone.dim == 5) {
      ++full;
      CHECK(cell.full_dimensional);
      CHECK(cell.hits > 0);
    } else if (cell.cone.dim == 4) {
      ++walls;
    } else {
      ++minimal;
      CHECK(cell.subdivision.is_trivial());
    }
    if (cell.subdivision.facets == kTau3Facets) tau3_at = static_cast<int>(i);
    if (cell.subdivision.facets == kRho4Facets) rho4_at = static_cast<int>(i);
  }
  CHECK(full == 5);
  CHECK(walls == 5);
  CHECK(minimal == 1);
  CHECK(fan.cells.size() == 11);
  CHECK(tau3_at >= 0);
  CHECK(rho4_at >= 0);
  CHECK(fan.cells[0].subdivision.is_trivial());  // trivial cell listed first

  // poset: the trivial cell is covered by the five walls, each wall by two
  // chambers: 15 covering relations
  CHECK(fan.poset_edges.size() == 15);
  for (auto [coarse, fine] : fan.poset_edges) {
    CHECK(refines(fan.cells[coarse].subdivision, fan.cells[fine].subdivision));
    CHECK(fan.cells[coarse].cone.dim + 1 == fan.cells[fine].cone.dim);
  }

  // every sampled cell is reproduced by its own relative interior point
  for (const auto& cell : fan.cells) {
    QVec rip = relative_interior_point(cell.cone);
    CHECK(induced_subdivision(A, rip).combinatorics == cell.subdivision);
  }

  // determinism
  auto fan2 = sample_secondary_fan(A, 2000, 0);
  REQUIRE(fan2.cells.size() == fan.cells.size());
  for (size_t i = 0; i < fan.cells.size(); ++i) {
    CHECK(fan2.cells[i].subdivision == fan.cells[i].subdivision);
    CHECK(fan2.cells[i].hits == fan.cells[i].hits);
  }
}

TEST_CASE("fans of segments") {
  auto fan2 = sample_secondary_fan(segment01(), 100, 1);
  REQUIRE(fan2.cells.size() == 1);
  CHECK(fan2.cells[0].subdivision.is_trivial());
  CHECK(fan2.cells[0].cone.dim == 2);  // all of R^2
  CHECK(fan2.poset_edges.empty());

  auto fan3 = sample_secondary_fan(segment012(), 200, 1);
  REQUIRE(fan3.cells.size() == 3);
  CHECK(fan3.cells[0].subdivision.is_trivial());
  int full = 0;
  for (const auto& c : fan3.cells)
    if (c.cone.dim == 3) ++full;
  CHECK(full == 2);  // midpoint lifted above or below the chord
  CHECK(fan3.poset_edges.size() == 2);
}
