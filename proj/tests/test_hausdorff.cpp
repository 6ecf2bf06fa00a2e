#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "toric_limits/hausdorff.hpp"

using namespace toric_limits;

namespace {

SimplexPoint unit(int n, int a) {
  SimplexPoint e;
  e.coords.assign(n, 0.0);
  e.coords[a] = 1.0;
  return e;
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

// embed a face-projected point back into the full arity, zeros off the face
SimplexPoint embed(const SimplexPoint& p, const std::vector<int>& face, int n) {
  SimplexPoint z;
  z.coords.assign(n, 0.0);
  for (size_t k = 0; k < face.size(); ++k) z.coords[face[k]] = p.coords[k];
  return z;
}

}  // namespace

TEST_CASE("l1 metric basics") {
  SimplexPoint z{{0.25, 0.25, 0.25, 0.25, 0}};
  CHECK(l1(z, z) == 0.0);

  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(l1(unit(4, a), unit(4, b)) == (a == b ? 0.0 : 2.0));

  // hand-checked: 3 * |1/4 - 1/3| + 1/4 = 1/2
  SimplexPoint y{{1.0 / 3, 1.0 / 3, 1.0 / 3, 0, 0}};
  CHECK(l1(z, y) == doctest::Approx(0.5).epsilon(1e-15));

  SimplexPoint short3{{0.5, 0.5, 0}};
  CHECK_THROWS_AS(l1(z, short3), std::invalid_argument);
}

TEST_CASE("face projection attains the l1 distance to the face") {
  auto A = pentagon();
  auto faces = faces_of_configuration(A);
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<size_t> F(0, faces.size() - 1);

  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    auto z = random_simplex_point(rng, 5);
    const auto& face = faces[F(rng)].members;
    double off = 0;
    for (int a = 0; a < 5; ++a)
      if (!std::binary_search(face.begin(), face.end(), a)) off += z.coords[a];
    if (off > 1 - 1e-9) continue;  // no mass on the face: projection undefined
    auto p = embed(project_to_face(z, face), face, 5);
    CHECK(l1(z, p) == doctest::Approx(2 * off).epsilon(1e-12));
    // optimality: no grid competitor on the face does better
    for (double s = 0; s <= 1.0; s += 0.25) {
      SimplexPoint q;
      q.coords.assign(5, 0.0);
      // mix of the first face vertex and the projected point
      for (size_t k = 0; k < face.size(); ++k)
        q.coords[face[k]] = s * (k == 0 ? 1.0 : 0.0) + (1 - s) * p.coords[face[k]];
      CHECK(l1(z, q) >= 2 * off - 1e-12);
    }
    ++checked;
  }
  CHECK(checked > 1500);
}

TEST_CASE("hausdorff distance of finite clouds") {
  std::mt19937_64 rng(5);
  auto X = random_cloud(rng, 4, 12);

  auto self_report = hausdorff(X, X);
  CHECK(self_report.d_h == 0.0);
  CHECK(self_report.d_forward == 0.0);
  CHECK(self_report.d_backward == 0.0);

  PointCloud Ea{{unit(4, 0)}, 0, ""};
  PointCloud Eb{{unit(4, 2)}, 0, ""};
  CHECK(hausdorff(Ea, Eb).d_h == 2.0);

  // subset: forward direction collapses
  PointCloud Y = X;
  Y.points.push_back(random_simplex_point(rng, 4));
  Y.points.push_back(random_simplex_point(rng, 4));
  auto r = hausdorff(X, Y);
  CHECK(r.d_forward == 0.0);
  CHECK(r.d_backward > 0.0);
  CHECK(r.d_h == r.d_backward);

  // witnesses reproduce the reported values
  CHECK(l1(X.points[r.witness_forward_x], Y.points[r.witness_forward_y]) ==
        doctest::Approx(r.d_forward).epsilon(1e-15));
  CHECK(l1(Y.points[r.witness_backward_y], X.points[r.witness_backward_x]) ==
        doctest::Approx(r.d_backward).epsilon(1e-15));
  // and the backward witness is genuinely the nearest X-point
  for (const auto& x : X.points)
    CHECK(l1(Y.points[r.witness_backward_y], x) >= r.d_backward - 1e-15);

  CHECK_THROWS_AS(hausdorff(PointCloud{}, X), std::invalid_argument);
  CHECK_THROWS_AS(hausdorff(X, PointCloud{}), std::invalid_argument);
  PointCloud mismatched{{unit(3, 0)}, 0, ""};
  CHECK_THROWS_AS(hausdorff(X, mismatched), std::invalid_argument);
}

TEST_CASE("hausdorff metric axioms on random cloud triples") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> S(3, 20);
  for (int trial = 0; trial < 100; ++trial) {
    auto X = random_cloud(rng, 4, S(rng));
    auto Y = random_cloud(rng, 4, S(rng));
    auto Z = random_cloud(rng, 4, S(rng));
    double xy = hausdorff(X, Y).d_h;
    double yx = hausdorff(Y, X).d_h;
    double yz = hausdorff(Y, Z).d_h;
    double xz = hausdorff(X, Z).d_h;
    CHECK(xy == yx);                     // symmetry, exact
    CHECK(xz <= xy + yz + 1e-12);        // triangle
    CHECK(xy >= 0.0);
    CHECK(xy <= 2.0 + 1e-15);            // simplex diameter
  }
}

TEST_CASE("distance zero exactly characterizes equal sets") {
  std::mt19937_64 rng(29);
  auto X = random_cloud(rng, 5, 9);
  PointCloud P = X;
  std::shuffle(P.points.begin(), P.points.end(), rng);
  P.points.push_back(X.points[0]);  // duplicates don't change the set
  CHECK(hausdorff(X, P).d_h == 0.0);

  PointCloud Q = X;
  Q.points.push_back(random_simplex_point(rng, 5));
  CHECK(hausdorff(X, Q).d_h > 0.0);
}

TEST_CASE("cloud eta measures the net radius") {
  PointCloud one{{unit(3, 0)}, 0, ""};
  CHECK(cloud_eta(one) == 0.0);

  PointCloud two{{unit(3, 0), unit(3, 1)}, 0, ""};
  CHECK(cloud_eta(two) == 2.0);

  std::mt19937_64 rng(37);
  auto X = random_cloud(rng, 4, 15);
  double expect = 0;
  for (size_t i = 0; i < X.points.size(); ++i) {
    double nearest = 1e300;
    for (size_t j = 0; j < X.points.size(); ++j)
      if (j != i) nearest = std::min(nearest, l1(X.points[i], X.points[j]));
    expect = std::max(expect, nearest);
  }
  CHECK(cloud_eta(X) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("directed distance to a face image is bounded by the mass bound") {
  std::vector<int> face = {0, 1};  // the bottom edge of the pentagon
  std::mt19937_64 rng(43);
  PointCloud X;
  double bound = 0;
  for (int k = 0; k < 40; ++k) {
    auto z = random_simplex_point(rng, 5);
    // bias mass onto the face so every point projects
    for (int a : face) z.coords[a] += 1.0;
    double total = 0;
    for (double c : z.coords) total += c;
    for (double& c : z.coords) c /= total;
    X.points.push_back(z);
    double off = z.coords[2] + z.coords[3] + z.coords[4];
    bound = std::max(bound, 2 * off);
  }
  PointCloud Y;
  for (const auto& z : X.points) Y.points.push_back(embed(project_to_face(z, face), face, 5));
  auto r = hausdorff(X, Y);
  CHECK(r.d_forward <= bound + 1e-12);
}
