#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "toric_limits/point_configuration.hpp"

using namespace toric_limits;

TEST_CASE("configuration validation") {
  auto A = pentagon();
  CHECK(A.size() == 5);
  CHECK(A.dim == 2);
  CHECK(A.spans());
  CHECK(A.affine_rank == 3);
  CHECK(A.index_of("1/2,3/2") == 3);
  CHECK(A.index_of("nope") == -1);

  CHECK(grid3x3().spans());

  // duplicate point
  CHECK_THROWS_AS(new_configuration(2, {"a", "b"}, {qvec({"0", "0"}), qvec({"0", "0"})}),
                  std::invalid_argument);
  // duplicate label
  CHECK_THROWS_AS(new_configuration(2, {"a", "a"}, {qvec({"0", "0"}), qvec({"1", "0"})}),
                  std::invalid_argument);
  // wrong arity
  CHECK_THROWS_AS(new_configuration(2, {"a"}, {qvec({"0"})}), std::invalid_argument);
  // empty
  CHECK_THROWS_AS(new_configuration(2, {}, {}), std::invalid_argument);
}

TEST_CASE("subconfiguration keeps order and labels") {
  auto A = pentagon();
  auto F = subconfiguration(A, {2, 3, 4});
  CHECK(F.size() == 3);
  CHECK(F.labels == std::vector<std::string>{"1,1", "1/2,3/2", "0,1"});
  CHECK(F.points[1] == qvec({"1/2", "3/2"}));
}

TEST_CASE("affine function space") {
  auto A = pentagon();
  auto basis = affine_function_space(A);
  REQUIRE(basis.size() == 3);
  CHECK(basis[0] == qvec({"1", "1", "1", "1", "1"}));
  CHECK(basis[1] == qvec({"0", "1", "1", "1/2", "0"}));  // x-coordinate values
  CHECK(basis[2] == qvec({"0", "0", "1", "3/2", "1"}));  // y-coordinate values

  auto seg = new_configuration(1, {"0", "1", "2"}, {qvec({"0"}), qvec({"1"}), qvec({"2"})});
  auto sb = affine_function_space(seg);
  REQUIRE(sb.size() == 2);
  CHECK(sb[0] == qvec({"1", "1", "1"}));
  CHECK(sb[1] == qvec({"0", "1", "2"}));

  // three collinear points in the plane: rank 2, thinned basis, span flag off
  auto C = new_configuration(2, {"a", "b", "c"},
                             {qvec({"0", "0"}), qvec({"1", "1"}), qvec({"2", "2"})});
  CHECK(C.affine_rank == 2);
  CHECK_FALSE(C.spans());
  CHECK(affine_function_space(C).size() == 2);
}

TEST_CASE("reduce_mod_aff reproduces the worked sequence reduction") {
  auto A = pentagon();
  LabelGauge lg{{"1,1", "1/2,3/2", "0,1"}};

  std::vector<GrowthPoly> f = {parse_growth_expression("-i - 1/i"),
                               parse_growth_expression("i - 1"), parse_growth_expression("i"),
                               parse_growth_expression("-i/2"), parse_growth_expression("-i")};
  auto red = reduce_mod_aff(A, f, lg);
  CHECK(red[0] == parse_growth_expression("-i - 1/i"));
  CHECK(red[1] == parse_growth_expression("-i - 1"));
  CHECK(red[2] == GrowthPoly());
  CHECK(red[3] == GrowthPoly());
  CHECK(red[4] == GrowthPoly());
}

TEST_CASE("reduce_mod_aff kills affine functions and is idempotent") {
  auto A = pentagon();
  QVec zero(5, Rational(0));

  // an affine function: 2 + 3x - y on the five points
  QVec aff;
  for (int i = 0; i < 5; ++i)
    aff.push_back(Rational(2) + Rational(3) * A.points[i][0] - A.points[i][1]);
  CHECK(reduce_mod_aff(A, aff) == zero);
  CHECK(reduce_mod_aff(A, aff, Gauge{LabelGauge{{"0,0", "1,0", "0,1"}}}) == zero);
  CHECK(reduce_mod_aff(A, QVec(5, Rational(1))) == zero);

  QVec f = qvec({"-1", "-1", "0", "0", "7/3"});
  QVec r1 = reduce_mod_aff(A, f);
  CHECK(reduce_mod_aff(A, r1) == r1);  // idempotent, exactly
  // the discarded part is affine
  QVec diff;
  for (int i = 0; i < 5; ++i) diff.push_back(f[i] - r1[i]);
  CHECK(is_affine_on(A, diff));
  CHECK_FALSE(is_affine_on(A, f));

  // label gauge zeroes the chosen labels
  LabelGauge lg{{"1,1", "1/2,3/2", "0,1"}};
  QVec r2 = reduce_mod_aff(A, f, Gauge{lg});
  CHECK(r2[2] == 0);
  CHECK(r2[3] == 0);
  CHECK(r2[4] == 0);

  // affinely dependent gauge labels are rejected
  auto G = grid3x3();
  CHECK_THROWS_AS(reduce_mod_aff(G, QVec(9, Rational(1)),
                                 Gauge{LabelGauge{{"0,0", "1,0", "2,0"}}}),
                  std::invalid_argument);
}

TEST_CASE("taut: vertices, barycenter, mixtures, affinity") {
  auto A = pentagon();
  CHECK(taut(A, {0, 1, 0, 0, 0}) == std::vector<double>{1, 0});

  auto bc = taut(A, {0.2, 0.2, 0.2, 0.2, 0.2});
  CHECK(bc[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(bc[1] == doctest::Approx(0.7).epsilon(1e-14));

  auto half = taut(A, {0.5, 0, 0, 0, 0.5});
  CHECK(half[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(half[1] == doctest::Approx(0.5).epsilon(1e-14));

  // affine in z
  std::vector<double> y = {0.1, 0.3, 0.2, 0.15, 0.25}, z = {0.4, 0.1, 0.1, 0.2, 0.2};
  for (double t : {0.0, 0.25, 0.5, 0.8, 1.0}) {
    std::vector<double> mix(5);
    for (int i = 0; i < 5; ++i) mix[i] = t * y[i] + (1 - t) * z[i];
    auto tm = taut(A, mix), ty = taut(A, y), tz = taut(A, z);
    for (int k = 0; k < 2; ++k)
      CHECK(tm[k] == doctest::Approx(t * ty[k] + (1 - t) * tz[k]).epsilon(1e-12));
  }
}

TEST_CASE("faces of configuration with checkable certificates") {
  auto A = pentagon();
  auto faces = faces_of_configuration(A);
  REQUIRE(faces.size() == 11);  // 5 vertices + 5 edges + full face

  int by_dim[3] = {0, 0, 0};
  for (const auto& f : faces) {
    REQUIRE(f.dim >= 0);
    REQUIRE(f.dim <= 2);
    ++by_dim[f.dim];
    // supporting halfspace: <normal, a> <= offset on A, equality iff member
    for (int a = 0; a < A.size(); ++a) {
      Rational val(0);
      for (int c = 0; c < A.dim; ++c) val += f.normal[c] * A.points[a][c];
      bool member = std::find(f.members.begin(), f.members.end(), a) != f.members.end();
      if (member)
        CHECK(val == f.offset);
      else
        CHECK(val < f.offset);
    }
  }
  CHECK(by_dim[0] == 5);
  CHECK(by_dim[1] == 5);
  CHECK(by_dim[2] == 1);

  auto G = grid3x3();
  auto gf = faces_of_configuration(G);
  REQUIRE(gf.size() == 9);  // 4 vertices + 4 edges of 3 points + full face
  int edges3 = 0, full9 = 0;
  for (const auto& f : gf) {
    if (f.dim == 1) {
      CHECK(f.members.size() == 3);
      ++edges3;
    }
    if (f.dim == 2) {
      CHECK(f.members.size() == 9);
      ++full9;
    }
  }
  CHECK(edges3 == 4);
  CHECK(full9 == 1);

  auto seg = segment012();
  auto sf = faces_of_configuration(seg);
  REQUIRE(sf.size() == 3);
  CHECK(sf[0].members == std::vector<int>{0});
  CHECK(sf[1].members == std::vector<int>{2});
  CHECK(sf[2].members == std::vector<int>{0, 1, 2});
}

TEST_CASE("face_containing locates the smallest face") {
  auto A = pentagon();
  auto faces = faces_of_configuration(A);
  CHECK(face_containing(A, faces, {0.5, 0.7}, 1e-9) ==
        std::vector<int>{0, 1, 2, 3, 4});
  CHECK(face_containing(A, faces, {0, 0}, 1e-9) == std::vector<int>{0});
  CHECK(face_containing(A, faces, {0.5, 0}, 1e-9) == std::vector<int>{0, 1});
  // apex edge midpoint: between (1,1) and (1/2,3/2)
  CHECK(face_containing(A, faces, {0.75, 1.25}, 1e-9) == std::vector<int>{2, 3});
}

TEST_CASE("affine combination weights and lex-first basis") {
  auto A = unit_square();
  QMat pts = {A.points[0], A.points[1], A.points[2], A.points[3]};
  auto w = affine_combination_weights(pts, qvec({"1/2", "1/2"}));
  REQUIRE(w.has_value());
  Rational sum(0);
  QVec recon = {Rational(0), Rational(0)};
  for (int i = 0; i < 4; ++i) {
    sum += (*w)[i];
    for (int c = 0; c < 2; ++c) recon[c] += (*w)[i] * pts[i][c];
  }
  CHECK(sum == 1);
  CHECK(recon == qvec({"1/2", "1/2"}));

  // off the affine span -> nullopt
  QMat line = {qvec({"0", "0"}), qvec({"1", "0"})};
  CHECK_FALSE(affine_combination_weights(line, qvec({"0", "1"})).has_value());

  auto P = pentagon();
  CHECK(lex_first_affine_basis(P, {0, 1, 2, 4}) == std::vector<int>{0, 1, 2});
  CHECK(lex_first_affine_basis(P, {2, 3, 4}) == std::vector<int>{2, 3, 4});
}
