#pragma once

// Shared fixtures: the configurations exercised throughout the suite and a few
// exact-arithmetic conveniences.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric_limits/point_configuration.hpp"
#include "toric_limits/rational.hpp"

namespace tl = toric_limits;

inline tl::Rational Q(const std::string& s) { return tl::parse_rational(s); }

inline tl::QVec qvec(std::initializer_list<const char*> entries) {
  tl::QVec v;
  for (const char* e : entries) v.push_back(Q(e));
  return v;
}

// The five-point configuration used across the suite: unit square plus an apex
// above the top edge. Label order fixes all index-based expectations.
inline tl::PointConfiguration pentagon() {
  return tl::new_configuration(2, {"0,0", "1,0", "1,1", "1/2,3/2", "0,1"},
                               {qvec({"0", "0"}), qvec({"1", "0"}), qvec({"1", "1"}),
                                qvec({"1/2", "3/2"}), qvec({"0", "1"})});
}

inline tl::PointConfiguration unit_square() {
  return tl::new_configuration(2, {"0,0", "1,0", "1,1", "0,1"},
                               {qvec({"0", "0"}), qvec({"1", "0"}), qvec({"1", "1"}),
                                qvec({"0", "1"})});
}

inline tl::PointConfiguration grid3x3() {
  std::vector<std::string> labels;
  std::vector<tl::QVec> pts;
  for (int y = 0; y <= 2; ++y)
    for (int x = 0; x <= 2; ++x) {
      labels.push_back(std::to_string(x) + "," + std::to_string(y));
      pts.push_back({tl::Rational(x), tl::Rational(y)});
    }
  return tl::new_configuration(2, labels, pts);
}

inline tl::PointConfiguration triangle() {
  return tl::new_configuration(2, {"0,0", "1,0", "0,1"},
                               {qvec({"0", "0"}), qvec({"1", "0"}), qvec({"0", "1"})});
}

inline tl::PointConfiguration segment01() {
  return tl::new_configuration(1, {"0", "1"}, {qvec({"0"}), qvec({"1"})});
}

inline tl::PointConfiguration segment012() {
  return tl::new_configuration(1, {"0", "1/2", "1"},
                               {qvec({"0"}), qvec({"1/2"}), qvec({"1"})});
}

inline int idx(const tl::PointConfiguration& A, const std::string& label) {
  int i = A.index_of(label);
  if (i < 0) throw std::runtime_error("no such label: " + label);
  return i;
}

// Random lift with entries k/1000, k uniform in [-5000, 5000]: exact rational,
// generic with overwhelming probability.
inline tl::QVec random_rational_lift(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> U(-5000, 5000);
  tl::QVec v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    tl::Rational q(U(rng), 1000);
    q.canonicalize();
    v.push_back(q);
  }
  return v;
}

// Exact value of a growth polynomial at an integer index; requires every
// exponent of sqrt(i) to be even (no sqrt terms).
inline tl::Rational eval_growth_exact(const tl::GrowthPoly& p, long i) {
  tl::Rational acc(0);
  for (const auto& [k, c] : p.terms()) {
    if (k % 2 != 0) throw std::runtime_error("sqrt term in exact eval");
    tl::Rational pw(1);
    for (int e = 0; e < std::abs(k) / 2; ++e) pw *= tl::Rational(i);
    acc += (k >= 0) ? tl::Rational(c * pw) : tl::Rational(c / pw);
  }
  return acc;
}

// Max-norm of the exact difference between two double vectors.
inline double linf(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}
