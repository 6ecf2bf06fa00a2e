#pragma once

#include <map>
#include <string>
#include <vector>

#include "toric_limits/rational.hpp"

namespace toric_limits {

// Exact asymptotics of sequence entries: a Laurent polynomial in x = sqrt(i)
// with rational coefficients. The sequence grammar (i, sqrt(i), 1/i, constants,
// +, -, *) closes over this ring, and "for all sufficiently large i" sign
// questions become exact leading-coefficient tests.
class GrowthPoly {
 public:
  GrowthPoly() = default;
  explicit GrowthPoly(Rational constant);

  // c * x^k, i.e. c * i^{k/2}.
  static GrowthPoly term(Rational c, int k);

  GrowthPoly operator+(const GrowthPoly& o) const;
  GrowthPoly operator-(const GrowthPoly& o) const;
  GrowthPoly operator*(const GrowthPoly& o) const;
  GrowthPoly operator-() const;
  bool operator==(const GrowthPoly& o) const { return terms_ == o.terms_; }

  // Division by a single-term polynomial (covers 1/i and rational constants).
  // Throws std::invalid_argument for a multi-term or zero divisor.
  GrowthPoly operator/(const GrowthPoly& o) const;

  bool is_zero() const { return terms_.empty(); }

  // Sign as i -> infinity: the sign of the leading coefficient.
  int sign() const;

  // Degree in x (0 for the zero polynomial by convention of callers checking
  // is_zero first).
  int degree() const;

  // True when no positive power of x appears (value stays bounded as i grows).
  bool is_bounded() const;

  Rational coefficient(int k) const;
  Rational constant_term() const { return coefficient(0); }
  const std::map<int, Rational>& terms() const { return terms_; }

  // Evaluates at index i > 0 in double arithmetic.
  double eval(double i) const;

  std::string to_text() const;  // human-readable, e.g. "-i - 1/i"

 private:
  std::map<int, Rational> terms_;  // exponent of x -> nonzero coefficient
  void prune();
};

// A comparison helper: sign of (a - b) for large i.
int compare_eventually(const GrowthPoly& a, const GrowthPoly& b);

// Parses an expression in i over +, -, *, /, parentheses, decimal/rational
// constants, `i`, and `sqrt(i)`. Division requires a single-term divisor.
GrowthPoly parse_growth_expression(const std::string& text);

}  // namespace toric_limits
