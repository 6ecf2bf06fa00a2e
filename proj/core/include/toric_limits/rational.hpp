#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace toric_limits {

// Exact rational scalar used by all hull/subdivision/cone combinatorics.
using Rational = mpq_class;

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;  // row-major

// Parses "p/q", integers, and decimal literals ("1.5", "-3", "2e-3") exactly.
// Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

// Exact value of the double (every finite double is rational).
// Throws std::invalid_argument for NaN/inf.
Rational rational_from_double(double x);

double to_double(const Rational& q);

std::vector<double> to_doubles(const QVec& v);
QVec rationals_from_doubles(const std::vector<double>& v);

// "p/q" when the denominator is not 1, otherwise just "p".
std::string to_string(const Rational& q);

int sign(const Rational& q);

// Scales v so its entries are coprime integers and the first nonzero entry's
// sign is kept; the zero vector is returned unchanged. Canonical form for ray
// and form directions (defined up to positive scaling).
QVec primitive_integer_direction(const QVec& v);

}  // namespace toric_limits
