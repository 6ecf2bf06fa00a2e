#include "toric_limits/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace toric_limits {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }

  // Decimal / scientific literal, parsed exactly.
  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') neg = (s[i] == '-'), ++i;
  std::string digits;
  long frac_digits = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
    if (s[i] == '.') {
      if (seen_dot) throw std::invalid_argument("bad rational literal '" + text + "'");
      seen_dot = true;
      continue;
    }
    digits += s[i];
    seen_digit = true;
    if (seen_dot) ++frac_digits;
  }
  if (!seen_digit) throw std::invalid_argument("bad rational literal '" + text + "'");
  long exp10 = -frac_digits;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i] == '-'), ++i;
    if (i >= s.size()) throw std::invalid_argument("bad exponent in '" + text + "'");
    long e = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("bad exponent in '" + text + "'");
      e = e * 10 + (s[i] - '0');
      if (e > 100000) throw std::invalid_argument("exponent out of range in '" + text + "'");
    }
    exp10 += eneg ? -e : e;
  }
  if (i != s.size()) throw std::invalid_argument("bad rational literal '" + text + "'");

  mpz_class mant(digits.empty() ? "0" : digits, 10);
  Rational q(mant);
  if (exp10 > 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
    q *= Rational(p);
  } else if (exp10 < 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-exp10));
    q /= Rational(p);
  }
  if (neg) q = -q;
  q.canonicalize();
  return q;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  Rational q(x);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

std::vector<double> to_doubles(const QVec& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_d();
  return out;
}

QVec rationals_from_doubles(const std::vector<double>& v) {
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = rational_from_double(v[i]);
  return out;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int sign(const Rational& q) { return sgn(q); }

QVec primitive_integer_direction(const QVec& v) {
  mpz_class den_lcm = 1;
  bool all_zero = true;
  for (const auto& q : v) {
    if (q != 0) all_zero = false;
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
  }
  if (all_zero) return v;
  mpz_class g = 0;
  std::vector<mpz_class> ints(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = v[i].get_num() * (den_lcm / v[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

}  // namespace toric_limits
