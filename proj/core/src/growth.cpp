#include "toric_limits/growth.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace toric_limits {

GrowthPoly::GrowthPoly(Rational constant) {
  if (constant != 0) terms_[0] = std::move(constant);
}

GrowthPoly GrowthPoly::term(Rational c, int k) {
  GrowthPoly p;
  if (c != 0) p.terms_[k] = std::move(c);
  return p;
}

void GrowthPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = (it->second == 0) ? terms_.erase(it) : std::next(it);
}

GrowthPoly GrowthPoly::operator+(const GrowthPoly& o) const {
  GrowthPoly out = *this;
  for (const auto& [k, c] : o.terms_) out.terms_[k] += c;
  out.prune();
  return out;
}

GrowthPoly GrowthPoly::operator-(const GrowthPoly& o) const {
  GrowthPoly out = *this;
  for (const auto& [k, c] : o.terms_) out.terms_[k] -= c;
  out.prune();
  return out;
}

GrowthPoly GrowthPoly::operator-() const {
  GrowthPoly out;
  for (const auto& [k, c] : terms_) out.terms_[k] = -c;
  return out;
}

GrowthPoly GrowthPoly::operator*(const GrowthPoly& o) const {
  GrowthPoly out;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) out.terms_[k1 + k2] += c1 * c2;
  out.prune();
  return out;
}

GrowthPoly GrowthPoly::operator/(const GrowthPoly& o) const {
  if (o.terms_.empty()) throw std::invalid_argument("division by zero expression");
  if (o.terms_.size() != 1)
    throw std::invalid_argument("division only supported by single-term expressions");
  const auto& [k, c] = *o.terms_.begin();
  GrowthPoly out;
  for (const auto& [k1, c1] : terms_) out.terms_[k1 - k] = c1 / c;
  return out;
}

int GrowthPoly::sign() const {
  if (terms_.empty()) return 0;
  return sgn(terms_.rbegin()->second);
}

int GrowthPoly::degree() const {
  if (terms_.empty()) return 0;
  return terms_.rbegin()->first;
}

bool GrowthPoly::is_bounded() const {
  return terms_.empty() || terms_.rbegin()->first <= 0;
}

Rational GrowthPoly::coefficient(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Rational(0) : it->second;
}

double GrowthPoly::eval(double i) const {
  double x = std::sqrt(i);
  double s = 0;
  for (const auto& [k, c] : terms_) s += c.get_d() * std::pow(x, k);
  return s;
}

std::string GrowthPoly::to_text() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    std::string mag = toric_limits::to_string(c < 0 ? Rational(-c) : c);
    std::string var;
    if (k == 0) var = mag;
    else {
      std::string base = (k % 2 == 0) ? "i" : "sqrt(i)";
      int p = (k % 2 == 0) ? k / 2 : k;  // sqrt(i)^k for odd k, i^{k/2} otherwise
      std::string power = base;
      if (std::abs(p) != 1) power += "^" + std::to_string(std::abs(p));
      if (k < 0) power = "1/" + power;
      var = (mag == "1") ? power : mag + "*" + power;
    }
    if (out.empty()) out = (c < 0 ? "-" : "") + var;
    else out += (c < 0 ? " - " : " + ") + var;
  }
  return out;
}

int compare_eventually(const GrowthPoly& a, const GrowthPoly& b) { return (a - b).sign(); }

// ---- expression parser ----

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("bad sequence expression '" + s + "': " + what);
  }

  GrowthPoly expr() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    GrowthPoly acc = term();
    if (neg) acc = -acc;
    while (true) {
      skip();
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  GrowthPoly term() {
    GrowthPoly acc = factor();
    while (true) {
      skip();
      if (eat('*')) acc = acc * factor();
      else if (eat('/')) acc = acc / factor();
      else break;
    }
    return acc;
  }

  GrowthPoly factor() {
    skip();
    if (pos >= s.size()) fail("unexpected end");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      GrowthPoly inner = expr();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (c == '-') { ++pos; return -factor(); }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (identifier("sqrt")) {
      if (!eat('(')) fail("sqrt needs parentheses");
      GrowthPoly arg = expr();
      if (!eat(')')) fail("missing ')'");
      if (!(arg == GrowthPoly::term(1, 2))) fail("sqrt only supports sqrt(i)");
      return GrowthPoly::term(1, 1);
    }
    if (identifier("i")) return GrowthPoly::term(1, 2);
    fail(std::string("unexpected character '") + c + "'");
  }

  bool identifier(const std::string& name) {
    skip();
    if (s.compare(pos, name.size(), name) != 0) return false;
    std::size_t end = pos + name.size();
    if (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_'))
      return false;
    pos = end;
    return true;
  }

  GrowthPoly number() {
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
      ++pos;
    // exponent suffix, e.g. 2e-3
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
      std::size_t e = pos + 1;
      if (e < s.size() && (s[e] == '+' || s[e] == '-')) ++e;
      if (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) {
        pos = e;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      }
    }
    return GrowthPoly(parse_rational(s.substr(start, pos - start)));
  }
};

}  // namespace

GrowthPoly parse_growth_expression(const std::string& text) {
  Parser p(text);
  GrowthPoly out = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return out;
}

}  // namespace toric_limits
