#include "pppf/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "pppf/errors.hpp"

namespace pppf {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num(s.substr(0, slash));
      BigInt den(s.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    auto epos = s.find_first_of("eE");
    std::string mant = epos == std::string::npos ? s : s.substr(0, epos);
    long expo = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
    auto dot = mant.find('.');
    if (dot != std::string::npos) {
      expo -= static_cast<long>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    if (mant.empty() || mant == "-" || mant == "+") throw ParseError("bad rational literal '" + s + "'");
    // strip leading zeros so cpp_int does not read an octal prefix
    bool neg = mant[0] == '-';
    std::string digits = mant.substr(mant[0] == '-' || mant[0] == '+' ? 1 : 0);
    std::size_t nz = digits.find_first_not_of('0');
    digits = nz == std::string::npos ? "0" : digits.substr(nz);
    Rational r{BigInt((neg ? "-" : "") + digits)};
    BigInt p10 = 1;
    for (long k = 0; k < std::abs(expo); ++k) p10 *= 10;
    if (expo >= 0) r *= p10; else r /= p10;
    return r;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad rational literal '" + s + "'");
  }
}

std::string rational_to_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

BivariatePolynomial BivariatePolynomial::constant(const Rational& c) {
  BivariatePolynomial p;
  p.add_term(0, 0, c);
  return p;
}

BivariatePolynomial BivariatePolynomial::monomial(int i, int j, const Rational& c) {
  BivariatePolynomial p;
  p.add_term(i, j, c);
  return p;
}

void BivariatePolynomial::add_term(int i, int j, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find({i, j});
  if (it == terms_.end()) {
    terms_.emplace(Key{i, j}, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int BivariatePolynomial::degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
  return d;
}

BivariatePolynomial BivariatePolynomial::operator+(const BivariatePolynomial& o) const {
  BivariatePolynomial r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
  return r;
}

BivariatePolynomial BivariatePolynomial::operator-(const BivariatePolynomial& o) const {
  BivariatePolynomial r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, -c);
  return r;
}

BivariatePolynomial BivariatePolynomial::operator*(const BivariatePolynomial& o) const {
  BivariatePolynomial r;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_)
      r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return r;
}

BivariatePolynomial BivariatePolynomial::operator*(const Rational& c) const {
  BivariatePolynomial r;
  if (c == 0) return r;
  for (const auto& [k, v] : terms_) r.add_term(k.first, k.second, v * c);
  return r;
}

BivariatePolynomial BivariatePolynomial::dx() const {
  BivariatePolynomial r;
  for (const auto& [k, c] : terms_)
    if (k.first > 0) r.add_term(k.first - 1, k.second, c * k.first);
  return r;
}

BivariatePolynomial BivariatePolynomial::dy() const {
  BivariatePolynomial r;
  for (const auto& [k, c] : terms_)
    if (k.second > 0) r.add_term(k.first, k.second - 1, c * k.second);
  return r;
}

Rational BivariatePolynomial::evaluate(const Rational& x, const Rational& y) const {
  // Horner over x with inner Horner over y would need a dense grid; with a
  // sparse map, direct powers are simpler and still exact.
  Rational r = 0;
  for (const auto& [k, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < k.first; ++i) t *= x;
    for (int j = 0; j < k.second; ++j) t *= y;
    r += t;
  }
  return r;
}

Complex BivariatePolynomial::evaluate(const Complex& x, const Complex& y) const {
  Complex r = 0;
  for (const auto& [k, c] : terms_) {
    Complex t = to_double(c);
    for (int i = 0; i < k.first; ++i) t *= x;
    for (int j = 0; j < k.second; ++j) t *= y;
    r += t;
  }
  return r;
}

BivariatePolynomial BivariatePolynomial::top_form() const {
  BivariatePolynomial r;
  int d = degree();
  for (const auto& [k, c] : terms_)
    if (k.first + k.second == d) r.add_term(k.first, k.second, c);
  return r;
}

BivariatePolynomial BivariatePolynomial::affine_substitute(const Rational& a11, const Rational& a12, const Rational& b1,
                                                           const Rational& a21, const Rational& a22, const Rational& b2) const {
  BivariatePolynomial nx, ny;
  nx.add_term(1, 0, a11); nx.add_term(0, 1, a12); nx.add_term(0, 0, b1);
  ny.add_term(1, 0, a21); ny.add_term(0, 1, a22); ny.add_term(0, 0, b2);
  BivariatePolynomial r;
  for (const auto& [k, c] : terms_) {
    BivariatePolynomial t = BivariatePolynomial::constant(c);
    for (int i = 0; i < k.first; ++i) t = t * nx;
    for (int j = 0; j < k.second; ++j) t = t * ny;
    r = r + t;
  }
  return r;
}

std::string BivariatePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rational_to_string(c);
    if (k.first > 0) os << "*x^" << k.first;
    if (k.second > 0) os << "*y^" << k.second;
  }
  return os.str();
}

FactoredPolynomial FactoredPolynomial::from_factors(std::vector<BivariatePolynomial> fs) {
  FactoredPolynomial f;
  f.factors = std::move(fs);
  f.expanded = expand(f);
  return f;
}

BivariatePolynomial expand(const FactoredPolynomial& f) {
  if (f.factors.empty()) throw ValidationError("expand: no factors");
  BivariatePolynomial r = BivariatePolynomial::constant(1);
  for (const auto& p : f.factors) r = r * p;
  return r;
}

OneForm differential(const BivariatePolynomial& g) { return OneForm{g.dx(), g.dy()}; }

PolyD::PolyD(const BivariatePolynomial& p) {
  int di = 0, dj = 0;
  for (const auto& [k, c] : p.terms()) {
    di = std::max(di, k.first);
    dj = std::max(dj, k.second);
  }
  if (p.is_zero()) return;
  c_.assign(di + 1, std::vector<double>(dj + 1, 0.0));
  for (const auto& [k, c] : p.terms()) c_[k.first][k.second] = to_double(c);
}

}  // namespace pppf
