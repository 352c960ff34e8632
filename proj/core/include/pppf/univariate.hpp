#pragma once

#include <vector>

#include "pppf/polynomial.hpp"
#include "pppf/rational.hpp"

namespace pppf {

/// Univariate polynomial over the rationals, coefficients low to high.
struct UniPoly {
  std::vector<Rational> c;

  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim();
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Rational& lc() const { return c.back(); }

  Rational evaluate(const Rational& t) const;
  Complex evaluate(const Complex& t) const;
  UniPoly derivative() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const Rational& k) const;

  /// Remainder of *this divided by o (o nonzero).
  UniPoly rem(const UniPoly& o) const;
};

/// Resultant of two univariate polynomials (Sylvester determinant).
Rational resultant(const UniPoly& a, const UniPoly& b);

/// Number of distinct real roots (Sturm).
int count_real_roots(const UniPoly& p);

/// Eliminates y: Res_y(a, b) as a polynomial in x, computed exactly by
/// evaluation at integer nodes plus Lagrange interpolation.
UniPoly resultant_y(const BivariatePolynomial& a, const BivariatePolynomial& b);
UniPoly resultant_x(const BivariatePolynomial& a, const BivariatePolynomial& b);

/// All complex roots, companion-matrix eigenvalues plus Newton polish.
std::vector<Complex> complex_roots(const std::vector<Complex>& coeffs_low_to_high);
std::vector<Complex> complex_roots(const UniPoly& p);

/// Restriction of a bivariate polynomial to a fixed complex x (resp. y),
/// as complex coefficients in the other variable.
std::vector<Complex> restrict_x(const BivariatePolynomial& p, const Complex& x0);
std::vector<Complex> restrict_y(const BivariatePolynomial& p, const Complex& y0);

}  // namespace pppf
