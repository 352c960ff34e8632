#pragma once

// Shared fixture polynomials for the test suites. All exact rationals.

#include "pppf/polynomial.hpp"

namespace fixtures {

using pppf::BivariatePolynomial;
using pppf::FactoredPolynomial;
using pppf::Rational;

inline BivariatePolynomial X() { return BivariatePolynomial::variable_x(); }
inline BivariatePolynomial Y() { return BivariatePolynomial::variable_y(); }
inline BivariatePolynomial C(const Rational& q) { return BivariatePolynomial::constant(q); }

// x*y*(x+y-1): three lines bounding one compact region.
inline FactoredPolynomial triangle() {
  return FactoredPolynomial::from_factors({X(), Y(), X() + Y() - C(1)});
}

// (xy+eps)(x+y-1)
inline FactoredPolynomial perturbed_triangle(const Rational& eps) {
  return FactoredPolynomial::from_factors({X() * Y() + C(eps), X() + Y() - C(1)});
}

inline BivariatePolynomial l3() { return X() + Y() * Rational(1, 2) - C(1); }
inline BivariatePolynomial l4() { return X() * Rational(1, 2) + Y() + C(1); }

// x*y*(x+y/2-1)*(x/2+y+1): four lines, six double points, three regions.
inline FactoredPolynomial four_lines() {
  return FactoredPolynomial::from_factors({X(), Y(), l3(), l4()});
}

inline FactoredPolynomial four_lines_perturbed(const Rational& eps) {
  return FactoredPolynomial::from_factors({X() * Y() + C(eps), l3(), l4()});
}

inline FactoredPolynomial four_lines_double_perturbed(const Rational& eps, const Rational& eps2) {
  return FactoredPolynomial::from_factors({X() * Y() + C(eps), l3() * l4() + C(eps2)});
}

// (y-1/5)(x^2+y^2-1): line plus circle, two double points, two centers.
inline FactoredPolynomial line_ellipse() {
  auto ell = X() * X() + Y() * Y() - C(1);
  return FactoredPolynomial::from_factors({Y() - C(Rational(1, 5)), ell});
}

// (x^2+4y^2-1)(4(x-1/10)^2+(y-1/20)^2-1): two transversal ellipses,
// four double points, five centers on distinct levels.
inline FactoredPolynomial two_ellipses() {
  auto ea = X() * X() + Y() * Y() * Rational(4) - C(1);
  auto sx = X() - C(Rational(1, 10));
  auto sy = Y() - C(Rational(1, 20));
  auto eb = sx * sx * Rational(4) + sy * sy - C(1);
  return FactoredPolynomial::from_factors({ea, eb});
}

// Mirror-symmetric four lines: x*y*(x+2y-2)*(2x+y-2); the two off-diagonal
// centers share a critical value identically.
inline FactoredPolynomial symmetric_four_lines() {
  return FactoredPolynomial::from_factors({X(), Y(), X() + Y() * Rational(2) - C(2), X() * Rational(2) + Y() - C(2)});
}

}  // namespace fixtures
