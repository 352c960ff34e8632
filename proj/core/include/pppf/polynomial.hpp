#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pppf/rational.hpp"

namespace pppf {

/// Exact bivariate polynomial with rational coefficients.
/// Terms map (i,j) -> coefficient of x^i y^j; zero coefficients are never stored.
class BivariatePolynomial {
 public:
  using Key = std::pair<int, int>;

  BivariatePolynomial() = default;
  static BivariatePolynomial constant(const Rational& c);
  static BivariatePolynomial monomial(int i, int j, const Rational& c);
  static BivariatePolynomial variable_x() { return monomial(1, 0, 1); }
  static BivariatePolynomial variable_y() { return monomial(0, 1, 1); }

  void add_term(int i, int j, const Rational& c);
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // max i+j over stored terms; -1 for the zero polynomial

  BivariatePolynomial operator+(const BivariatePolynomial& o) const;
  BivariatePolynomial operator-(const BivariatePolynomial& o) const;
  BivariatePolynomial operator*(const BivariatePolynomial& o) const;
  BivariatePolynomial operator*(const Rational& c) const;
  bool operator==(const BivariatePolynomial& o) const { return terms_ == o.terms_; }

  BivariatePolynomial dx() const;
  BivariatePolynomial dy() const;

  Rational evaluate(const Rational& x, const Rational& y) const;
  Complex evaluate(const Complex& x, const Complex& y) const;

  /// Homogeneous part of top degree.
  BivariatePolynomial top_form() const;

  /// Substitution (x,y) -> (a11 x + a12 y + b1, a21 x + a22 y + b2), exact.
  BivariatePolynomial affine_substitute(const Rational& a11, const Rational& a12, const Rational& b1,
                                        const Rational& a21, const Rational& a22, const Rational& b2) const;

  std::string to_string() const;

 private:
  std::map<Key, Rational> terms_;
};

/// Product presentation ell_1 * ... * ell_m kept alongside its exact expansion.
struct FactoredPolynomial {
  std::vector<BivariatePolynomial> factors;
  BivariatePolynomial expanded;

  static FactoredPolynomial from_factors(std::vector<BivariatePolynomial> fs);
};

/// Exact product of the factors; degree is the sum of factor degrees.
BivariatePolynomial expand(const FactoredPolynomial& f);

/// Polynomial one-form P dx + Q dy.
struct OneForm {
  BivariatePolynomial P, Q;
};

/// Exterior derivative of a polynomial: d(g) as a one-form.
OneForm differential(const BivariatePolynomial& g);

/// Dense double-precision copy for hot numeric loops (ODE fields, continuation).
/// Evaluation is 2D Horner; works for real and complex scalars.
class PolyD {
 public:
  PolyD() = default;
  explicit PolyD(const BivariatePolynomial& p);

  template <class Scalar>
  Scalar eval(const Scalar& x, const Scalar& y) const {
    if (c_.empty()) return Scalar(0);
    Scalar r(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
      const auto& row = c_[i];
      Scalar ry(0);
      for (std::size_t j = row.size(); j-- > 0;) ry = ry * y + Scalar(row[j]);
      r = r * x + ry;
    }
    return r;
  }

 private:
  std::vector<std::vector<double>> c_;  // c_[i][j] multiplies x^i y^j
};

}  // namespace pppf
