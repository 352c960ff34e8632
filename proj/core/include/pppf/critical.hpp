#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pppf/polynomial.hpp"
#include "pppf/tolerances.hpp"

namespace pppf {

enum class MorseType { saddle, center, complex_point, degenerate };

struct CriticalPoint {
  Complex x, y;
  Complex value;
  Complex hessian_det;
  MorseType morse_type = MorseType::degenerate;
  bool is_real(double tol = 1e-8) const {
    return std::abs(x.imag()) < tol && std::abs(y.imag()) < tol;
  }
};

struct Level {
  Complex value;             // cluster representative (mean)
  std::vector<int> members;  // indices into CriticalStructure::points
};

struct InfinityDirection {
  Complex direction;  // root s of top(s,1); x:y = s:1. A vertical direction is (1:0).
  bool at_y_zero = false;
  bool real = false;
};

struct CriticalStructure {
  std::vector<CriticalPoint> points;
  std::vector<Level> levels;         // sorted by (Re, Im) of the representative
  bool morse = true;
  bool levels_well_separated = true; // clusters separated by >10x clustering width
  std::vector<InfinityDirection> at_infinity;
  double value_spread = 0.0;

  int level_of(int point_index) const;
};

/// Gradient and Hessian evaluation helpers (exact at rational points).
Rational evaluate_exact(const BivariatePolynomial& f, const Rational& x, const Rational& y);
std::array<Rational, 2> gradient_exact(const BivariatePolynomial& f, const Rational& x, const Rational& y);
std::array<Rational, 4> hessian_exact(const BivariatePolynomial& f, const Rational& x, const Rational& y);

std::array<Complex, 2> gradient_at(const BivariatePolynomial& f, const Complex& x, const Complex& y);
std::array<Complex, 4> hessian_at(const BivariatePolynomial& f, const Complex& x, const Complex& y);

/// Direction classes at infinity of f (roots of the degree-d top form).
/// Throws AtInfinityDegenerate when the top form has a multiple root.
std::vector<InfinityDirection> directions_at_infinity(const BivariatePolynomial& f);

/// All isolated solutions of grad f = 0, found by resultant elimination,
/// eigenvalue root-finding and Newton polish, then classified and
/// value-clustered into levels.
CriticalStructure critical_points(const BivariatePolynomial& f, const Tolerances& tol = {});

/// Re-clusters a set of complex values; exposed for idempotence checks and
/// for the family module, which clusters per-lambda snapshots.
std::vector<Level> cluster_values(const std::vector<Complex>& values, double rel_tol,
                                  bool* well_separated = nullptr, double* spread_out = nullptr);

}  // namespace pppf
