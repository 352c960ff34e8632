#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "pppf/critical.hpp"
#include "pppf/polynomial.hpp"
#include "pppf/tolerances.hpp"

namespace pppf {

struct DoublePoint {
  double x, y;
  int factor_a, factor_b;
};

struct ComplexIntersectionPoint {
  Complex x, y;
  int factor_a, factor_b;
};

/// Arc of one factor curve between consecutive double points (or rays /
/// closed loops). Sides are divide-complement regions seen from the arc:
/// `side_pos` lies toward +grad(factor), `side_neg` opposite; -1 = unbounded.
struct DivideEdge {
  int factor = 0;
  int branch = 0;
  int v_from = -1, v_to = -1;  // vertex indices; -1 = infinity, closed loops use -2
  double t_from = 0, t_to = 0;
  bool bounded = false;
  int side_pos = -1, side_neg = -1;
};

/// Compact region of the divide complement, anchored at the center critical
/// point it contains; sign is the sign of F at that extremum.
struct DivideRegion {
  int crit_index = -1;
  double cx = 0, cy = 0;
  int sign = 0;  // +1 max, -1 min
  std::vector<int> boundary_vertices;
};

struct Divide {
  int degree = 0;
  int k = 0;             // real double points
  int K = 0;             // compact regions
  int r_infinity = 0;    // real points at infinity of the zero level
  std::vector<DoublePoint> double_points;
  std::vector<ComplexIntersectionPoint> complex_intersections;
  std::vector<DivideEdge> edges;
  std::vector<DivideRegion> regions;
  std::map<std::pair<int, int>, int> shared_edges;  // region pair -> count
  bool euler_holds = false;
};

/// Parametrized real branches of a degree-<=2 curve, shared by the divide
/// builder and the plot exporter.
class FactorCurve {
 public:
  explicit FactorCurve(const BivariatePolynomial& f);

  int branch_count() const;
  bool closed(int branch) const;  // true only for the ellipse branch
  std::array<double, 2> point(int branch, double t) const;
  /// Branch id and parameter of a point assumed to lie on the curve.
  std::pair<int, double> locate(double x, double y) const;

 private:
  enum class Kind { line, ellipse, hyperbola, empty } kind_ = Kind::empty;
  // line: p0 + t*dir; conics: center + R*(u(t), v(t)) in the principal frame
  double p0x_ = 0, p0y_ = 0, dirx_ = 0, diry_ = 0;
  double cx_ = 0, cy_ = 0;
  double r1_ = 0, r2_ = 0;
  double e1x_ = 0, e1y_ = 0, e2x_ = 0, e2y_ = 0;
};

/// Euler identity (d-1)^2 = k + K = 1 + 2k - r_infinity.
bool euler_check(int degree, int k, int K, int r_infinity);

/// Planar divide of a factored polynomial with factors of degree <= 2.
Divide build_divide(const FactoredPolynomial& f, const CriticalStructure& crit, const Tolerances& tol = {});

struct AdmissibilityReport {
  bool all_factors_linear = false;
  bool distinct_real_infinity = false;
  bool intersections_real_distinct = false;
  bool morse = false;
  bool saddle_count_matches = false;          // d(d-1)/2 saddles on level 0
  bool centers_on_distinct_nonzero_levels = false;  // (d-1)(d-2)/2 centers
  int saddles = 0, centers = 0;
  bool admissible() const {
    return all_factors_linear && distinct_real_infinity && intersections_real_distinct && morse &&
           saddle_count_matches && centers_on_distinct_nonzero_levels;
  }
};

/// Hypothesis checks for a product of linear factors. Never throws; failures
/// are carried in the report.
AdmissibilityReport check_generic_divide_in_lines(const FactoredPolynomial& f,
                                                  const std::optional<CriticalStructure>& crit,
                                                  const Tolerances& tol = {});

/// Whether a two-factor divide of the given degrees can carry all homology:
/// 0 >= -r_infinity >= da(da-2) + db(db-2).
bool two_factor_classification(int fa_deg, int fb_deg, int r_inf);

}  // namespace pppf
