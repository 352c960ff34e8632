#pragma once

#include <string>
#include <vector>

#include "pppf/divide.hpp"
#include "pppf/qmatrix.hpp"

namespace pppf {

/// Basis cycles of the regular fiber: one per double point (saddle cycle),
/// one per compact region (center cycle).
struct CycleLabel {
  enum class Kind { double_point, center };
  Kind kind;
  int index;  // double-point index or region index in the divide
  std::string name() const;
};

struct CycleBasis {
  std::vector<CycleLabel> labels;  // double points first, then centers
  int mu = 0;
  double t_ref = 0;                 // regular real base value
  Complex base_x, base_y;           // a point on the fiber F = t_ref

  int label_of_double_point(int dp_index) const { return dp_index; }
  int label_of_center(int region_index) const;
};

/// One cycle per double point and per compact region; requires the divide to
/// carry all homology (Euler identity), else HomologyNotVisible.
CycleBasis cycle_basis_from_divide(const Divide& dv, const CriticalStructure& crit,
                                   const BivariatePolynomial& f);

/// Skew integer intersection form on the basis.
///
/// Sign convention: center cycles are oriented counterclockwise on the
/// extremum side of their level; a saddle cycle meets an incident min-region
/// cycle with +1 and an incident max-region cycle with -1; a min-region cycle
/// meets an adjacent max-region cycle with +1 per shared edge. Orbit ranks do
/// not depend on these choices (checked by randomized flips in the tests);
/// the numerical transport oracle pins them for the bundled cases.
struct IntersectionForm {
  QMat J;
};

IntersectionForm intersection_form(const Divide& dv, const CycleBasis& basis);

/// Common fixed subspace of a set of operator matrices, with a flag per basis
/// vector telling whether it pairs to zero with every basis cycle.
struct ResidualReport {
  std::vector<QVec> fixed_basis;
  int dimension = 0;
  std::vector<bool> in_radical;
};

ResidualReport residual_cycles(const IntersectionForm& form, const std::vector<QMat>& operators);

}  // namespace pppf
