#pragma once

#include <map>
#include <vector>

#include "pppf/oval.hpp"

namespace pppf {

/// Line integral of omega over the traced oval.
double abelian_integral(const OvalTrace& oval, const OneForm& omega);

/// Length-2 iterated integral: the loop integral of Psi_k psi_j, where Psi_k
/// is the cumulative primitive of psi_k along the oval from its base point.
double iterated_integral(const OvalTrace& oval, const OneForm& psi_k, const OneForm& psi_j);

/// Length-3 iterated integral: loop integral of (int psi_k psi_j) psi_m.
double iterated_integral3(const OvalTrace& oval, const OneForm& psi_k, const OneForm& psi_j,
                          const OneForm& psi_m);

/// First-return level difference of the perturbed foliation dF + eps omega,
/// measured through F on the transversal; computed as an integral along the
/// perturbed orbit to avoid endpoint cancellation.
double displacement_map(const BivariatePolynomial& f, const OneForm& omega, double t, double eps,
                        const Transversal& section, const Tolerances& tol = {}, double max_time = 500.0);

struct DisplacementExpansion {
  double M1 = 0, M2 = 0;
  int first_nonzero_order = 0;  // 0 = identically zero at tested orders
  bool consistent = true;
  std::vector<double> epsilons;
  std::vector<double> displacements;
};

/// Polynomial fit of the displacement in eps (no constant term); M1 and M2
/// are the first two coefficients, cross-validated on epsilon sub-ladders.
/// Throws InconsistentOrder when the sub-ladder estimates disagree badly.
DisplacementExpansion expand_displacement(const BivariatePolynomial& f, const OneForm& omega, double t,
                                          const std::vector<double>& epsilons, const Transversal& section,
                                          const Tolerances& tol = {}, double max_time = 500.0,
                                          double m1_floor = 1e-8, double m2_floor = 1e-6);

struct MelnikovSeries {
  std::vector<double> t_grid;
  std::vector<double> M1_line;   // paper sign: M1 = -loop integral of omega
  std::vector<double> M1_disp;   // from the displacement expansion
  std::vector<double> M2;
  std::map<std::pair<int, int>, std::vector<double>> iterated;  // (k,j) -> I_{k,j}(t)
  std::vector<double> epsilons_used;
};

/// Sweeps a t-grid: M1 both ways, M2, and all I_{k,j} for the given psi list.
MelnikovSeries melnikov_series(const BivariatePolynomial& f, const OneForm& omega,
                               const std::vector<OneForm>& psis, const std::vector<double>& t_grid,
                               const std::vector<double>& epsilons, const Transversal& section,
                               const Tolerances& tol = {});

}  // namespace pppf
