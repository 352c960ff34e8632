#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "pppf/polynomial.hpp"
#include "pppf/tolerances.hpp"

namespace pppf {

/// Section transversal to the oval family: a ray from an enclosing center.
struct Transversal {
  std::array<double, 2> center{0, 0};
  std::array<double, 2> direction{1, 0};
};

struct OvalSample {
  double tau;        // time along the Hamiltonian flow
  double x, y;
  double vx, vy;     // field at the (projected) sample
};

/// Closed orbit of the Hamiltonian field (dF/dy, -dF/dx) at level t, sampled
/// adaptively and projected back onto F = t at every step.
struct OvalTrace {
  double t = 0;
  double period = 0;
  std::vector<OvalSample> samples;   // first sample on the transversal; last = return point
  double closure_error = 0;
  double energy_error = 0;           // max |F - t| over samples
  int orientation = 0;               // +1 counterclockwise, -1 clockwise
  Transversal section;

  const OvalSample& base_point() const { return samples.front(); }
};

OvalTrace trace_oval(const BivariatePolynomial& f, double t, const Transversal& section,
                     const Tolerances& tol = {}, double max_time = 500.0, double max_step = 0.01);

/// Same closed curve with the base point moved to the given sample index.
OvalTrace with_base_at(const OvalTrace& oval, std::size_t sample_index);

/// Composite quadrature of a one-form along the trace: cubic Hermite arcs
/// through the samples, 4-point Gauss per arc.
double integrate_oneform(const OvalTrace& oval, const OneForm& omega);

/// Prefix integrals: value of int_base^{sample_i} omega for every i.
std::vector<double> cumulative_oneform(const OvalTrace& oval, const OneForm& omega);

}  // namespace pppf
