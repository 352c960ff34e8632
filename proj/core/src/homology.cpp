#include "pppf/homology.hpp"

#include <algorithm>
#include <cmath>

#include "pppf/errors.hpp"
#include "pppf/univariate.hpp"

namespace pppf {

std::string CycleLabel::name() const {
  return (kind == Kind::double_point ? "gamma_" : "delta_") + std::to_string(index);
}

int CycleBasis::label_of_center(int region_index) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i].kind == CycleLabel::Kind::center && labels[i].index == region_index)
      return static_cast<int>(i);
  return -1;
}

CycleBasis cycle_basis_from_divide(const Divide& dv, const CriticalStructure& crit,
                                   const BivariatePolynomial& f) {
  if (!dv.euler_holds)
    throw HomologyNotVisible("divide fails the Euler identity; it does not carry all homology");
  CycleBasis b;
  for (int i = 0; i < dv.k; ++i) b.labels.push_back({CycleLabel::Kind::double_point, i});
  for (int j = 0; j < dv.K; ++j) b.labels.push_back({CycleLabel::Kind::center, j});
  b.mu = dv.k + dv.K;

  // Real base value to the right of every critical value. Rounded so reports
  // are reproducible verbatim.
  double max_re = 0, spread = std::max(crit.value_spread, 1e-3);
  for (const auto& p : crit.points) max_re = std::max(max_re, p.value.real());
  b.t_ref = std::round((max_re + 1.5 * spread) * 1e6) / 1e6;

  // A point on the fiber F = t_ref, sliced along a horizontal line that is
  // not contained in the zero level.
  auto g = f;
  g.add_term(0, 0, -parse_rational(std::to_string(b.t_ref)));
  for (double y0 : {0.0, 1.0 / 3, -0.5, 1.25, -2.0}) {
    auto roots = complex_roots(restrict_y(g, Complex(y0, 0)));
    if (roots.empty()) continue;
    std::sort(roots.begin(), roots.end(),
              [](const Complex& a, const Complex& c) { return std::abs(a.imag()) < std::abs(c.imag()); });
    b.base_x = roots.front();
    b.base_y = y0;
    return b;
  }
  throw SolverFailure("no base point found on the reference fiber");
}

IntersectionForm intersection_form(const Divide& dv, const CycleBasis& basis) {
  IntersectionForm form;
  int mu = basis.mu;
  form.J = QMat(mu, mu);
  auto set_skew = [&](int a, int b, int v) {
    form.J(a, b) = v;
    form.J(b, a) = -v;
  };

  // saddle cycle vs incident region cycles
  for (int r = 0; r < dv.K; ++r) {
    int ld = basis.label_of_center(r);
    for (int v : dv.regions[r].boundary_vertices) {
      int lg = basis.label_of_double_point(v);
      set_skew(lg, ld, dv.regions[r].sign < 0 ? +1 : -1);
    }
  }
  // adjacent region cycles, one unit per shared edge, min meets max with +1
  for (const auto& [pair, count] : dv.shared_edges) {
    const auto& ra = dv.regions[pair.first];
    const auto& rb = dv.regions[pair.second];
    if (ra.sign == rb.sign) continue;  // same-sign regions cannot share an edge of a simple zero level
    int lmin = basis.label_of_center(ra.sign < 0 ? pair.first : pair.second);
    int lmax = basis.label_of_center(ra.sign < 0 ? pair.second : pair.first);
    set_skew(lmin, lmax, count);
  }
  return form;
}

ResidualReport residual_cycles(const IntersectionForm& form, const std::vector<QMat>& operators) {
  ResidualReport rep;
  std::size_t mu = form.J.rows();
  if (operators.empty()) {
    // no constraints: the whole space is fixed
    for (std::size_t i = 0; i < mu; ++i) {
      QVec e(mu, 0);
      e[i] = 1;
      rep.fixed_basis.push_back(e);
    }
  } else {
    QMat stacked(operators.size() * mu, mu);
    for (std::size_t o = 0; o < operators.size(); ++o) {
      QMat diff = operators[o] - QMat::identity(mu);
      for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) stacked(o * mu + i, j) = diff(i, j);
    }
    rep.fixed_basis = stacked.kernel();
  }
  rep.dimension = static_cast<int>(rep.fixed_basis.size());
  for (const auto& v : rep.fixed_basis) {
    QVec jv = form.J * v;
    bool zero = std::all_of(jv.begin(), jv.end(), [](const Rational& q) { return q == 0; });
    rep.in_radical.push_back(zero);
  }
  return rep;
}

}  // namespace pppf
