#include "pppf/critical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "pppf/errors.hpp"
#include "pppf/univariate.hpp"

namespace pppf {

int CriticalStructure::level_of(int point_index) const {
  for (std::size_t l = 0; l < levels.size(); ++l)
    for (int m : levels[l].members)
      if (m == point_index) return static_cast<int>(l);
  return -1;
}

Rational evaluate_exact(const BivariatePolynomial& f, const Rational& x, const Rational& y) {
  return f.evaluate(x, y);
}

std::array<Rational, 2> gradient_exact(const BivariatePolynomial& f, const Rational& x, const Rational& y) {
  return {f.dx().evaluate(x, y), f.dy().evaluate(x, y)};
}

std::array<Rational, 4> hessian_exact(const BivariatePolynomial& f, const Rational& x, const Rational& y) {
  auto fxx = f.dx().dx(), fxy = f.dx().dy(), fyy = f.dy().dy();
  return {fxx.evaluate(x, y), fxy.evaluate(x, y), fxy.evaluate(x, y), fyy.evaluate(x, y)};
}

std::array<Complex, 2> gradient_at(const BivariatePolynomial& f, const Complex& x, const Complex& y) {
  return {f.dx().evaluate(x, y), f.dy().evaluate(x, y)};
}

std::array<Complex, 4> hessian_at(const BivariatePolynomial& f, const Complex& x, const Complex& y) {
  auto fxx = f.dx().dx(), fxy = f.dx().dy(), fyy = f.dy().dy();
  Complex a = fxx.evaluate(x, y), b = fxy.evaluate(x, y), c = fyy.evaluate(x, y);
  return {a, b, b, c};
}

std::vector<InfinityDirection> directions_at_infinity(const BivariatePolynomial& f) {
  BivariatePolynomial top = f.top_form();
  int d = f.degree();
  if (d <= 0) throw ValidationError("directions_at_infinity: constant polynomial");

  // Dehomogenize: p(s) = top(s, 1). Degree drop at s-infinity encodes the (1:0) direction.
  UniPoly p;
  p.c.assign(d + 1, 0);
  for (const auto& [k, c] : top.terms()) p.c[k.first] = c;
  p.trim();
  int ds = p.degree();
  if (ds < d - 1) throw AtInfinityDegenerate("top form has a multiple root at direction (1:0)");

  // Squarefree check is exact: Res(p, p') != 0.
  if (ds >= 1 && resultant(p, p.derivative()) == 0)
    throw AtInfinityDegenerate("top form has a multiple root");

  std::vector<InfinityDirection> out;
  if (ds == d - 1) {
    InfinityDirection v;
    v.at_y_zero = true;
    v.real = true;
    out.push_back(v);
  }
  int n_real = count_real_roots(p);
  auto roots = complex_roots(p);
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    return std::abs(a.imag()) < std::abs(b.imag());
  });
  for (std::size_t i = 0; i < roots.size(); ++i) {
    InfinityDirection v;
    v.direction = roots[i];
    v.real = static_cast<int>(i) < n_real;
    if (v.real) v.direction = Complex(roots[i].real(), 0.0);
    out.push_back(v);
  }
  if (static_cast<int>(out.size()) != d)
    throw AtInfinityDegenerate("expected d distinct directions at infinity");
  return out;
}

std::vector<Level> cluster_values(const std::vector<Complex>& values, double rel_tol,
                                  bool* well_separated, double* spread_out) {
  double spread = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      spread = std::max(spread, std::abs(values[i] - values[j]));
  if (spread == 0.0) spread = 1.0;
  if (spread_out) *spread_out = spread;
  double tol = rel_tol * spread;

  // Union-find linkage on pairwise distance.
  std::vector<int> parent(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (std::abs(values[i] - values[j]) < tol) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));

  std::map<int, Level> groups;
  for (std::size_t i = 0; i < values.size(); ++i) groups[find(static_cast<int>(i))].members.push_back(static_cast<int>(i));
  std::vector<Level> levels;
  for (auto& [root, lv] : groups) {
    Complex mean = 0;
    for (int m : lv.members) mean += values[m];
    lv.value = mean / static_cast<double>(lv.members.size());
    levels.push_back(std::move(lv));
  }
  std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });

  if (well_separated) {
    *well_separated = true;
    for (std::size_t i = 0; i < levels.size(); ++i)
      for (std::size_t j = i + 1; j < levels.size(); ++j)
        if (std::abs(levels[i].value - levels[j].value) <= 10.0 * tol) *well_separated = false;
  }
  return levels;
}

namespace {

struct NewtonResult {
  Complex x, y;
  double residual;
  bool converged;
};

NewtonResult polish(const BivariatePolynomial& fx, const BivariatePolynomial& fy,
                    const BivariatePolynomial& fxx, const BivariatePolynomial& fxy,
                    const BivariatePolynomial& fyy, Complex x, Complex y, double tol) {
  double res = 1e300;
  for (int it = 0; it < 60; ++it) {
    Complex gx = fx.evaluate(x, y), gy = fy.evaluate(x, y);
    res = std::abs(gx) + std::abs(gy);
    if (res < tol) return {x, y, res, true};
    Complex a = fxx.evaluate(x, y), b = fxy.evaluate(x, y), c = fyy.evaluate(x, y);
    Complex det = a * c - b * b;
    if (std::abs(det) < 1e-280) break;
    Complex dx = (c * gx - b * gy) / det;
    Complex dy = (a * gy - b * gx) / det;
    x -= dx;
    y -= dy;
    if (std::abs(dx) + std::abs(dy) > 1e6) break;  // diverging
  }
  Complex gx = fx.evaluate(x, y), gy = fy.evaluate(x, y);
  res = std::abs(gx) + std::abs(gy);
  return {x, y, res, res < tol};
}

// Candidate (x,y) pairs from eliminating one variable.
std::vector<std::pair<Complex, Complex>> candidates_via_x_elimination(
    const BivariatePolynomial& fx, const BivariatePolynomial& fy) {
  std::vector<std::pair<Complex, Complex>> cands;
  UniPoly rx = resultant_y(fx, fy);
  if (rx.is_zero()) return cands;
  for (const Complex& x0 : complex_roots(rx)) {
    for (const Complex& y0 : complex_roots(restrict_x(fx, x0))) cands.emplace_back(x0, y0);
    for (const Complex& y0 : complex_roots(restrict_x(fy, x0))) cands.emplace_back(x0, y0);
  }
  return cands;
}

}  // namespace

CriticalStructure critical_points(const BivariatePolynomial& f, const Tolerances& tol) {
  int d = f.degree();
  if (d <= 0) throw ValidationError("critical_points: constant polynomial");

  CriticalStructure cs;
  cs.at_infinity = directions_at_infinity(f);  // throws when degenerate at infinity

  BivariatePolynomial fx = f.dx(), fy = f.dy();
  BivariatePolynomial fxx = fx.dx(), fxy = fx.dy(), fyy = fy.dy();

  // Coefficient scale, used to normalize residual and degeneracy thresholds.
  double coeff_scale = 0.0;
  for (const auto& [k, c] : f.terms()) coeff_scale = std::max(coeff_scale, std::abs(to_double(c)));
  if (coeff_scale == 0.0) coeff_scale = 1.0;
  const double residual_tol = tol.solver_residual * coeff_scale;
  const int expected = (d - 1) * (d - 1);

  // Gather candidates; retry with swapped elimination and sheared coordinates
  // until the expected count is reached (deflation attempts).
  std::vector<CriticalPoint> pts;
  auto absorb = [&](const std::vector<std::pair<Complex, Complex>>& cands) {
    for (const auto& [cx, cy] : cands) {
      NewtonResult nr = polish(fx, fy, fxx, fxy, fyy, cx, cy, residual_tol);
      if (!nr.converged) continue;
      double scale = 1.0 + std::abs(nr.x) + std::abs(nr.y);
      bool dup = false;
      for (const auto& p : pts)
        if (std::abs(p.x - nr.x) + std::abs(p.y - nr.y) < tol.dedup * scale) { dup = true; break; }
      if (dup) continue;
      CriticalPoint p;
      p.x = nr.x;
      p.y = nr.y;
      pts.push_back(p);
    }
  };

  absorb(candidates_via_x_elimination(fx, fy));
  if (static_cast<int>(pts.size()) < expected) absorb(candidates_via_x_elimination(fy, fx));
  if (static_cast<int>(pts.size()) < expected) {
    for (Rational shear : {Rational(1), Rational(-1), Rational(1, 2), Rational(2)}) {
      // Solve for g(x,y) = f(x + shear*y, y), then map back.
      BivariatePolynomial g = f.affine_substitute(1, shear, 0, 0, 1, 0);
      BivariatePolynomial gx = g.dx(), gy = g.dy();
      auto cands = candidates_via_x_elimination(gx, gy);
      double sh = to_double(shear);
      std::vector<std::pair<Complex, Complex>> mapped;
      mapped.reserve(cands.size());
      for (auto& [cx, cy] : cands) mapped.emplace_back(cx + sh * cy, cy);
      absorb(mapped);
      if (static_cast<int>(pts.size()) >= expected) break;
    }
  }

  // Classify.
  std::vector<Complex> values;
  bool any_degenerate = false;
  double hess_scale = std::pow(coeff_scale * d, 2.0);
  for (auto& p : pts) {
    p.value = f.evaluate(p.x, p.y);
    Complex a = fxx.evaluate(p.x, p.y), b = fxy.evaluate(p.x, p.y), c = fyy.evaluate(p.x, p.y);
    p.hessian_det = a * c - b * b;
    if (std::abs(p.hessian_det) < tol.degeneracy * hess_scale) {
      p.morse_type = MorseType::degenerate;
      any_degenerate = true;
    } else if (!p.is_real()) {
      p.morse_type = MorseType::complex_point;
    } else {
      p.morse_type = p.hessian_det.real() < 0 ? MorseType::saddle : MorseType::center;
    }
    values.push_back(p.value);
  }

  if (static_cast<int>(pts.size()) != expected) {
    if (any_degenerate || static_cast<int>(pts.size()) > expected) {
      cs.morse = false;  // Morse hypothesis itself failed; report rather than throw
    } else {
      throw SolverFailure("found " + std::to_string(pts.size()) + " critical points, expected " +
                          std::to_string(expected));
    }
  }
  if (any_degenerate) cs.morse = false;

  // Deterministic order: by value, then location.
  std::vector<int> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    auto ki = std::array<double, 4>{pts[i].value.real(), pts[i].value.imag(), pts[i].x.real(), pts[i].y.real()};
    auto kj = std::array<double, 4>{pts[j].value.real(), pts[j].value.imag(), pts[j].x.real(), pts[j].y.real()};
    return ki < kj;
  });
  cs.points.reserve(pts.size());
  for (int i : order) cs.points.push_back(pts[i]);

  values.clear();
  for (const auto& p : cs.points) values.push_back(p.value);
  cs.levels = cluster_values(values, tol.cluster_rel, &cs.levels_well_separated, &cs.value_spread);
  return cs;
}

}  // namespace pppf
