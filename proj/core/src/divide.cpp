#include "pppf/divide.hpp"

#include <algorithm>
#include <cmath>

#include "pppf/errors.hpp"
#include "pppf/univariate.hpp"

namespace pppf {

namespace {

double coeff(const BivariatePolynomial& p, int i, int j) {
  auto it = p.terms().find({i, j});
  return it == p.terms().end() ? 0.0 : to_double(it->second);
}

Rational coeff_q(const BivariatePolynomial& p, int i, int j) {
  auto it = p.terms().find({i, j});
  return it == p.terms().end() ? Rational(0) : it->second;
}

}  // namespace

FactorCurve::FactorCurve(const BivariatePolynomial& f) {
  int d = f.degree();
  if (d == 1) {
    kind_ = Kind::line;
    double a = coeff(f, 1, 0), b = coeff(f, 0, 1), c = coeff(f, 0, 0);
    if (std::abs(b) >= std::abs(a)) {
      p0x_ = 0; p0y_ = -c / b;
    } else {
      p0x_ = -c / a; p0y_ = 0;
    }
    double n = std::hypot(a, b);
    dirx_ = b / n;
    diry_ = -a / n;
    return;
  }
  if (d != 2) throw FactorDegreeTooHigh("factor degree " + std::to_string(d));
  double A = coeff(f, 2, 0), B = coeff(f, 1, 1), C = coeff(f, 0, 2);
  double D = coeff(f, 1, 0), E = coeff(f, 0, 1);
  double det = A * C - B * B / 4.0;
  if (std::abs(det) < 1e-14) throw NonTransverseIntersection("parabolic or singular conic factor");
  // center: 2M c = -(D, E)
  cx_ = (-D * C + E * B / 2.0) / (2.0 * det);
  cy_ = (-E * A + D * B / 2.0) / (2.0 * det);
  double kappa = -f.evaluate(Complex(cx_, 0), Complex(cy_, 0)).real();
  // principal frame of M = [[A, B/2], [B/2, C]]
  double half_tr = (A + C) / 2.0;
  double diff = (A - C) / 2.0;
  double rad = std::hypot(diff, B / 2.0);
  double l1 = half_tr + rad, l2 = half_tr - rad;
  double e1x, e1y;
  if (std::abs(B) > 1e-15) {
    e1x = l1 - C; e1y = B / 2.0;
  } else if (A >= C) {
    e1x = 1; e1y = 0;
  } else {
    e1x = 0; e1y = 1;
  }
  double n1 = std::hypot(e1x, e1y);
  e1x /= n1; e1y /= n1;
  double e2x = -e1y, e2y = e1x;

  if (l1 * l2 > 0) {
    kind_ = Kind::ellipse;
    if (kappa / l1 <= 0) { kind_ = Kind::empty; return; }  // imaginary ellipse
    r1_ = std::sqrt(kappa / l1);
    r2_ = std::sqrt(kappa / l2);
    e1x_ = e1x; e1y_ = e1y; e2x_ = e2x; e2y_ = e2y;
    return;
  }
  kind_ = Kind::hyperbola;
  if (std::abs(kappa) < 1e-14) throw NonTransverseIntersection("conic factor degenerates to crossing lines");
  // order axes so the cosh axis has lambda*kappa > 0
  if (l1 * kappa > 0) {
    r1_ = std::sqrt(kappa / l1);
    r2_ = std::sqrt(-kappa / l2);
    e1x_ = e1x; e1y_ = e1y; e2x_ = e2x; e2y_ = e2y;
  } else {
    r1_ = std::sqrt(kappa / l2);
    r2_ = std::sqrt(-kappa / l1);
    e1x_ = e2x; e1y_ = e2y; e2x_ = -e1x; e2y_ = -e1y;
  }
}

int FactorCurve::branch_count() const {
  switch (kind_) {
    case Kind::line: return 1;
    case Kind::ellipse: return 1;
    case Kind::hyperbola: return 2;
    case Kind::empty: return 0;
  }
  return 0;
}

bool FactorCurve::closed(int) const { return kind_ == Kind::ellipse; }

std::array<double, 2> FactorCurve::point(int branch, double t) const {
  switch (kind_) {
    case Kind::line:
      return {p0x_ + t * dirx_, p0y_ + t * diry_};
    case Kind::ellipse: {
      double u = r1_ * std::cos(t), v = r2_ * std::sin(t);
      return {cx_ + u * e1x_ + v * e2x_, cy_ + u * e1y_ + v * e2y_};
    }
    case Kind::hyperbola: {
      double s = branch == 0 ? 1.0 : -1.0;
      double u = s * r1_ * std::cosh(t), v = r2_ * std::sinh(t);
      return {cx_ + u * e1x_ + v * e2x_, cy_ + u * e1y_ + v * e2y_};
    }
    case Kind::empty: break;
  }
  return {0, 0};
}

std::pair<int, double> FactorCurve::locate(double x, double y) const {
  switch (kind_) {
    case Kind::line:
      return {0, (x - p0x_) * dirx_ + (y - p0y_) * diry_};
    case Kind::ellipse: {
      double u = (x - cx_) * e1x_ + (y - cy_) * e1y_;
      double v = (x - cx_) * e2x_ + (y - cy_) * e2y_;
      return {0, std::atan2(v / r2_, u / r1_)};
    }
    case Kind::hyperbola: {
      double u = (x - cx_) * e1x_ + (y - cy_) * e1y_;
      double v = (x - cx_) * e2x_ + (y - cy_) * e2y_;
      return {u >= 0 ? 0 : 1, std::asinh(v / r2_)};
    }
    case Kind::empty: break;
  }
  return {0, 0};
}

bool euler_check(int degree, int k, int K, int r_infinity) {
  int mu = (degree - 1) * (degree - 1);
  return mu == k + K && mu == 1 + 2 * k - r_infinity;
}

bool two_factor_classification(int fa_deg, int fb_deg, int r_inf) {
  if (fa_deg < 1 || fb_deg < 1) throw ValidationError("two_factor_classification: degrees must be >= 1");
  return fa_deg * (fa_deg - 2) + fb_deg * (fb_deg - 2) <= -r_inf && r_inf >= 0;
}

namespace {

struct PairIntersections {
  std::vector<std::pair<Complex, Complex>> points;
};

// All Bezout intersections of two factors, Newton-polished on the pair system.
PairIntersections intersect_factors(const BivariatePolynomial& fa, const BivariatePolynomial& fb,
                                    const Tolerances& tol) {
  PairIntersections out;
  int da = fa.degree(), db = fb.degree();

  if (da == 1 && db == 1) {
    // exact rational solve
    Rational a1 = coeff_q(fa, 1, 0), b1 = coeff_q(fa, 0, 1), c1 = coeff_q(fa, 0, 0);
    Rational a2 = coeff_q(fb, 1, 0), b2 = coeff_q(fb, 0, 1), c2 = coeff_q(fb, 0, 0);
    Rational det = a1 * b2 - a2 * b1;
    if (det == 0) return out;  // parallel, meet at infinity only
    Rational x = (-c1 * b2 + c2 * b1) / det;
    Rational y = (-a1 * c2 + a2 * c1) / det;
    out.points.emplace_back(Complex(to_double(x), 0), Complex(to_double(y), 0));
    return out;
  }

  auto fax = fa.dx(), fay = fa.dy(), fbx = fb.dx(), fby = fb.dy();
  auto polish = [&](Complex x, Complex y) -> std::optional<std::pair<Complex, Complex>> {
    for (int it = 0; it < 50; ++it) {
      Complex ra = fa.evaluate(x, y), rb = fb.evaluate(x, y);
      if (std::abs(ra) + std::abs(rb) < 1e-13) return std::make_pair(x, y);
      Complex j11 = fax.evaluate(x, y), j12 = fay.evaluate(x, y);
      Complex j21 = fbx.evaluate(x, y), j22 = fby.evaluate(x, y);
      Complex det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-280) return std::nullopt;
      x -= (j22 * ra - j12 * rb) / det;
      y -= (j11 * rb - j21 * ra) / det;
    }
    return std::nullopt;
  };

  UniPoly rx = resultant_y(fa, fb);
  if (rx.is_zero()) throw NonTransverseIntersection("factors share a component");
  for (const Complex& x0 : complex_roots(rx)) {
    for (const Complex& y0 : complex_roots(restrict_x(fa, x0)))
      if (auto p = polish(x0, y0)) out.points.push_back(*p);
    for (const Complex& y0 : complex_roots(restrict_x(fb, x0)))
      if (auto p = polish(x0, y0)) out.points.push_back(*p);
  }
  // dedup
  std::vector<std::pair<Complex, Complex>> uniq;
  for (const auto& p : out.points) {
    double scale = 1.0 + std::abs(p.first) + std::abs(p.second);
    bool dup = false;
    for (const auto& q : uniq)
      if (std::abs(p.first - q.first) + std::abs(p.second - q.second) < tol.dedup * scale) { dup = true; break; }
    if (!dup) uniq.push_back(p);
  }
  if (static_cast<int>(uniq.size()) != da * db)
    throw NonTransverseIntersection("expected " + std::to_string(da * db) + " intersections, found " +
                                    std::to_string(uniq.size()));
  out.points = std::move(uniq);
  return out;
}

// Gradient-flow point location: follow +/- grad F from q to the extremum of
// its region. Returns the region index, -1 for an unbounded region, -2 when
// ambiguous (separatrix grazing, retry with a different probe).
int locate_region(const PolyD& Fd, const PolyD& Fx, const PolyD& Fy, double qx, double qy,
                  const std::vector<DivideRegion>& regions, double escape_radius) {
  double f0 = Fd.eval(qx, qy);
  if (f0 == 0) return -2;
  double dir = f0 > 0 ? 1.0 : -1.0;
  double px = qx, py = qy;
  double prev_f = dir * f0;
  for (int step = 0; step < 40000; ++step) {
    if (std::hypot(px, py) > escape_radius) return -1;
    for (std::size_t r = 0; r < regions.size(); ++r) {
      double cap = 0.03 * (1.0 + std::hypot(regions[r].cx, regions[r].cy));
      if (std::hypot(px - regions[r].cx, py - regions[r].cy) < cap) {
        if (regions[r].sign == (dir > 0 ? 1 : -1)) return static_cast<int>(r);
        return -2;
      }
    }
    double gx = Fx.eval(px, py), gy = Fy.eval(px, py);
    double gn = std::hypot(gx, gy);
    if (gn < 1e-13) return -2;  // parked at a saddle
    double dt = 0.01 * (1.0 + std::hypot(px, py)) / gn;
    bool moved = false;
    for (int halve = 0; halve < 50; ++halve) {
      double nx = px + dir * dt * gx, ny = py + dir * dt * gy;
      double nf = dir * Fd.eval(nx, ny);
      if (nf > prev_f) {
        px = nx; py = ny; prev_f = nf;
        moved = true;
        break;
      }
      dt /= 2;
    }
    if (!moved) return -2;  // wedged between the extremum and the capture ball
  }
  return -2;
}

}  // namespace

Divide build_divide(const FactoredPolynomial& f, const CriticalStructure& crit, const Tolerances& tol) {
  Divide dv;
  const auto& F = f.expanded;
  dv.degree = F.degree();
  for (const auto& factor : f.factors)
    if (factor.degree() > 2) throw FactorDegreeTooHigh("factor of degree " + std::to_string(factor.degree()));

  // Pairwise intersections; realness is decided by imaginary magnitude after
  // polishing (exact for lines; conic pairs were polished to ~1e-13).
  for (std::size_t a = 0; a < f.factors.size(); ++a) {
    for (std::size_t b = a + 1; b < f.factors.size(); ++b) {
      auto pts = intersect_factors(f.factors[a], f.factors[b], tol);
      for (const auto& [px, py] : pts.points) {
        double scale = 1.0 + std::abs(px) + std::abs(py);
        if (std::abs(px.imag()) < 1e-8 * scale && std::abs(py.imag()) < 1e-8 * scale) {
          dv.double_points.push_back({px.real(), py.real(), static_cast<int>(a), static_cast<int>(b)});
        } else {
          dv.complex_intersections.push_back({px, py, static_cast<int>(a), static_cast<int>(b)});
        }
      }
    }
  }
  std::sort(dv.double_points.begin(), dv.double_points.end(), [](const DoublePoint& p, const DoublePoint& q) {
    return std::pair(p.x, p.y) < std::pair(q.x, q.y);
  });
  dv.k = static_cast<int>(dv.double_points.size());

  // Transversality at the real double points: the pair Jacobian must be
  // regular, which for the full product is the Morse condition at a saddle.
  for (const auto& dp : dv.double_points) {
    auto ja = gradient_at(f.factors[dp.factor_a], Complex(dp.x, 0), Complex(dp.y, 0));
    auto jb = gradient_at(f.factors[dp.factor_b], Complex(dp.x, 0), Complex(dp.y, 0));
    double det = std::abs(ja[0] * jb[1] - ja[1] * jb[0]);
    double scale = std::max({std::abs(ja[0]), std::abs(ja[1]), std::abs(jb[0]), std::abs(jb[1]), 1e-30});
    if (det < 1e-9 * scale * scale) throw NonTransverseIntersection("tangential factor crossing");
  }

  // Regions anchored at the real centers.
  for (std::size_t i = 0; i < crit.points.size(); ++i) {
    const auto& p = crit.points[i];
    if (p.morse_type != MorseType::center) continue;
    DivideRegion r;
    r.crit_index = static_cast<int>(i);
    r.cx = p.x.real();
    r.cy = p.y.real();
    r.sign = p.value.real() > 0 ? 1 : -1;
    dv.regions.push_back(r);
  }
  std::sort(dv.regions.begin(), dv.regions.end(), [&](const DivideRegion& a, const DivideRegion& b) {
    const auto& va = crit.points[a.crit_index].value;
    const auto& vb = crit.points[b.crit_index].value;
    auto ka = std::array<double, 4>{va.real(), va.imag(), a.cx, a.cy};
    auto kb = std::array<double, 4>{vb.real(), vb.imag(), b.cx, b.cy};
    return ka < kb;
  });
  dv.K = static_cast<int>(dv.regions.size());

  // Real points at infinity of the zero level: real directions per factor top form.
  dv.r_infinity = 0;
  for (const auto& factor : f.factors) {
    UniPoly top;
    int d = factor.degree();
    top.c.assign(d + 1, 0);
    BivariatePolynomial tf = factor.top_form();
    for (const auto& [kk, c] : tf.terms()) top.c[kk.first] = c;
    top.trim();
    int drop = d - std::max(top.degree(), 0);
    dv.r_infinity += count_real_roots(top) + (drop >= 1 ? 1 : 0);
  }

  // Edges along each factor curve between consecutive incident double points.
  for (std::size_t fi = 0; fi < f.factors.size(); ++fi) {
    FactorCurve curve(f.factors[fi]);
    if (curve.branch_count() == 0) continue;
    for (int br = 0; br < curve.branch_count(); ++br) {
      std::vector<std::pair<double, int>> params;  // (t, vertex index)
      for (std::size_t v = 0; v < dv.double_points.size(); ++v) {
        const auto& dp = dv.double_points[v];
        if (dp.factor_a != static_cast<int>(fi) && dp.factor_b != static_cast<int>(fi)) continue;
        auto [b, t] = curve.locate(dp.x, dp.y);
        if (b != br) continue;
        params.emplace_back(t, static_cast<int>(v));
      }
      std::sort(params.begin(), params.end());
      if (curve.closed(br)) {
        if (params.empty()) {
          DivideEdge e;
          e.factor = static_cast<int>(fi);
          e.branch = br;
          e.v_from = e.v_to = -2;
          e.t_from = 0;
          e.t_to = 2 * M_PI;
          e.bounded = true;
          dv.edges.push_back(e);
        } else {
          for (std::size_t i = 0; i < params.size(); ++i) {
            std::size_t j = (i + 1) % params.size();
            DivideEdge e;
            e.factor = static_cast<int>(fi);
            e.branch = br;
            e.v_from = params[i].second;
            e.v_to = params[j].second;
            e.t_from = params[i].first;
            e.t_to = j == 0 ? params[j].first + 2 * M_PI : params[j].first;
            e.bounded = true;
            dv.edges.push_back(e);
          }
        }
      } else {
        // open branch: rays at both ends
        DivideEdge lead;
        lead.factor = static_cast<int>(fi);
        lead.branch = br;
        lead.v_from = -1;
        lead.v_to = params.empty() ? -1 : params.front().second;
        lead.t_from = (params.empty() ? 0.0 : params.front().first) - 10.0;
        lead.t_to = params.empty() ? 10.0 : params.front().first;
        lead.bounded = false;
        dv.edges.push_back(lead);
        for (std::size_t i = 0; i + 1 < params.size(); ++i) {
          DivideEdge e;
          e.factor = static_cast<int>(fi);
          e.branch = br;
          e.v_from = params[i].second;
          e.v_to = params[i + 1].second;
          e.t_from = params[i].first;
          e.t_to = params[i + 1].first;
          e.bounded = true;
          dv.edges.push_back(e);
        }
        if (!params.empty()) {
          DivideEdge tail;
          tail.factor = static_cast<int>(fi);
          tail.branch = br;
          tail.v_from = params.back().second;
          tail.v_to = -1;
          tail.t_from = params.back().first;
          tail.t_to = params.back().first + 10.0;
          tail.bounded = false;
          dv.edges.push_back(tail);
        }
      }
    }
  }

  // Side regions of bounded edges, via gradient flow from midpoint probes.
  // (An unbounded edge cannot lie on the boundary of a compact region.)
  PolyD Fd(F), Fx(F.dx()), Fy(F.dy());
  double extent = 1.0;
  for (const auto& dp : dv.double_points) extent = std::max(extent, std::hypot(dp.x, dp.y));
  for (const auto& r : dv.regions) extent = std::max(extent, std::hypot(r.cx, r.cy));
  double escape = 6.0 * extent + 5.0;

  for (auto& e : dv.edges) {
    if (!e.bounded) continue;
    FactorCurve curve(f.factors[e.factor]);
    auto eval_grad = [&](double x, double y) {
      auto g = gradient_at(f.factors[e.factor], Complex(x, 0), Complex(y, 0));
      return std::array<double, 2>{g[0].real(), g[1].real()};
    };
    double tm = 0.5 * (e.t_from + e.t_to);
    auto m = curve.point(e.branch, tm);
    auto g = eval_grad(m[0], m[1]);
    double gn = std::hypot(g[0], g[1]);
    if (gn == 0) continue;
    double nx = g[0] / gn, ny = g[1] / gn;
    for (int side = 0; side < 2; ++side) {
      double s = side == 0 ? 1.0 : -1.0;
      int found = -2;
      double h = 1e-4 * (1.0 + std::hypot(m[0], m[1]));
      for (int attempt = 0; attempt < 4 && found == -2; ++attempt) {
        found = locate_region(Fd, Fx, Fy, m[0] + s * h * nx, m[1] + s * h * ny, dv.regions, escape);
        h /= 3.0;
      }
      if (found == -2) found = -1;
      (side == 0 ? e.side_pos : e.side_neg) = found;
    }
    if (e.side_pos >= 0) {
      auto& bv = dv.regions[e.side_pos].boundary_vertices;
      for (int v : {e.v_from, e.v_to})
        if (v >= 0 && std::find(bv.begin(), bv.end(), v) == bv.end()) bv.push_back(v);
    }
    if (e.side_neg >= 0 && e.side_neg != e.side_pos) {
      auto& bv = dv.regions[e.side_neg].boundary_vertices;
      for (int v : {e.v_from, e.v_to})
        if (v >= 0 && std::find(bv.begin(), bv.end(), v) == bv.end()) bv.push_back(v);
    }
    if (e.side_pos >= 0 && e.side_neg >= 0) {
      auto key = std::minmax(e.side_pos, e.side_neg);
      dv.shared_edges[{key.first, key.second}] += 1;
    }
  }
  for (auto& r : dv.regions) std::sort(r.boundary_vertices.begin(), r.boundary_vertices.end());

  dv.euler_holds = euler_check(dv.degree, dv.k, dv.K, dv.r_infinity);
  return dv;
}

AdmissibilityReport check_generic_divide_in_lines(const FactoredPolynomial& f,
                                                  const std::optional<CriticalStructure>& crit_in,
                                                  const Tolerances& tol) {
  AdmissibilityReport rep;
  int d = static_cast<int>(f.factors.size());
  rep.all_factors_linear = true;
  for (const auto& factor : f.factors)
    if (factor.degree() != 1) rep.all_factors_linear = false;
  if (!rep.all_factors_linear) return rep;

  // d distinct real directions: pairwise non-proportional top parts, exact.
  rep.distinct_real_infinity = true;
  for (int a = 0; a < d && rep.distinct_real_infinity; ++a)
    for (int b = a + 1; b < d; ++b) {
      Rational cross = coeff_q(f.factors[a], 1, 0) * coeff_q(f.factors[b], 0, 1) -
                       coeff_q(f.factors[a], 0, 1) * coeff_q(f.factors[b], 1, 0);
      if (cross == 0) { rep.distinct_real_infinity = false; break; }
    }

  // all d(d-1)/2 intersections exist and are pairwise distinct, exact.
  if (rep.distinct_real_infinity) {
    std::vector<std::pair<Rational, Rational>> pts;
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        Rational a1 = coeff_q(f.factors[a], 1, 0), b1 = coeff_q(f.factors[a], 0, 1), c1 = coeff_q(f.factors[a], 0, 0);
        Rational a2 = coeff_q(f.factors[b], 1, 0), b2 = coeff_q(f.factors[b], 0, 1), c2 = coeff_q(f.factors[b], 0, 0);
        Rational det = a1 * b2 - a2 * b1;
        pts.emplace_back((-c1 * b2 + c2 * b1) / det, (-a1 * c2 + a2 * c1) / det);
      }
    rep.intersections_real_distinct = true;
    for (std::size_t i = 0; i < pts.size() && rep.intersections_real_distinct; ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (pts[i] == pts[j]) { rep.intersections_real_distinct = false; break; }
  }
  if (!rep.intersections_real_distinct) return rep;

  CriticalStructure cs;
  try {
    cs = crit_in ? *crit_in : critical_points(f.expanded, tol);
  } catch (const Error&) {
    return rep;  // solver-level failure: not admissible, report what we know
  }
  rep.morse = cs.morse;

  int saddles_on_zero = 0, centers = 0;
  std::vector<Complex> center_values;
  for (const auto& p : cs.points) {
    if (p.morse_type == MorseType::saddle && std::abs(p.value) < 1e-9) ++saddles_on_zero;
    if (p.morse_type == MorseType::center) {
      ++centers;
      center_values.push_back(p.value);
    }
  }
  rep.saddles = saddles_on_zero;
  rep.centers = centers;
  rep.saddle_count_matches = saddles_on_zero == d * (d - 1) / 2;

  bool distinct_nonzero = centers == (d - 1) * (d - 2) / 2;
  for (std::size_t i = 0; i < center_values.size() && distinct_nonzero; ++i) {
    if (std::abs(center_values[i]) < 1e-9) distinct_nonzero = false;
    for (std::size_t j = i + 1; j < center_values.size(); ++j)
      if (std::abs(center_values[i] - center_values[j]) < tol.cluster_rel * std::max(1.0, cs.value_spread))
        distinct_nonzero = false;
  }
  rep.centers_on_distinct_nonzero_levels = distinct_nonzero;
  return rep;
}

}  // namespace pppf
