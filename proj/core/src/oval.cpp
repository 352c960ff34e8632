#include "pppf/oval.hpp"

#include <algorithm>
#include <cmath>

#include "pppf/errors.hpp"

namespace pppf {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

template <std::size_t N>
using State = std::array<double, N>;

// One adaptive DP5(4) attempt; returns the error estimate and writes the
// 5th-order solution and the end-point derivative (FSAL).
template <std::size_t N, class Field>
double dp_step(const Field& f, const State<N>& y0, const State<N>& k1, double h, State<N>& out,
               State<N>& k_end) {
  State<N> tmp, k2, k3, k4, k5, k6;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y0[i] + h * A21 * k1[i];
  k2 = f(tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y0[i] + h * (A31 * k1[i] + A32 * k2[i]);
  k3 = f(tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y0[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
  k4 = f(tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y0[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
  k5 = f(tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y0[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
  k6 = f(tmp);
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y0[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
  k_end = f(out);
  double err = 0;
  for (std::size_t i = 0; i < N; ++i) {
    double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k_end[i]);
    double sc = 1.0 + std::max(std::abs(y0[i]), std::abs(out[i]));
    err = std::max(err, std::abs(e) / sc);
  }
  return err;
}

}  // namespace

OvalTrace trace_oval(const BivariatePolynomial& f, double t, const Transversal& section,
                     const Tolerances& tol, double max_time, double max_step) {
  PolyD F(f), Fx(f.dx()), Fy(f.dy());
  const double cx = section.center[0], cy = section.center[1];
  double ulen = std::hypot(section.direction[0], section.direction[1]);
  if (ulen == 0) throw ValidationError("trace_oval: zero transversal direction");
  const double ux = section.direction[0] / ulen, uy = section.direction[1] / ulen;

  // Start point: first root of F(c + s u) = t along the ray.
  double s0 = -1;
  {
    double prev = F.eval(cx, cy) - t;
    if (prev == 0) throw NoIntersection("transversal anchored on the fiber itself");
    double step = 1e-3;
    double s = 0;
    for (int it = 0; it < 4000 && s < 1e3; ++it) {
      double sn = s + step;
      double val = F.eval(cx + sn * ux, cy + sn * uy) - t;
      if (std::signbit(val) != std::signbit(prev)) {
        double lo = s, hi = sn;
        for (int b = 0; b < 200; ++b) {
          double mid = (lo + hi) / 2;
          double vm = F.eval(cx + mid * ux, cy + mid * uy) - t;
          (std::signbit(vm) == std::signbit(prev) ? lo : hi) = mid;
        }
        s0 = (lo + hi) / 2;
        break;
      }
      prev = val;
      s = sn;
      step = std::min(step * 1.3, 0.05);
    }
    if (s0 < 0) throw NoIntersection("the ray does not meet the fiber F = t");
  }

  auto project = [&](State<2>& p) {
    for (int it = 0; it < 3; ++it) {
      double r = F.eval(p[0], p[1]) - t;
      double gx = Fx.eval(p[0], p[1]), gy = Fy.eval(p[0], p[1]);
      double g2 = gx * gx + gy * gy;
      if (g2 < 1e-300) break;
      p[0] -= gx * r / g2;
      p[1] -= gy * r / g2;
      if (std::abs(r) < 1e-15 * (1 + std::abs(t))) break;
    }
  };

  auto field = [&](const State<2>& p) -> State<2> { return {Fy.eval(p[0], p[1]), -Fx.eval(p[0], p[1])}; };
  auto ray_side = [&](const State<2>& p) { return ux * (p[1] - cy) - uy * (p[0] - cx); };
  auto on_positive_ray = [&](const State<2>& p) { return ux * (p[0] - cx) + uy * (p[1] - cy) > 0; };

  OvalTrace oval;
  oval.t = t;
  oval.section = section;

  State<2> p{cx + s0 * ux, cy + s0 * uy};
  project(p);
  State<2> k1 = field(p);
  double speed0 = std::hypot(k1[0], k1[1]);
  if (speed0 < 1e-12) throw NotClosed("transversal start sits at a critical point");

  double tau = 0;
  double h = std::min(max_step, 1e-3 / speed0);
  bool armed = false;
  oval.samples.push_back({0.0, p[0], p[1], k1[0], k1[1]});

  const double tol_step = tol.trace_tol;
  int accepted = 0;
  while (tau < max_time) {
    h = std::min(h, max_step);
    State<2> next, k_end;
    double err = dp_step<2>(field, p, k1, h, next, k_end);
    if (err > tol_step && h > 1e-14) {
      h = std::max(1e-14, 0.9 * h * std::pow(tol_step / err, 0.2));
      continue;
    }
    double side_prev = ray_side(p);
    State<2> raw_next = next;
    project(next);
    double side_next = ray_side(next);

    if (!armed && std::abs(side_next) > 1e-6 * (1 + std::abs(s0))) armed = true;
    if (armed && std::signbit(side_prev) != std::signbit(side_next) && on_positive_ray(next)) {
      // Bisect the crossing time inside this step by re-integrating partial steps.
      double lo = 0, hi = h;
      State<2> plo = p;
      for (int b = 0; b < 80 && hi - lo > tol.return_bisect * std::max(1.0, tau); ++b) {
        double mid = (lo + hi) / 2;
        State<2> pm, km;
        dp_step<2>(field, p, k1, mid, pm, km);
        project(pm);
        if (std::signbit(ray_side(pm)) == std::signbit(side_prev)) {
          lo = mid;
          plo = pm;
        } else {
          hi = mid;
        }
      }
      State<2> pend, kend2;
      dp_step<2>(field, p, k1, hi, pend, kend2);
      project(pend);
      double tau_end = tau + hi;
      State<2> vend = field(pend);
      oval.samples.push_back({tau_end, pend[0], pend[1], vend[0], vend[1]});
      oval.period = tau_end;
      oval.closure_error = std::hypot(pend[0] - oval.samples.front().x, pend[1] - oval.samples.front().y);
      double emax = 0;
      for (const auto& smp : oval.samples) emax = std::max(emax, std::abs(F.eval(smp.x, smp.y) - t));
      oval.energy_error = emax;
      double area2 = 0;
      for (std::size_t i = 0; i + 1 < oval.samples.size(); ++i) {
        const auto& a = oval.samples[i];
        const auto& b = oval.samples[i + 1];
        area2 += (a.x - cx) * (b.y - cy) - (b.x - cx) * (a.y - cy);
      }
      oval.orientation = area2 > 0 ? 1 : -1;
      if (oval.closure_error > 1e-6 * (1 + std::abs(s0)))
        throw NotClosed("orbit returned to the section far from its start");
      return oval;
    }

    tau += h;
    p = next;
    k1 = field(next);  // recompute after projection (FSAL would use raw state)
    (void)raw_next;
    double speed = std::hypot(k1[0], k1[1]);
    if (speed < 1e-10 * (1 + std::abs(t))) throw NotClosed("orbit stalled near a saddle");
    oval.samples.push_back({tau, p[0], p[1], k1[0], k1[1]});
    if (++accepted > 4000000) throw NotClosed("step budget exhausted");
    if (err > 0) h = std::min(max_step, 0.9 * h * std::pow(tol_step / std::max(err, 1e-18), 0.2));
  }
  throw NotClosed("no first return within the time budget");
}

OvalTrace with_base_at(const OvalTrace& oval, std::size_t index) {
  if (index == 0 || index + 1 >= oval.samples.size()) return oval;
  OvalTrace r = oval;
  r.samples.clear();
  const std::size_t n = oval.samples.size() - 1;  // last sample duplicates the first point
  for (std::size_t i = 0; i <= n; ++i) {
    OvalSample s = oval.samples[(index + i) % n];
    if (i == 0) {
      s.tau = 0.0;
    } else {
      std::size_t j = (index + i - 1) % n;
      s.tau = r.samples.back().tau + (oval.samples[j + 1].tau - oval.samples[j].tau);
    }
    r.samples.push_back(s);
  }
  r.closure_error = std::hypot(r.samples.back().x - r.samples.front().x,
                               r.samples.back().y - r.samples.front().y);
  return r;
}

namespace {

constexpr double GAUSS_X[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                               0.8611363115940526};
constexpr double GAUSS_W[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                               0.3478548451374538};

struct Hermite {
  // cubic Hermite on [0,h] from endpoint values and derivatives
  double x0, y0, x1, y1, vx0, vy0, vx1, vy1, h;
  void eval(double s, double& x, double& y, double& dx, double& dy) const {
    double u = s / h;
    double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    x = h00 * x0 + h10 * h * vx0 + h01 * x1 + h11 * h * vx1;
    y = h00 * y0 + h10 * h * vy0 + h01 * y1 + h11 * h * vy1;
    double d00 = 6 * u * (u - 1) / h, d10 = (1 - u) * (1 - 3 * u), d01 = -6 * u * (u - 1) / h,
           d11 = u * (3 * u - 2);
    dx = d00 * x0 + d10 * vx0 + d01 * x1 + d11 * vx1;
    dy = d00 * y0 + d10 * vy0 + d01 * y1 + d11 * vy1;
  }
};

Hermite arc(const OvalSample& a, const OvalSample& b) {
  return {a.x, a.y, b.x, b.y, a.vx, a.vy, b.vx, b.vy, b.tau - a.tau};
}

// integral of P dx + Q dy over the sub-arc [0, s_hi] of one Hermite piece
double arc_integral(const Hermite& hm, const PolyD& P, const PolyD& Q, double s_hi) {
  double half = s_hi / 2;
  double acc = 0;
  for (int g = 0; g < 4; ++g) {
    double s = half * (1 + GAUSS_X[g]);
    double x, y, dx, dy;
    hm.eval(s, x, y, dx, dy);
    acc += GAUSS_W[g] * (P.eval(x, y) * dx + Q.eval(x, y) * dy);
  }
  return acc * half;
}

}  // namespace

double integrate_oneform(const OvalTrace& oval, const OneForm& omega) {
  PolyD P(omega.P), Q(omega.Q);
  double acc = 0;
  for (std::size_t i = 0; i + 1 < oval.samples.size(); ++i) {
    Hermite hm = arc(oval.samples[i], oval.samples[i + 1]);
    acc += arc_integral(hm, P, Q, hm.h);
  }
  return acc;
}

std::vector<double> cumulative_oneform(const OvalTrace& oval, const OneForm& omega) {
  PolyD P(omega.P), Q(omega.Q);
  std::vector<double> out(oval.samples.size(), 0.0);
  for (std::size_t i = 0; i + 1 < oval.samples.size(); ++i) {
    Hermite hm = arc(oval.samples[i], oval.samples[i + 1]);
    out[i + 1] = out[i] + arc_integral(hm, P, Q, hm.h);
  }
  return out;
}

}  // namespace pppf
