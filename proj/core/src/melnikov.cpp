#include "pppf/melnikov.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "pppf/errors.hpp"

namespace pppf {

namespace {

constexpr double GAUSS_X[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                               0.8611363115940526};
constexpr double GAUSS_W[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                               0.3478548451374538};

struct Curve {
  const OvalTrace& oval;
  struct Point {
    double x, y, dx, dy;
  };
  // position and velocity on the cubic Hermite arc i at offset s in [0, h_i]
  Point at(std::size_t i, double s) const {
    const auto& a = oval.samples[i];
    const auto& b = oval.samples[i + 1];
    double h = b.tau - a.tau, u = s / h;
    double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    double d00 = 6 * u * (u - 1) / h, d10 = (1 - u) * (1 - 3 * u);
    double d01 = -d00, d11 = u * (3 * u - 2);
    return {h00 * a.x + h10 * h * a.vx + h01 * b.x + h11 * h * b.vx,
            h00 * a.y + h10 * h * a.vy + h01 * b.y + h11 * h * b.vy,
            d00 * a.x + d10 * a.vx + d01 * b.x + d11 * b.vx,
            d00 * a.y + d10 * a.vy + d01 * b.y + d11 * b.vy};
  }
  double h(std::size_t i) const { return oval.samples[i + 1].tau - oval.samples[i].tau; }
  std::size_t arcs() const { return oval.samples.size() - 1; }
};

double pairing(const PolyD& P, const PolyD& Q, const Curve::Point& p) {
  return P.eval(p.x, p.y) * p.dx + Q.eval(p.x, p.y) * p.dy;
}

// integral of the one-form over the partial arc [0, s_hi]
double partial_arc(const Curve& c, std::size_t i, double s_hi, const PolyD& P, const PolyD& Q) {
  double half = s_hi / 2, acc = 0;
  for (int g = 0; g < 4; ++g) acc += GAUSS_W[g] * pairing(P, Q, c.at(i, half * (1 + GAUSS_X[g])));
  return acc * half;
}

}  // namespace

double abelian_integral(const OvalTrace& oval, const OneForm& omega) {
  return integrate_oneform(oval, omega);
}

double iterated_integral(const OvalTrace& oval, const OneForm& psi_k, const OneForm& psi_j) {
  Curve c{oval};
  PolyD Pk(psi_k.P), Qk(psi_k.Q), Pj(psi_j.P), Qj(psi_j.Q);
  std::vector<double> Psik = cumulative_oneform(oval, psi_k);
  double acc = 0;
  for (std::size_t i = 0; i < c.arcs(); ++i) {
    double h = c.h(i), half = h / 2;
    for (int g = 0; g < 4; ++g) {
      double s = half * (1 + GAUSS_X[g]);
      double Psi = Psik[i] + partial_arc(c, i, s, Pk, Qk);
      acc += GAUSS_W[g] * Psi * pairing(Pj, Qj, c.at(i, s)) * half;
    }
  }
  return acc;
}

double iterated_integral3(const OvalTrace& oval, const OneForm& psi_k, const OneForm& psi_j,
                          const OneForm& psi_m) {
  Curve c{oval};
  PolyD Pk(psi_k.P), Qk(psi_k.Q), Pj(psi_j.P), Qj(psi_j.Q), Pm(psi_m.P), Qm(psi_m.Q);
  std::vector<double> Psik = cumulative_oneform(oval, psi_k);

  // prefix values of Lambda = int psi_k psi_j along the samples
  std::vector<double> Lambda(oval.samples.size(), 0.0);
  for (std::size_t i = 0; i + 1 < oval.samples.size(); ++i) {
    double h = c.h(i), half = h / 2, inc = 0;
    for (int g = 0; g < 4; ++g) {
      double s = half * (1 + GAUSS_X[g]);
      double Psi = Psik[i] + partial_arc(c, i, s, Pk, Qk);
      inc += GAUSS_W[g] * Psi * pairing(Pj, Qj, c.at(i, s)) * half;
    }
    Lambda[i + 1] = Lambda[i] + inc;
  }

  double acc = 0;
  for (std::size_t i = 0; i < c.arcs(); ++i) {
    double h = c.h(i), half = h / 2;
    for (int g = 0; g < 4; ++g) {
      double s = half * (1 + GAUSS_X[g]);
      // Lambda at offset s: prefix + inner Gauss with the running Psi_k
      double lam = Lambda[i];
      {
        double ihalf = s / 2;
        for (int gg = 0; gg < 4; ++gg) {
          double si = ihalf * (1 + GAUSS_X[gg]);
          double Psi = Psik[i] + partial_arc(c, i, si, Pk, Qk);
          lam += GAUSS_W[gg] * Psi * pairing(Pj, Qj, c.at(i, si)) * ihalf;
        }
      }
      acc += GAUSS_W[g] * lam * pairing(Pm, Qm, c.at(i, s)) * half;
    }
  }
  return acc;
}

namespace {

// DP5(4) for the 3-state displacement system, duplicated from the tracer's
// tableau but without fiber projection (the drift is the measured signal).
struct Dp3 {
  using S = std::array<double, 3>;
  template <class F>
  static double step(const F& f, const S& y0, const S& k1, double h, S& out, S& k_end) {
    constexpr double A21 = 1.0 / 5;
    constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
    constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
    constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729;
    constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                     A65 = -5103.0 / 18656;
    constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                     B6 = 11.0 / 84;
    constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                     E6 = 22.0 / 525, E7 = -1.0 / 40;
    S tmp, k2, k3, k4, k5, k6;
    auto fma = [&](const S& base, std::initializer_list<std::pair<double, const S*>> terms) {
      S r = base;
      for (auto& [cc, kk] : terms)
        for (int i = 0; i < 3; ++i) r[i] += h * cc * (*kk)[i];
      return r;
    };
    k2 = f(fma(y0, {{A21, &k1}}));
    k3 = f(fma(y0, {{A31, &k1}, {A32, &k2}}));
    k4 = f(fma(y0, {{A41, &k1}, {A42, &k2}, {A43, &k3}}));
    k5 = f(fma(y0, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}));
    k6 = f(fma(y0, {{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}}));
    out = fma(y0, {{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}});
    k_end = f(out);
    double err = 0;
    for (int i = 0; i < 3; ++i) {
      double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k_end[i]);
      err = std::max(err, std::abs(e) / (1.0 + std::max(std::abs(y0[i]), std::abs(out[i]))));
    }
    return err;
  }
};

}  // namespace

double displacement_map(const BivariatePolynomial& f, const OneForm& omega, double t, double eps,
                        const Transversal& section, const Tolerances& tol, double max_time) {
  PolyD F(f), Fx(f.dx()), Fy(f.dy()), P(omega.P), Q(omega.Q);
  const double cx = section.center[0], cy = section.center[1];
  double ulen = std::hypot(section.direction[0], section.direction[1]);
  const double ux = section.direction[0] / ulen, uy = section.direction[1] / ulen;

  // start on the unperturbed oval (same construction as the tracer)
  OvalTrace probe = trace_oval(f, t, section, tol, max_time);
  std::array<double, 3> y{probe.samples.front().x, probe.samples.front().y, 0.0};

  // state: (x, y, D) with D' = eps (Q Fx - P Fy); F(x,y) - t - D stays
  // constant along the flow, so D at return is the level difference.
  auto field = [&](const std::array<double, 3>& s) -> std::array<double, 3> {
    double px = P.eval(s[0], s[1]), qx = Q.eval(s[0], s[1]);
    double fx = Fx.eval(s[0], s[1]), fy = Fy.eval(s[0], s[1]);
    return {fy + eps * qx, -fx - eps * px, eps * (qx * fx - px * fy)};
  };
  auto ray_side = [&](const std::array<double, 3>& s) { return ux * (s[1] - cy) - uy * (s[0] - cx); };
  auto on_positive_ray = [&](const std::array<double, 3>& s) {
    return ux * (s[0] - cx) + uy * (s[1] - cy) > 0;
  };

  std::array<double, 3> k1 = field(y);
  double tau = 0, h = 1e-4;
  bool armed = false;
  const double escape = 10.0 * (1.0 + std::hypot(y[0], y[1]) + std::hypot(cx, cy));
  while (tau < max_time) {
    std::array<double, 3> next, kend;
    double err = Dp3::step(field, y, k1, h, next, kend);
    if (err > tol.trace_tol && h > 1e-14) {
      h = std::max(1e-14, 0.9 * h * std::pow(tol.trace_tol / err, 0.2));
      continue;
    }
    double s_prev = ray_side(y), s_next = ray_side(next);
    if (!armed && std::abs(s_next) > 1e-6) armed = true;
    if (armed && std::signbit(s_prev) != std::signbit(s_next) && on_positive_ray(next)) {
      double lo = 0, hi = h;
      for (int b = 0; b < 80 && hi - lo > tol.return_bisect * std::max(1.0, tau); ++b) {
        double mid = (lo + hi) / 2;
        std::array<double, 3> pm, km;
        Dp3::step(field, y, k1, mid, pm, km);
        (std::signbit(ray_side(pm)) == std::signbit(s_prev) ? lo : hi) = mid;
      }
      std::array<double, 3> pend, ke;
      Dp3::step(field, y, k1, hi, pend, ke);
      return pend[2];
    }
    tau += h;
    y = next;
    k1 = kend;
    if (std::hypot(y[0], y[1]) > escape) throw NoReturn("perturbed orbit escaped the section");
    h = std::min(0.05, 0.9 * h * std::pow(tol.trace_tol / std::max(err, 1e-18), 0.2));
  }
  throw NoReturn("no first return of the perturbed orbit within the time budget");
}

DisplacementExpansion expand_displacement(const BivariatePolynomial& f, const OneForm& omega, double t,
                                          const std::vector<double>& epsilons, const Transversal& section,
                                          const Tolerances& tol, double max_time, double m1_floor,
                                          double m2_floor) {
  if (epsilons.size() < 3) throw ValidationError("expand_displacement: need at least 3 epsilons");
  DisplacementExpansion ex;
  ex.epsilons = epsilons;
  for (double e : epsilons) ex.displacements.push_back(displacement_map(f, omega, t, e, section, tol, max_time));

  auto fit = [&](const std::vector<double>& eps, const std::vector<double>& disp) {
    // least-squares fit D = c1 e + c2 e^2 + c3 e^3 (degree capped at 3)
    int n = static_cast<int>(eps.size());
    int m = std::min(3, n);
    Eigen::MatrixXd A(n, m);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      double p = 1;
      for (int j = 0; j < m; ++j) {
        p *= eps[i];
        A(i, j) = p;
      }
      b(i) = disp[i];
    }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    return std::pair<double, double>(c(0), m > 1 ? c(1) : 0.0);
  };

  auto [m1, m2] = fit(ex.epsilons, ex.displacements);
  ex.M1 = m1;
  ex.M2 = m2;

  if (epsilons.size() > 3) {
    std::vector<double> e1(epsilons.begin(), epsilons.end() - 1), d1(ex.displacements.begin(), ex.displacements.end() - 1);
    std::vector<double> e2(epsilons.begin() + 1, epsilons.end()), d2(ex.displacements.begin() + 1, ex.displacements.end());
    auto [a1, b1v] = fit(e1, d1);
    auto [a2, b2v] = fit(e2, d2);
    double scale1 = std::max({std::abs(ex.M1), m1_floor});
    double scale2 = std::max({std::abs(ex.M2), m2_floor});
    ex.consistent = std::abs(a1 - a2) < 0.05 * scale1 + m1_floor && std::abs(b1v - b2v) < 0.2 * scale2 + m2_floor;
    if (!ex.consistent) throw InconsistentOrder("displacement expansion estimates do not stabilize");
  }

  if (std::abs(ex.M1) > m1_floor)
    ex.first_nonzero_order = 1;
  else if (std::abs(ex.M2) > m2_floor)
    ex.first_nonzero_order = 2;
  else
    ex.first_nonzero_order = 0;
  return ex;
}

MelnikovSeries melnikov_series(const BivariatePolynomial& f, const OneForm& omega,
                               const std::vector<OneForm>& psis, const std::vector<double>& t_grid,
                               const std::vector<double>& epsilons, const Transversal& section,
                               const Tolerances& tol) {
  MelnikovSeries s;
  s.t_grid = t_grid;
  s.epsilons_used = epsilons;
  for (double t : t_grid) {
    OvalTrace oval = trace_oval(f, t, section, tol);
    s.M1_line.push_back(-abelian_integral(oval, omega));
    auto ex = expand_displacement(f, omega, t, epsilons, section, tol);
    s.M1_disp.push_back(ex.M1);
    s.M2.push_back(ex.M2);
    for (std::size_t k = 0; k < psis.size(); ++k)
      for (std::size_t j = 0; j < psis.size(); ++j) {
        if (k == j) continue;
        s.iterated[{static_cast<int>(k), static_cast<int>(j)}].push_back(
            iterated_integral(oval, psis[k], psis[j]));
      }
  }
  return s;
}

}  // namespace pppf
