#include "pppf/univariate.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>

#include "pppf/errors.hpp"
#include "pppf/qmatrix.hpp"

namespace pppf {

void UniPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational UniPoly::evaluate(const Rational& t) const {
  Rational r = 0;
  for (std::size_t k = c.size(); k-- > 0;) r = r * t + c[k];
  return r;
}

Complex UniPoly::evaluate(const Complex& t) const {
  Complex r = 0;
  for (std::size_t k = c.size(); k-- > 0;) r = r * t + to_double(c[k]);
  return r;
}

UniPoly UniPoly::derivative() const {
  UniPoly r;
  for (std::size_t k = 1; k < c.size(); ++k) r.c.push_back(c[k] * static_cast<int>(k));
  r.trim();
  return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  UniPoly r;
  r.c.resize(std::max(c.size(), o.c.size()), 0);
  for (std::size_t k = 0; k < c.size(); ++k) r.c[k] += c[k];
  for (std::size_t k = 0; k < o.c.size(); ++k) r.c[k] += o.c[k];
  r.trim();
  return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o * Rational(-1); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  UniPoly r;
  r.c.assign(c.size() + o.c.size() - 1, 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  r.trim();
  return r;
}

UniPoly UniPoly::operator*(const Rational& k) const {
  UniPoly r = *this;
  for (auto& x : r.c) x *= k;
  r.trim();
  return r;
}

UniPoly UniPoly::rem(const UniPoly& o) const {
  UniPoly r = *this;
  while (!r.is_zero() && r.degree() >= o.degree()) {
    Rational f = r.lc() / o.lc();
    int shift = r.degree() - o.degree();
    for (int k = 0; k <= o.degree(); ++k) r.c[k + shift] -= f * o.c[k];
    r.trim();
  }
  return r;
}

Rational resultant(const UniPoly& a, const UniPoly& b) {
  int m = a.degree(), n = b.degree();
  if (m < 0 || n < 0) return 0;
  if (m == 0) {
    Rational r = 1;
    for (int k = 0; k < n; ++k) r *= a.c[0];
    return r;
  }
  if (n == 0) {
    Rational r = 1;
    for (int k = 0; k < m; ++k) r *= b.c[0];
    return r;
  }
  QMat s(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s(i, i + m - k) = a.c[k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s(n + i, i + n - k) = b.c[k];
  return s.det();
}

namespace {
int sign_of(const Rational& q) { return q == 0 ? 0 : (q > 0 ? 1 : -1); }

int sign_variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}
}  // namespace

int count_real_roots(const UniPoly& p) {
  if (p.degree() <= 0) return 0;
  // Sturm chain; divide out multiple roots first so the count is of distinct roots.
  std::vector<UniPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    UniPoly r = chain[chain.size() - 2].rem(chain.back());
    chain.push_back(r * Rational(-1));
  }
  std::vector<int> at_minf, at_pinf;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    int s = sign_of(q.lc());
    at_pinf.push_back(s);
    at_minf.push_back(q.degree() % 2 == 0 ? s : -s);
  }
  return sign_variations(at_minf) - sign_variations(at_pinf);
}

namespace {

// Coefficients of p as a polynomial in `main` variable, each a UniPoly in the other.
std::vector<UniPoly> coeffs_in_y(const BivariatePolynomial& p) {
  int dy = 0, dx = 0;
  for (const auto& [k, c] : p.terms()) {
    dy = std::max(dy, k.second);
    dx = std::max(dx, k.first);
  }
  std::vector<UniPoly> out(dy + 1);
  for (auto& u : out) u.c.assign(dx + 1, 0);
  for (const auto& [k, c] : p.terms()) out[k.second].c[k.first] = c;
  for (auto& u : out) u.trim();
  return out;
}

BivariatePolynomial swap_xy(const BivariatePolynomial& p) {
  BivariatePolynomial r;
  for (const auto& [k, c] : p.terms()) r.add_term(k.second, k.first, c);
  return r;
}

}  // namespace

UniPoly resultant_y(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  auto ca = coeffs_in_y(a);
  auto cb = coeffs_in_y(b);
  int m = static_cast<int>(ca.size()) - 1;
  int n = static_cast<int>(cb.size()) - 1;
  if (m < 0 || n < 0) return {};
  int dxa = 0, dxb = 0;
  for (const auto& u : ca) dxa = std::max(dxa, std::max(0, u.degree()));
  for (const auto& u : cb) dxb = std::max(dxb, std::max(0, u.degree()));
  int bound = n * dxa + m * dxb;  // Sylvester determinant degree bound in x

  std::vector<Rational> nodes, values;
  long long t = 0;
  while (static_cast<int>(nodes.size()) <= bound) {
    Rational x0(t);
    t = t <= 0 ? -t + 1 : -t;  // 0, 1, -1, 2, -2, ...
    if (ca[m].evaluate(x0) == 0 || cb[n].evaluate(x0) == 0) continue;  // keep degrees stable
    UniPoly av, bv;
    av.c.resize(m + 1);
    bv.c.resize(n + 1);
    for (int k = 0; k <= m; ++k) av.c[k] = ca[k].evaluate(x0);
    for (int k = 0; k <= n; ++k) bv.c[k] = cb[k].evaluate(x0);
    nodes.push_back(x0);
    values.push_back(resultant(av, bv));
  }

  // Lagrange interpolation through (nodes, values).
  UniPoly res;
  res.c.assign(bound + 1, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    // numerator polynomial prod_{j!=i} (x - x_j), denominator prod (x_i - x_j)
    UniPoly num{{1}};
    Rational den = 1;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == i) continue;
      num = num * UniPoly{{-nodes[j], 1}};
      den *= nodes[i] - nodes[j];
    }
    Rational w = values[i] / den;
    for (std::size_t k = 0; k < num.c.size(); ++k) res.c[k] += num.c[k] * w;
  }
  res.trim();
  return res;
}

UniPoly resultant_x(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  return resultant_y(swap_xy(a), swap_xy(b));
}

std::vector<Complex> complex_roots(const std::vector<Complex>& coeffs) {
  // Trim leading (high-order) zeros.
  std::vector<Complex> c = coeffs;
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
  std::vector<Complex> roots;
  roots.reserve(n);
  for (int i = 0; i < n; ++i) {
    Complex r = es.eigenvalues()(i);
    // Newton polish; harmless near multiple roots, helps simple ones.
    for (int it = 0; it < 8; ++it) {
      Complex p = 0, dp = 0;
      for (int k = n; k >= 0; --k) {
        dp = dp * r + p;
        p = p * r + c[k];
      }
      if (std::abs(dp) < 1e-300) break;
      Complex step = p / dp;
      r -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
    }
    roots.push_back(r);
  }
  return roots;
}

std::vector<Complex> complex_roots(const UniPoly& p) {
  std::vector<Complex> c;
  c.reserve(p.c.size());
  for (const auto& q : p.c) c.push_back(Complex(to_double(q), 0.0));
  return complex_roots(c);
}

std::vector<Complex> restrict_x(const BivariatePolynomial& p, const Complex& x0) {
  int dy = 0;
  for (const auto& [k, c] : p.terms()) dy = std::max(dy, k.second);
  std::vector<Complex> out(dy + 1, Complex(0, 0));
  for (const auto& [k, c] : p.terms()) {
    Complex t = to_double(c);
    for (int i = 0; i < k.first; ++i) t *= x0;
    out[k.second] += t;
  }
  return out;
}

std::vector<Complex> restrict_y(const BivariatePolynomial& p, const Complex& y0) {
  int dx = 0;
  for (const auto& [k, c] : p.terms()) dx = std::max(dx, k.first);
  std::vector<Complex> out(dx + 1, Complex(0, 0));
  for (const auto& [k, c] : p.terms()) {
    Complex t = to_double(c);
    for (int j = 0; j < k.second; ++j) t *= y0;
    out[k.first] += t;
  }
  return out;
}

}  // namespace pppf
