#include <complex>

#include "doctest.h"
#include "fixtures.hpp"
#include "pppf/critical.hpp"
#include "pppf/errors.hpp"
#include "pppf/polynomial.hpp"
#include "pppf/univariate.hpp"

using namespace pppf;
using namespace fixtures;

namespace {

// Independent expansion oracle: multiply term lists pairwise without going
// through BivariatePolynomial::operator*.
std::map<std::pair<int, int>, Rational> naive_product(const std::vector<BivariatePolynomial>& fs) {
  std::map<std::pair<int, int>, Rational> acc{{{0, 0}, 1}};
  for (const auto& f : fs) {
    std::map<std::pair<int, int>, Rational> next;
    for (const auto& [ka, ca] : acc)
      for (const auto& [kb, cb] : f.terms()) {
        auto key = std::make_pair(ka.first + kb.first, ka.second + kb.second);
        next[key] += ca * cb;
      }
    for (auto it = next.begin(); it != next.end();)
      it = it->second == 0 ? next.erase(it) : std::next(it);
    acc = std::move(next);
  }
  return acc;
}

int count_type(const CriticalStructure& cs, MorseType t) {
  int n = 0;
  for (const auto& p : cs.points) n += p.morse_type == t;
  return n;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1") == Rational(1));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5e-3") == Rational(-3, 2000));
  CHECK(parse_rational("2e2") == Rational(200));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK(rational_to_string(Rational(-3, 4)) == "-3/4");
  CHECK(rational_to_string(Rational(7)) == "7");
}

TEST_CASE("expand: factored products") {
  SUBCASE("[x, y] -> xy, degree 2") {
    auto f = FactoredPolynomial::from_factors({X(), Y()});
    CHECK(f.expanded == X() * Y());
    CHECK(f.expanded.degree() == 2);
  }
  SUBCASE("[x, y, x+y-1] -> x^2 y + x y^2 - xy, degree 3") {
    auto f = triangle();
    BivariatePolynomial expect;
    expect.add_term(2, 1, 1);
    expect.add_term(1, 2, 1);
    expect.add_term(1, 1, -1);
    CHECK(f.expanded == expect);
    CHECK(f.expanded.degree() == 3);
  }
  SUBCASE("[xy+1/10, x+y-1]: matches the independent multiplication oracle") {
    auto f = perturbed_triangle(Rational(1, 10));
    CHECK(f.expanded.degree() == 3);
    CHECK(f.expanded.terms() == naive_product(f.factors));
    CHECK(f.expanded.terms().count({0, 0}) == 1);  // constant term -1/10
  }
  CHECK_THROWS_AS(expand(FactoredPolynomial{}), ValidationError);
}

TEST_CASE("evaluate / gradient / hessian") {
  auto F = triangle().expanded;
  SUBCASE("exact rational evaluation at the center") {
    Rational third(1, 3);
    CHECK(evaluate_exact(F, third, third) == Rational(-1, 27));
    auto g = gradient_exact(F, third, third);
    CHECK(g[0] == 0);
    CHECK(g[1] == 0);
  }
  SUBCASE("gradient of a constant is zero") {
    auto c = BivariatePolynomial::constant(Rational(5, 7));
    auto g = gradient_exact(c, 2, 3);
    CHECK(g[0] == 0);
    CHECK(g[1] == 0);
  }
  SUBCASE("hessian determinant of xy at origin is -1") {
    auto h = hessian_exact(X() * Y(), 0, 0);
    CHECK(h[0] * h[3] - h[1] * h[2] == Rational(-1));
  }
  SUBCASE("complex evaluation agrees with exact") {
    Complex v = F.evaluate(Complex(0.5, 0.25), Complex(-1.0, 0.125));
    auto formula = [](Complex x, Complex y) { return x * y * (x + y - 1.0); };
    CHECK(std::abs(v - formula(Complex(0.5, 0.25), Complex(-1.0, 0.125))) < 1e-15);
  }
}

TEST_CASE("resultant elimination and root counts") {
  // p = (t-1)(t+2)(t-3): three real roots
  UniPoly p{{6, -7, -2, 1}};
  CHECK(count_real_roots(p) == 3);
  UniPoly q{{1, 0, 1}};  // t^2+1
  CHECK(count_real_roots(q) == 0);
  CHECK(resultant(p, p.derivative()) != 0);
  // resultant of x^2+y^2-1 and x-y in y: plug y=x -> 2x^2-1 up to factor
  auto circ = X() * X() + Y() * Y() - C(1);
  auto diag = X() - Y();
  UniPoly r = resultant_y(circ, diag);
  CHECK(r.degree() == 2);
  Rational ratio = r.c[2] / Rational(2);
  CHECK(r.c[0] == -ratio);
  CHECK(r.c[1] == 0);
}

TEST_CASE("critical_points: triangle") {
  auto cs = critical_points(triangle().expanded);
  REQUIRE(cs.points.size() == 4);
  CHECK(cs.morse);
  CHECK(count_type(cs, MorseType::saddle) == 3);
  CHECK(count_type(cs, MorseType::center) == 1);
  REQUIRE(cs.levels.size() == 2);
  // sorted by real part: level -1/27 first (1 member), then 0 (3 members)
  CHECK(cs.levels[0].members.size() == 1);
  CHECK(cs.levels[1].members.size() == 3);
  CHECK(std::abs(cs.levels[0].value - Complex(-1.0 / 27.0, 0)) < 1e-12);
  CHECK(std::abs(cs.levels[1].value) < 1e-12);
  // center located at (1/3, 1/3)
  for (const auto& p : cs.points)
    if (p.morse_type == MorseType::center) {
      CHECK(std::abs(p.x - Complex(1.0 / 3.0, 0)) < 1e-10);
      CHECK(std::abs(p.y - Complex(1.0 / 3.0, 0)) < 1e-10);
    }
  CHECK(cs.at_infinity.size() == 3);
  for (const auto& v : cs.at_infinity) CHECK(v.real);
}

TEST_CASE("critical_points: perturbed triangle, both parameter signs") {
  SUBCASE("eps = -1/10: three saddles and one center, one saddle off the zero level") {
    auto cs = critical_points(perturbed_triangle(Rational(-1, 10)).expanded);
    REQUIRE(cs.points.size() == 4);
    CHECK(cs.morse);
    CHECK(count_type(cs, MorseType::saddle) == 3);
    CHECK(count_type(cs, MorseType::center) == 1);
    CHECK(cs.levels.size() == 3);
    int on_nonzero_saddle = 0;
    for (const auto& p : cs.points)
      if (p.morse_type == MorseType::saddle && std::abs(p.value) > 1e-8) ++on_nonzero_saddle;
    CHECK(on_nonzero_saddle == 1);
  }
  SUBCASE("eps = +1/10: the saddle/center pair has merged into complex points") {
    // Past eps = 1/12 the two diagonal critical points leave the real plane;
    // there remain 2 real saddles on level 0 plus a conjugate complex pair,
    // still 3 distinct critical values.
    auto cs = critical_points(perturbed_triangle(Rational(1, 10)).expanded);
    REQUIRE(cs.points.size() == 4);
    CHECK(cs.morse);
    CHECK(count_type(cs, MorseType::saddle) == 2);
    CHECK(count_type(cs, MorseType::complex_point) == 2);
    CHECK(cs.levels.size() == 3);
  }
}

TEST_CASE("critical_points: four lines and its perturbations") {
  auto cs = critical_points(four_lines().expanded);
  REQUIRE(cs.points.size() == 9);
  CHECK(cs.morse);
  CHECK(count_type(cs, MorseType::saddle) == 6);
  CHECK(count_type(cs, MorseType::center) == 3);
  // The mirror symmetry (x,y) -> (-y,-x) forces two centers onto one level:
  // levels are {-9/64 (2 centers), 0 (6 saddles), 1/4 (1 center)}.
  REQUIRE(cs.levels.size() == 3);
  CHECK(cs.levels[0].members.size() == 2);
  CHECK(std::abs(cs.levels[0].value - Complex(-9.0 / 64.0, 0)) < 1e-10);
  CHECK(cs.levels[1].members.size() == 6);
  CHECK(cs.levels[2].members.size() == 1);
  CHECK(std::abs(cs.levels[2].value - Complex(0.25, 0)) < 1e-10);

  auto csp = critical_points(four_lines_perturbed(Rational(1, 10)).expanded);
  REQUIRE(csp.points.size() == 9);
  CHECK(csp.morse);
  // level 0 keeps 5 saddles; the center pair stays coincident by the same symmetry
  int zero_level = -1;
  for (std::size_t l = 0; l < csp.levels.size(); ++l)
    if (std::abs(csp.levels[l].value) < 1e-9) zero_level = static_cast<int>(l);
  REQUIRE(zero_level >= 0);
  CHECK(csp.levels[zero_level].members.size() == 5);
  CHECK(csp.levels.size() == 4);

  auto csd = critical_points(four_lines_double_perturbed(Rational(1, 10), Rational(1, 1000)).expanded);
  REQUIRE(csd.points.size() == 9);
  CHECK(csd.levels.size() == 5);
}

TEST_CASE("critical_points: two-factor fixtures") {
  auto cs = critical_points(line_ellipse().expanded);
  REQUIRE(cs.points.size() == 4);
  CHECK(count_type(cs, MorseType::saddle) == 2);
  CHECK(count_type(cs, MorseType::center) == 2);
  CHECK(cs.levels.size() == 3);

  auto ce = critical_points(two_ellipses().expanded);
  REQUIRE(ce.points.size() == 9);
  CHECK(count_type(ce, MorseType::saddle) == 4);
  CHECK(count_type(ce, MorseType::center) == 5);
  CHECK(ce.levels.size() == 6);
}

TEST_CASE("critical_points error paths") {
  // xy(x+y) is generic at infinity but has a single degenerate critical point.
  auto f = FactoredPolynomial::from_factors({X(), Y(), X() + Y()});
  auto cs = critical_points(f.expanded);
  CHECK_FALSE(cs.morse);
  // (x+y)^2 * x: double direction at infinity
  auto s = X() + Y();
  CHECK_THROWS_AS(critical_points((s * s * X())), AtInfinityDegenerate);
}

TEST_CASE("algebra invariants") {
  SUBCASE("(d-1)^2 critical points for Morse generic-at-infinity fixtures") {
    for (auto f : {triangle().expanded, four_lines().expanded, line_ellipse().expanded, two_ellipses().expanded}) {
      int d = f.degree();
      auto cs = critical_points(f);
      CHECK(static_cast<int>(cs.points.size()) == (d - 1) * (d - 1));
    }
  }
  SUBCASE("level clustering is idempotent") {
    auto cs = critical_points(four_lines().expanded);
    std::vector<Complex> reps;
    for (const auto& l : cs.levels) reps.push_back(l.value);
    auto again = cluster_values(reps, 1e-9);
    CHECK(again.size() == reps.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
      CHECK(again[i].members.size() == 1);
      CHECK(std::abs(again[i].value - reps[i]) == 0.0);
    }
  }
  SUBCASE("classification by hessian sign matches eigenvalue signs") {
    auto cs = critical_points(line_ellipse().expanded);
    auto F = line_ellipse().expanded;
    for (const auto& p : cs.points) {
      if (!p.is_real()) continue;
      auto h = hessian_at(F, p.x, p.y);
      double a = h[0].real(), b = h[1].real(), c = h[3].real();
      double tr = a + c, det = a * c - b * b;
      double disc = std::sqrt(std::max(0.0, tr * tr - 4 * det));
      double l1 = (tr + disc) / 2, l2 = (tr - disc) / 2;
      if (p.morse_type == MorseType::saddle) CHECK(l1 * l2 < 0);
      if (p.morse_type == MorseType::center) CHECK(l1 * l2 > 0);
    }
  }
  SUBCASE("scaling F by a nonzero rational scales values, keeps locations") {
    auto F = triangle().expanded;
    auto cs1 = critical_points(F);
    auto cs2 = critical_points(F * Rational(3, 2));
    REQUIRE(cs1.points.size() == cs2.points.size());
    for (std::size_t i = 0; i < cs1.points.size(); ++i) {
      CHECK(std::abs(cs1.points[i].x - cs2.points[i].x) < 1e-10);
      CHECK(std::abs(cs1.points[i].y - cs2.points[i].y) < 1e-10);
      CHECK(std::abs(cs1.points[i].value * 1.5 - cs2.points[i].value) < 1e-12);
    }
  }
}
