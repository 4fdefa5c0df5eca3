#include <random>

#include "doctest.h"
#include "drcoh/poly.hpp"

using namespace drc;

TEST_CASE("parser handles the input grammar") {
  std::vector<std::string> xyz{"x", "y", "z"};
  Poly f = parse_poly("x^2 + y*z", xyz);
  Poly x = Poly::variable(3, 0), y = Poly::variable(3, 1), z = Poly::variable(3, 2);
  CHECK(f == x * x + y * z);
  CHECK(parse_poly(" -x^2*y + 3/2 * (y - z)^2 ", xyz) ==
        -(x * x * y) + (y - z) * (y - z) * Rational(3, 2));
  CHECK(parse_poly("-x^2", xyz) == -(x * x));
  CHECK(parse_poly("2*x/3", xyz) == x * Rational(2, 3));
  CHECK_THROWS_AS(parse_poly("x + w", xyz), ParseError);
  try {
    parse_poly("x + * y", xyz);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_poly("(x+y", xyz), ParseError);
  CHECK_THROWS_AS(parse_poly("x/(y+1)", xyz), ParseError);
}

TEST_CASE("dehomogenize matches the chart examples") {
  std::vector<std::string> xyz{"x", "y", "z"};
  Poly f = parse_poly("x^2+y*z", xyz);
  // chart z: variables s = x/z, t = y/z
  CHECK(dehomogenize(f, 2) == parse_poly("s^2+t", {"s", "t"}));
  // chart x: variables y/x, z/x
  CHECK(dehomogenize(f, 0) == parse_poly("1+u*v", {"u", "v"}));
  CHECK(dehomogenize(parse_poly("x", xyz), 0) == Poly(2, Rational(1)));
  CHECK_THROWS_AS(dehomogenize(parse_poly("x^2+y", xyz), 0), MathError);
}

TEST_CASE("dehomogenize is a ring homomorphism and rehomogenizes") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 3);
  auto random_form = [&](int deg) {
    Poly p(3);
    for (int k = 0; k < 4; ++k) {
      int a = std::min(deg, e(rng));
      int b = std::min(deg - a, e(rng));
      Monomial m = mono_zero();
      m[0] = a;
      m[1] = b;
      m[2] = deg - a - b;
      p.add_term(m, Rational(c(rng)));
    }
    return p;
  };
  for (int trial = 0; trial < 30; ++trial) {
    Poly f = random_form(2), g = random_form(3);
    if (f.is_zero() || g.is_zero()) continue;
    for (int j = 0; j < 3; ++j) {
      CHECK(dehomogenize(f * g, j) == dehomogenize(f, j) * dehomogenize(g, j));
      CHECK(rehomogenize(dehomogenize(f, j), j, 2) == f);
    }
  }
}

TEST_CASE("local fractions canonicalize") {
  Poly x = Poly::variable(1, 0);
  Poly one(1, Rational(1));
  LocalFraction a(one, x, 1), b(x - one, x, 1);
  auto s = a + b;
  CHECK(s.power() == 0);
  CHECK(s.numerator() == one);
  auto p = a * a;
  CHECK(p.power() == 2);
  CHECK(p.numerator() == one);
  LocalFraction g(x * x + one, x, 0);
  CHECK(g.power() == 0);
  CHECK(g.numerator() == x * x + one);
  LocalFraction h(x * x * x, x, 2);
  CHECK(h.power() == 0);
  CHECK(h.numerator() == x);
  LocalFraction h2(h.numerator(), x, h.power());
  CHECK(h2 == h);
}

TEST_CASE("exact division and factors") {
  std::vector<std::string> st{"s", "t"};
  Poly f = parse_poly("s^2+t", st), g = parse_poly("s-t+2", st);
  auto q = (f * g).divide_exact(g);
  REQUIRE(q.has_value());
  CHECK(*q == f);
  CHECK(!f.divide_exact(g).has_value());
  auto fs = normalized_factors({parse_poly("s*t", st), parse_poly("2*s", st), f});
  CHECK(fs.size() == 3);
}
