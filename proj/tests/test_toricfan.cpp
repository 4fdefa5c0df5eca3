#include <map>

#include "doctest.h"
#include "drcoh/toricfan.hpp"

using namespace drc;

namespace {

using Dims = std::vector<std::size_t>;
const std::vector<std::string> uv{"u", "v"};

Dims betti(const Cover& c) { return open_cohomology(TotalComplex(c)).betti; }

long euler(const Dims& b) {
  long e = 0;
  for (std::size_t i = 0; i < b.size(); ++i) e += (i % 2 ? -1 : 1) * static_cast<long>(b[i]);
  return e;
}

// Cech 1-cochain of d log chi^m on pairs of cones (A=0 .. D=3).
Cochain pair_cochain(const Cover& c, const std::map<std::pair<int, int>, std::vector<long>>& m) {
  return character_cochain(c, 1, [&](const std::vector<int>& J) -> std::optional<std::vector<std::vector<long>>> {
    auto it = m.find({J[0], J[1]});
    if (it == m.end()) return std::nullopt;
    return std::vector<std::vector<long>>{it->second};
  });
}

DiffForm dlog_poly(const Poly& f, const Poly& base) {
  const int n = base.nvars();
  auto q = base.divide_exact(f);
  REQUIRE(q.has_value());
  DiffForm w(n, base, 1);
  for (int i = 0; i < n; ++i) w.add(1u << i, f.derivative(i) * *q, 1);
  return w;
}

bool same(const Cochain& a, const Cochain& b) {
  std::map<uint32_t, DiffForm> x, y;
  for (const auto& [S, w] : a.comp)
    if (!w.is_zero()) x[S] = w;
  for (const auto& [S, w] : b.comp)
    if (!w.is_zero()) y[S] = w;
  return x == y;
}

}  // namespace

TEST_CASE("fan validation") {
  CHECK_NOTHROW(validate_fan(hirzebruch_fan(2)));
  CHECK_NOTHROW(validate_fan(hirzebruch_fan(0)));
  Fan2D bad = hirzebruch_fan(2);
  bad.coordinates.clear();
  bad.rays[1] = {1, 2};  // det((1,0),(1,2)) = 2
  CHECK_THROWS_AS(validate_fan(bad), MathError);
  Fan2D cw = hirzebruch_fan(2);
  cw.coordinates.clear();
  std::reverse(cw.rays.begin(), cw.rays.end());
  CHECK_THROWS_AS(validate_fan(cw), MathError);
  Fan2D two;
  two.rays = {{1, 0}, {0, 1}};
  two.ray_names = {"x", "y"};
  two.cone_names = {"A", "B"};
  CHECK_THROWS_AS(validate_fan(two), MathError);
  Fan2D wrong = hirzebruch_fan(2);
  wrong.coordinates[0] = {{1, 0}, {1, 1}};
  CHECK_THROWS_AS(validate_fan(wrong), MathError);
}

TEST_CASE("charts of the Hirzebruch surface F2") {
  Fan2D f = hirzebruch_fan(2);
  auto charts = fan_charts(f);
  REQUIRE(charts.size() == 4);
  CHECK(charts[0].coordinate_names == std::vector<std::string>{"x/z", "y*z^2/w"});
  CHECK(charts[1].coordinate_names == std::vector<std::string>{"z/x", "x^2*y/w"});
  CHECK(charts[2].coordinate_names == std::vector<std::string>{"z/x", "w/(x^2*y)"});
  CHECK(charts[3].coordinate_names == std::vector<std::string>{"x/z", "w/(y*z^2)"});
  Atlas a = fan_atlas(f);
  MonomialMap loop = MonomialMap::identity(2);
  for (int i = 0; i < 4; ++i) loop = loop.then(a.transition(i, (i + 1) % 4));
  CHECK(loop == MonomialMap::identity(2));
  // adjacent cones share a ray: one coordinate becomes invertible
  CHECK(a.inverted_coordinates(0b0011).size() == 1);
  CHECK(a.inverted_coordinates(0b0101).size() == 2);

  CHECK(cone_character(f, 0, {0, 0, 0, 1}) == std::vector<long>{0, 0});
  CHECK(cone_character(f, 1, {0, 0, 0, 1}) == std::vector<long>{0, 0});
  CHECK(cone_character(f, 2, {0, 0, 0, 1}) == std::vector<long>{-2, -1});
  CHECK(cone_character(f, 3, {0, 0, 0, 1}) == std::vector<long>{0, -1});
}

TEST_CASE("projective plane as a toric surface") {
  std::vector<std::string> xyz{"x", "y", "z"};
  Fan2D f = projective_plane_fan(xyz);
  Atlas t = fan_atlas(f), p = projective_atlas(2, xyz);
  for (int j = 0; j < 3; ++j) CHECK(t.charts[j].characters == p.charts[j].characters);
  // local equations of a conic are its dehomogenizations
  Poly F = parse_poly("x^2+y*z", xyz);
  ToricDivisor d{parse_poly("1+u*v", uv), {0, 0, 2}};
  auto eq = local_equations(f, d);
  for (int j = 0; j < 3; ++j) CHECK(eq[j] == dehomogenize(F, j));

  Cover c = toric_cover(f, {});
  CHECK(betti(c) == Dims{1, 0, 1, 0, 1});
  CHECK(euler(betti(c)) == 3);
  CHECK(betti(toric_cover(f, {d})) == Dims{1, 0, 0, 0, 0});
}

TEST_CASE("F2 and the complement of a curve") {
  Fan2D f = hirzebruch_fan(2);
  Cover x = toric_cover(f, {});
  CHECK(betti(x) == Dims{1, 0, 2, 0, 1});
  CHECK(euler(betti(x)) == 4);

  ToricDivisor div{parse_poly("1-u^2*v+v", uv), {0, 0, 0, 1}};
  auto eq = local_equations(f, div);
  CHECK(eq[0] == parse_poly("1-u^2*v+v", uv));
  CHECK(betti(toric_cover(f, {div})) == Dims{1, 0, 1, 0, 0});

  // the full torus boundary leaves (C*)^2
  Cover torus = toric_cover(f, {ToricDivisor{Poly(2, Rational(1)), {1, 1, 1, 1}}});
  CHECK(betti(torus) == Dims{1, 2, 1, 0, 0});
}

TEST_CASE("generators of H2(F2) and the relation on the complement") {
  Fan2D f = hirzebruch_fan(2);
  const std::vector<long> a{1, 0}, ma{-1, 0}, b{0, 1}, mb{0, -1}, a2{2, 0}, c{-2, -1};
  // index pairs AB, AC, AD, BC, BD, CD
  std::map<std::pair<int, int>, std::vector<long>> alpha{{{0, 1}, a}, {{0, 2}, a}, {{1, 3}, ma}, {{2, 3}, ma}};
  std::map<std::pair<int, int>, std::vector<long>> beta{
      {{0, 1}, a2}, {{0, 2}, mb}, {{0, 3}, mb}, {{1, 2}, c}, {{1, 3}, c}};

  Cover x = toric_cover(f, {});
  Cochain al = pair_cochain(x, alpha), be = pair_cochain(x, beta);
  auto forms = cochain_forms(x, al);
  for (auto& [p, v] : cochain_forms(x, be)) forms[p].insert(forms[p].end(), v.begin(), v.end());
  saturate(x, forms);
  TotalComplex tx(x);
  CHECK(tx.betti()[2] == 2);
  CHECK(tx.is_cocycle(al));
  CHECK(tx.is_cocycle(be));
  // independent classes in a 2-dimensional H^2 generate it
  CHECK(tx.class_coordinates(al, {al, be}) == std::vector<Rational>{1, 0});

  ToricDivisor div{parse_poly("1-u^2*v+v", uv), {0, 0, 0, 1}};
  Cover u = toric_cover(f, {div});
  TotalComplex tu(u);
  Cochain ua = pair_cochain(u, alpha), ub = pair_cochain(u, beta);
  // h = A_{1,1} - B_{1,1} - C_{1,1} - D_{1,1} with A_{1,1} = -dlog f_A and
  // B_{1,1}, C_{1,1}, D_{1,1} the d logs of the local equations
  Cochain h;
  h.degree = 1;
  for (int k = 0; k < 4; ++k) {
    const Piece& p = u.pieces[u.piece_of(1u << k)];
    h.comp[1u << k] = -dlog_poly(u.equations[0][k], p.divisor);
  }
  Cochain lhs = ua * Rational(2) + ub * Rational(-1);
  CHECK(same(tu.apply_d(h), lhs));
  CHECK(tu.is_coboundary(lhs));
  // with -2 dt_A/t_A on AC the relation fails
  auto typo = beta;
  typo[{0, 2}] = {0, -2};
  Cochain wrong = ua * Rational(2) + pair_cochain(u, typo) * Rational(-1);
  CHECK_FALSE(same(tu.apply_d(h), wrong));
}
