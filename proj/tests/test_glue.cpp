#include <random>

#include "doctest.h"
#include "drcoh/glue.hpp"

using namespace drc;

namespace {

const std::vector<std::string> xyz{"x", "y", "z"};

std::vector<std::size_t> even_ones(int n) {
  std::vector<std::size_t> b(2 * n + 1, 0);
  for (int k = 0; k <= n; ++k) b[2 * k] = 1;
  return b;
}

long euler(const std::vector<std::size_t>& v) {
  long e = 0;
  for (std::size_t i = 0; i < v.size(); ++i) e += (i % 2 ? -1 : 1) * static_cast<long>(v[i]);
  return e;
}

void check_complex(const TotalComplex& tc) {
  const auto& d = tc.differentials();
  for (std::size_t t = 0; t + 1 < d.size(); ++t) CHECK((d[t + 1] * d[t]).is_zero());
  std::vector<std::size_t> dims;
  for (int t = 0; t <= tc.top(); ++t) dims.push_back(tc.dim(t));
  CHECK(euler(dims) == euler(tc.betti()));
  for (int t = 0; t <= tc.top(); ++t)
    for (const auto& g : tc.generators(t)) {
      CHECK(tc.is_cocycle(g));
      CHECK_FALSE(tc.is_coboundary(g));
    }
}

}  // namespace

TEST_CASE("atlas of projective space") {
  Atlas a = projective_atlas(2, xyz);
  REQUIRE(a.charts.size() == 3);
  CHECK(a.charts[1].coordinate_names == std::vector<std::string>{"x/y", "z/y"});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(a.transition(i, j) == projective_transition(2, i, j));
      CHECK(a.transition(i, j).then(a.transition(j, i)) == MonomialMap::identity(2));
    }
  CHECK(a.inverted_coordinates(0b011) == std::vector<int>{0});
  CHECK(a.inverted_coordinates(0b101) == std::vector<int>{1});
  CHECK(a.inverted_coordinates(0b111) == std::vector<int>{0, 1});
  // x/y in chart z is s/t
  CHECK(a.in_chart({-1, 0}, 2) == std::vector<long>{1, -1});
}

TEST_CASE("projective spaces") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> names(xyz);
    names.push_back("w");
    names.resize(n + 1);
    Cover c = projective_cover(n, {}, names);
    TotalComplex tc(c);
    auto oc = open_cohomology(tc);
    CHECK(oc.betti == even_ones(n));
    check_complex(tc);
    for (int k = 0; k <= n; ++k) {
      Cochain ck = chern_cocycle(c, k);
      CHECK(ck.degree == 2 * k);
      CHECK(tc.is_cocycle(ck));
      CHECK_FALSE(tc.is_coboundary(ck));
    }
  }
}

TEST_CASE("form-level differential agrees with the matrices") {
  Cover c = projective_cover(2, {parse_poly("x^2+y*z", xyz)}, xyz);
  TotalComplex tc(c);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int t = 0; t < tc.top(); ++t) {
    SparseVec v;
    for (std::size_t i = 0; i < tc.dim(t); ++i)
      if (int x = coef(rng)) v.emplace_back(i, Rational(x));
    Cochain w = tc.cochain(t, v);
    CHECK(tc.vectorize(w) == v);
    CHECK(tc.vectorize(tc.apply_d(w)) == tc.differentials()[t].apply(v));
  }
}

TEST_CASE("complements of plane curves") {
  Cover conic = projective_cover(2, {parse_poly("x^2+y*z", xyz)}, xyz);
  TotalComplex tq(conic);
  CHECK(tq.betti() == std::vector<std::size_t>{1, 0, 0, 0, 0});
  check_complex(tq);

  Cover ell = projective_cover(2, {parse_poly("x^2*y+y^2*z+z^2*x", xyz)}, xyz);
  TotalComplex te(ell);
  CHECK(te.betti() == std::vector<std::size_t>{1, 0, 2, 0, 0});
  check_complex(te);
  // affine pieces: the generator counts of the chart table
  CHECK(ell.pieces[ell.piece_index(0b111, 1)].target == std::vector<std::size_t>{1, 3, 5});
  CHECK(ell.pieces[ell.piece_index(0b001, 1)].target == std::vector<std::size_t>{1, 1, 3});
  CechRow one = cech_row(ell, 1), two = cech_row(ell, 2);
  CHECK(one.dims == std::vector<std::size_t>{3, 6, 3});
  CHECK(one.ranks == std::vector<std::size_t>{3, 3});
  CHECK(two.dims == std::vector<std::size_t>{9, 12, 5});
  CHECK(two.ranks == std::vector<std::size_t>{7, 5});
}

TEST_CASE("Betti numbers do not depend on the chosen subcomplexes") {
  // Larger quasi-isomorphic subcomplexes on every piece.
  for (int n = 1; n <= 2; ++n) {
    std::vector<std::string> names(xyz.begin(), xyz.begin() + n + 1);
    Cover c = projective_cover(n, {}, names);
    auto before = TotalComplex(c).betti();
    std::map<std::size_t, std::vector<DiffForm>> extra;
    for (std::size_t k = 0; k < c.pieces.size(); ++k) {
      const Poly& T = c.pieces[k].divisor;
      Poly x0 = Poly::variable(n, 0);
      extra[k].push_back(DiffForm::function(n, T, x0 * x0 + Poly(n, Rational(3)), 0));
      extra[k].push_back(DiffForm::monomial_form(n, T, 1, x0, 0));
      if (!T.is_constant()) extra[k].push_back(DiffForm::function(n, T, Poly(n, Rational(1)), 2));
    }
    std::size_t dim0 = TotalComplex(c).dim(0);
    saturate(c, extra);
    TotalComplex tc(c);
    CHECK(tc.dim(0) > dim0);
    CHECK(tc.betti() == before);
    check_complex(tc);
  }
}

TEST_CASE("cup products") {
  Cover p2 = projective_cover(2, {}, xyz);
  Cochain c1 = chern_cocycle(p2, 1), c2 = chern_cocycle(p2, 2);
  Cochain sq = cup(p2, c1, c1);
  saturate(p2, cochain_forms(p2, sq));
  TotalComplex tc(p2);
  REQUIRE(tc.is_cocycle(sq));
  auto lambda = tc.class_coordinates(sq, {c2});
  REQUIRE(lambda.size() == 1);
  CHECK(sgn(lambda[0]) != 0);

  CupTable t = cup_products(p2);
  CHECK(t.unit_law);
  CHECK(t.graded_commutative);
  // H^2 x H^2 -> H^4 is nonzero: the ring is Q[h]/h^3
  std::size_t i2 = 0;
  while (t.basis[i2].first != 2) ++i2;
  CHECK(sgn(t.products[i2][i2].at(0)) != 0);

  for (const char* f : {"x^2+y*z", "x^2*y+y^2*z+z^2*x"}) {
    Cover c = projective_cover(2, {parse_poly(f, xyz)}, xyz);
    CupTable u = cup_products(c);
    CHECK(u.unit_law);
    CHECK(u.graded_commutative);
  }
}
