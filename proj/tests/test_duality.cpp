#include "doctest.h"
#include "drcoh/duality.hpp"

using namespace drc;

namespace {

const std::vector<std::string> xyz{"x", "y", "z"};
using Dims = std::vector<std::size_t>;

Poly P(const char* s) { return parse_poly(s, xyz); }

bool poincare(const Dims& b, int real_dim) {
  for (int k = 0; k <= real_dim; ++k)
    if (b[k] != b[real_dim - k]) return false;
  return true;
}

}  // namespace

TEST_CASE("exact sequence bookkeeping") {
  ExactSequence s;
  s.push("A", 1, 1);
  s.push("B", 2, 1);
  s.push("C", 1, 0);
  CHECK(s.exact());
  CHECK(s.alternating_sum() == 0);
  ExactSequence t = s;
  t.dims[1] = 3;
  CHECK_FALSE(t.exact());
  ExactSequence u;
  u.push("A", 1, 1);
  u.push("B", 1, 1);  // last map must vanish
  CHECK_FALSE(u.exact());
}

TEST_CASE("closed plane curves") {
  auto conic = closed_variety_cohomology({P("x^2+y*z")}, 2, xyz);
  CHECK(conic.betti == Dims{1, 0, 1, 0, 0});
  CHECK(conic.ledger.betti_U == Dims{1, 0, 0, 0, 0});
  CHECK(conic.ledger.chern_zero == std::vector<bool>{false, true, true});
  CHECK(conic.ledger.exact());

  auto ell = closed_variety_cohomology({P("x^2*y+y^2*z+z^2*x")}, 2, xyz);
  CHECK(ell.betti == Dims{1, 2, 1, 0, 0});
  // the first Chern class restricts to zero on the complement
  CHECK(ell.ledger.chern_zero[1]);
  CHECK(ell.ledger.exact());
  CHECK(poincare(ell.betti, 2));

  auto line = closed_variety_cohomology({P("x")}, 2, xyz);
  CHECK(line.betti == Dims{1, 0, 1, 0, 0});
  CHECK(line.ledger.chern_zero == std::vector<bool>{false, true, true});

  auto point = closed_variety_cohomology({P("x"), P("y")}, 2, xyz);
  CHECK(point.betti == Dims{1, 0, 0, 0, 0});
  CHECK(point.ledger.exact());

  CHECK_THROWS_AS(closed_variety_cohomology({Poly(3)}, 2, xyz), MathError);
}

TEST_CASE("compact support in affine space") {
  auto cubic = compact_support_affine({P("x^3+y^3+z^3")}, 3);
  CHECK(cubic.betti_U == Dims{1, 1, 2, 2, 0, 0, 0});
  CHECK(cubic.dims == Dims{0, 0, 2, 2, 1, 0, 0});
  CHECK(cubic.ledger.exact());

  auto origin = compact_support_affine({parse_poly("x", {"x"})}, 1);
  CHECK(origin.dims == Dims{1, 0, 0});

  // the origin of the plane as Var(x, y): the complement is a 3-sphere
  auto o2 = compact_support_affine({parse_poly("x", {"x", "y"}), parse_poly("y", {"x", "y"})}, 2);
  CHECK(o2.betti_U == Dims{1, 0, 0, 1, 0});
  CHECK(o2.dims == Dims{1, 0, 0, 0, 0});

  auto empty = compact_support_affine({parse_poly("1", {"x", "y"})}, 2);
  CHECK(empty.dims == Dims{0, 0, 0, 0, 0});

  // an affine line in the plane has the compact cohomology of R^2
  auto line = compact_support_affine({parse_poly("y-x^2", {"x", "y"})}, 2);
  CHECK(line.dims == Dims{0, 0, 1, 0, 0});
}

TEST_CASE("conic minus two points") {
  auto r = locally_closed_cohomology(P("x^2+y*z"), P("x"), 2, xyz, true);
  CHECK(r.ambient == Dims{1, 0, 1, 0, 1});
  CHECK(r.betti_V == Dims{1, 0, 1, 1, 0});
  CHECK(r.betti_U == Dims{1, 0, 0, 0, 0});
  CHECK(r.local_Z == Dims{0, 0, 0, 0, 2});
  CHECK(r.betti_Z == Dims{2, 0, 0, 0, 0});
  CHECK(r.local_Y == Dims{0, 0, 1, 0, 1});
  CHECK(r.betti_Y == Dims{1, 0, 1, 0, 0});
  CHECK(r.ker_V_to_U == Dims{0, 0, 1, 1, 0});
  CHECK(r.im_P_to_V == Dims{1, 0, 1, 0, 0});
  CHECK(r.betti == Dims{1, 1, 0, 0, 0});
  CHECK(r.ledger.exact());
  CHECK(r.ledger.sequences.size() == 3);

  CHECK_THROWS_AS(locally_closed_cohomology(P("x^2+y*z"), P("x"), 2, xyz, false), MathError);
}

TEST_CASE("elliptic curve minus two points") {
  auto r = locally_closed_cohomology(P("x^2*y+y^2*z+z^2*x"), P("z"), 2, xyz, true);
  CHECK(r.betti_Y == Dims{1, 2, 1, 0, 0});
  CHECK(r.betti_Z == Dims{2, 0, 0, 0, 0});
  CHECK(r.betti[0] == 1);
  CHECK(r.betti[1] == 3);
  CHECK(r.betti[2] == 0);
  CHECK(r.ledger.exact());
}

TEST_CASE("conic minus a tangency point") {
  // y = 0 touches Var(x^2+y*z) only at (0:0:1); the rest is an affine line
  auto r = locally_closed_cohomology(P("x^2+y*z"), P("y"), 2, xyz, true);
  CHECK(r.betti_Z == Dims{1, 0, 0, 0, 0});
  CHECK(r.betti == Dims{1, 0, 0, 0, 0});
  CHECK(r.ledger.exact());
}
