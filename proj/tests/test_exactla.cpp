#include <random>

#include "doctest.h"
#include "drcoh/exactla.hpp"

using namespace drc;

namespace {

RatMatrix dense(const std::vector<std::vector<long>>& rows) {
  RatMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, Rational(rows[r][c]));
  return m;
}

// Determinant by cofactor expansion; used as an independent rank oracle.
Rational det(const std::vector<std::vector<Rational>>& a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Rational s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Rational>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    Rational t = a[0][j] * det(minor);
    s += (j % 2 == 0) ? t : Rational(-t);
  }
  return s;
}

std::size_t rank_by_minors(const RatMatrix& m) {
  std::size_t best = 0;
  std::size_t R = m.rows(), C = m.cols();
  for (std::size_t k = 1; k <= std::min(R, C); ++k) {
    bool found = false;
    for (unsigned rs = 0; rs < (1u << R) && !found; ++rs) {
      if (static_cast<std::size_t>(__builtin_popcount(rs)) != k) continue;
      for (unsigned cs = 0; cs < (1u << C) && !found; ++cs) {
        if (static_cast<std::size_t>(__builtin_popcount(cs)) != k) continue;
        std::vector<std::vector<Rational>> a;
        for (std::size_t r = 0; r < R; ++r) {
          if (!(rs >> r & 1)) continue;
          std::vector<Rational> row;
          for (std::size_t c = 0; c < C; ++c)
            if (cs >> c & 1) row.push_back(m.at(r, c));
          a.push_back(row);
        }
        if (det(a) != 0) found = true;
      }
    }
    if (found) best = k;
  }
  return best;
}

}  // namespace

TEST_CASE("rank_kernel on small fixed matrices") {
  auto id = dense({{1, 0}, {0, 1}});
  auto rk = rank_kernel(id);
  CHECK(rk.rank == 2);
  CHECK(rk.kernel.empty());

  RatMatrix z(2, 3);
  rk = rank_kernel(z);
  CHECK(rk.rank == 0);
  CHECK(rk.kernel.size() == 3);

  auto p = dense({{1, 2}, {2, 4}});
  rk = rank_kernel(p);
  CHECK(rk.rank == 1);
  REQUIRE(rk.kernel.size() == 1);
  // proportional to (2, -1)
  auto k = dense_from_sparse(rk.kernel[0], 2);
  CHECK(k[0] == -2 * k[1]);

  RatMatrix empty(0, 0);
  CHECK(rank_kernel(empty).rank == 0);
}

TEST_CASE("rank_kernel agrees with minor expansion on random matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> val(-3, 3), dim(1, 4), zero(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t R = dim(rng), C = dim(rng);
    RatMatrix m(R, C);
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t c = 0; c < C; ++c)
        if (zero(rng) != 0) m.set(r, c, Rational(val(rng), 1 + (trial % 3)));
    auto rk = rank_kernel(m);
    CHECK(rk.rank == rank_by_minors(m));
    CHECK(rk.rank + rk.kernel.size() == C);
    CHECK(rk.rank == matrix_rank(m.transpose()));
    for (const auto& v : rk.kernel) CHECK(m.apply(v).empty());
    EchelonBasis eb;
    for (const auto& v : rk.kernel) CHECK(eb.insert(v));
  }
}

TEST_CASE("echelon basis coordinates reproduce the vector") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> val(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SparseVec> vs;
    EchelonBasis eb;
    for (int i = 0; i < 4; ++i) {
      std::vector<Rational> d(6);
      for (auto& x : d) x = Rational(val(rng), 1 + (i % 2));
      vs.push_back(sparse_from_dense(d));
      eb.insert(vs.back());
    }
    SparseVec comb;
    for (std::size_t i = 0; i < vs.size(); ++i) comb = sparse_axpy(comb, Rational(int(i) - 2, 3), vs[i]);
    auto co = eb.coordinates(comb);
    REQUIRE(co.has_value());
    SparseVec back;
    for (const auto& [tag, c] : *co) back = sparse_axpy(back, c, vs[tag]);
    CHECK(back == comb);
  }
}

TEST_CASE("subquotient basics") {
  SparseVec e1{{0, Rational(1)}}, e2{{1, Rational(1)}};
  Subquotient q(2, {e1, e2}, {e1});
  CHECK(q.dim() == 1);
  CHECK(q.representatives()[0] == e2);
  auto r = q.reduce(sparse_axpy(e1, Rational(3), e2));
  CHECK(r[0] == 3);
  CHECK(q.reduce(q.representatives()[0])[0] == 1);

  Subquotient z(2, {e1}, {e1});
  CHECK(z.dim() == 0);
  CHECK_THROWS_AS(Subquotient(2, {e1}, {e2}), MathError);
}

TEST_CASE("complex cohomology of a small complex") {
  // Q -> Q^2 -> Q, d0 = (1,1)^T, d1 = (1,-1): exact in the middle.
  RatMatrix d0(2, 1), d1(1, 2);
  d0.set(0, 0, 1);
  d0.set(1, 0, 1);
  d1.set(0, 0, 1);
  d1.set(0, 1, -1);
  auto cc = complex_cohomology(0, {1, 2, 1}, {d0, d1});
  CHECK(cc.h[0].dim() == 0);
  CHECK(cc.h[1].dim() == 0);
  CHECK(cc.h[2].dim() == 0);
  RatMatrix zero(2, 1);
  cc = complex_cohomology(0, {1, 2, 1}, {zero, d1});
  CHECK(cc.h[0].dim() == 1);
  CHECK(cc.h[1].dim() == 1);
  CHECK(cc.h[2].dim() == 0);
}
