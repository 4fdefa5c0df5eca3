#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "drcoh/charttable.hpp"

using namespace drc;

namespace {

const std::vector<std::string> xyz{"x", "y", "z"};

std::filesystem::path fresh_dir(const std::string& tag) {
  auto d = std::filesystem::temp_directory_path() / ("drcoh_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  return d;
}

Poly random_poly(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> terms(0, 3), exp(0, 2), coef(-5, 5), den(1, 3);
  Poly p(n);
  for (int k = terms(rng); k > 0; --k) {
    Monomial m = mono_zero();
    for (int i = 0; i < n; ++i) m[i] = static_cast<int16_t>(exp(rng));
    Rational c(coef(rng), den(rng));
    c.canonicalize();
    p = p + Poly::term(n, m, c);
  }
  return p;
}

DiffForm random_form(std::mt19937& rng, int n, const Poly& base, int degree) {
  std::uniform_int_distribution<int> power(0, 3);
  DiffForm w(n, base, degree);
  const int p = power(rng);
  for (FormMask k : masks_of_degree(n, degree)) w.add(k, random_poly(rng, n), p);
  return w;
}

}  // namespace

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("form expressions round-trip") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    auto vars = default_names(n, "t");
    Poly base = random_poly(rng, n);
    if (base.is_zero()) base = Poly(n, Rational(1));
    const int q = trial % (n + 1);
    DiffForm w = random_form(rng, n, base, q);
    std::string text = form_expression(w, vars);
    DiffForm back = parse_form_expression(text, q, base, vars);
    CHECK(back == w);
    CHECK(form_expression(back, vars) == text);
  }
  auto st = default_names(2, "t");
  Poly f = parse_poly("t0^2+t1", st);
  DiffForm w = parse_form_expression("1 dt0 : 2*t0 ; dt1 : 1", 1, f, st);
  CHECK(de_rham_d(w).is_zero());
  CHECK_THROWS_AS(parse_form_expression("1 dt1^dt0 : 1", 2, f, st), ParseError);
  CHECK_THROWS_AS(parse_form_expression("1 dt0 : 1", 2, f, st), ParseError);
  CHECK_THROWS_AS(parse_form_expression("1 dq : 1", 1, f, st), ParseError);
}

TEST_CASE("tables of the conic complement round-trip and validate") {
  Cover c = projective_cover(2, {parse_poly("x^2+y*z", xyz)}, xyz);
  auto tables = cover_tables(c);
  REQUIRE(tables.size() == c.pieces.size());
  for (const auto& t : tables) {
    std::string text = serialize(t);
    ChartTable back = parse_chart_table(text);
    CHECK(serialize(back) == text);
    CHECK(back.divisor == t.divisor);
    CHECK(back.seed.forms == t.seed.forms);
    CHECK(back.translations == t.translations);
  }
  // chart z of the conic: one class in degree 1
  const ChartTable& z = tables[c.piece_index(0b100, 0b1)];
  CHECK(z.seed.dims == std::vector<std::size_t>{1, 1, 0});
  CHECK(z.chart == "z|f0");
  // the triple intersection is written in chart x, reached from y and z
  const ChartTable& all = tables[c.piece_index(0b111, 0b1)];
  CHECK(all.translations.size() == 2);
  CHECK(all.translations[0].from == "y");
  CHECK(all.translations[0].to == "x");
}

TEST_CASE("loading rejects damaged tables") {
  Cover c = projective_cover(2, {parse_poly("x^2+y*z", xyz)}, xyz);
  ChartTable t = cover_tables(c)[c.piece_index(0b100, 0b1)];
  std::string good = serialize(t);
  CHECK_NOTHROW(parse_chart_table(good));

  ChartTable open_form = t;
  for (auto& w : open_form.seed.forms)
    if (w.degree() == 1) w = w * Rational(1) + DiffForm::monomial_form(2, w.base(), 1, Poly::variable(2, 1), 0);
  CHECK_THROWS_AS(parse_chart_table(serialize(open_form)), MathError);

  ChartTable doubled = t;
  doubled.seed.forms.push_back(doubled.seed.forms.back() * Rational(2));
  doubled.seed.dims[doubled.seed.forms.back().degree()] += 1;
  CHECK_THROWS_AS(parse_chart_table(serialize(doubled)), MathError);

  ChartTable rehashed = t;
  rehashed.hash = "0000000000000000";
  CHECK_THROWS_AS(parse_chart_table(serialize(rehashed)), MathError);

  std::string bad = good;
  bad.replace(bad.find("divisor "), 8, "divisor (");
  try {
    parse_chart_table(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("chart table line 6") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_chart_table("drcoh-chart-table 1\nvars t0\n"), ParseError);
  CHECK_THROWS_AS(parse_chart_table(good + "extra\n"), ParseError);
}

TEST_CASE("directory cache: warm runs agree with cold runs") {
  auto dir = fresh_dir("cache");
  Poly f = parse_poly("x^2+y*z", xyz);
  Cover cold = projective_cover(2, {f}, xyz);

  DirectoryCache cache(dir);
  CoverOptions opt;
  opt.cache = &cache;
  Cover first = projective_cover(2, {f}, xyz, opt);
  CHECK(cache.hits() == 0);
  const std::size_t stored = cache.misses();
  CHECK(stored > 0);
  CHECK(static_cast<std::size_t>(std::distance(std::filesystem::directory_iterator(dir),
                                               std::filesystem::directory_iterator())) == stored);

  DirectoryCache again(dir);
  opt.cache = &again;
  Cover warm = projective_cover(2, {f}, xyz, opt);
  CHECK(again.hits() == stored);
  CHECK(again.misses() == 0);
  auto bc = open_cohomology(TotalComplex(cold)), bw = open_cohomology(TotalComplex(warm));
  CHECK(bw.betti == bc.betti);
  for (std::size_t k = 0; k < cold.pieces.size(); ++k) CHECK(warm.pieces[k].generators == cold.pieces[k].generators);

  // a corrupted entry is recomputed and rewritten
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ofstream(e.path()) << "garbage\n";
    break;
  }
  DirectoryCache third(dir);
  opt.cache = &third;
  Cover again3 = projective_cover(2, {f}, xyz, opt);
  CHECK(third.misses() == 1);
  CHECK(open_cohomology(TotalComplex(again3)).betti == bc.betti);
  std::filesystem::remove_all(dir);
}
