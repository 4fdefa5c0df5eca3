#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "drcoh/exactla.hpp"
#include "drcoh/weyl.hpp"

/// Gröbner bases for left ideals and left submodules of free modules over
/// Weyl-type algebras: D_n, D_n[central parameters], the homogenized
/// Weyl algebra (d x = x d + h^2) and D_n<s, d_t> with d_t s = (s - 1) d_t.
namespace drc::gb {

constexpr int kVars = 16;
using Exp = std::array<uint16_t, kVars>;

Exp exp_zero();
Exp exp_add(const Exp& a, const Exp& b);
Exp exp_sub(const Exp& a, const Exp& b);
Exp exp_lcm(const Exp& a, const Exp& b);
bool exp_divides(const Exp& a, const Exp& b);

/// Variable layout: x_i at i, d_i at nweyl + i (i < nweyl), then the
/// remaining variables; h (if any) is central and appears squared in the
/// commutator; the shift pair (s, dt) satisfies dt s = (s - 1) dt.
struct Algebra {
  int nweyl = 0;
  int nvars = 0;
  int h = -1;
  int shift_s = -1;
  int shift_dt = -1;

  /// D_n with ncentral central parameters after the d's, and h last if
  /// homogenized.
  static Algebra weyl(int n, int ncentral = 0, bool homogenized = false);
};

struct Term {
  Exp e;
  int pos;
  Integer c;
};

/// Element of a free module (pos = basis index; ideals use pos 0).
/// Terms are kept sorted in decreasing order for the order in use.
using Vec = std::vector<Term>;

class Order {
 public:
  virtual ~Order() = default;
  /// Positive if (a, pa) > (b, pb), negative if smaller, zero if equal.
  virtual int cmp(const Exp& a, int pa, const Exp& b, int pb) const = 0;
};

/// Matrix order: weight rows (with optional per-position shifts), then
/// reverse lexicographic comparison over `revlex` (the last listed
/// variable is compared first; smaller exponent wins), then position
/// (smaller index is larger).
class WeightOrder : public Order {
 public:
  struct Row {
    std::vector<long> w;      // per variable
    std::vector<long> shift;  // per position (may be empty)
  };
  WeightOrder(std::vector<Row> rows, std::vector<int> revlex);
  int cmp(const Exp& a, int pa, const Exp& b, int pb) const override;
  long row_value(std::size_t r, const Exp& a, int pa) const;

 private:
  std::vector<Row> rows_;
  std::vector<int> revlex_;
};

/// Order induced on syzygies of a family g_1..g_m: (a, i) compares as
/// a * lead(g_i) in the previous order, ties broken by the index i
/// (smaller index is larger).
class SchreyerOrder : public Order {
 public:
  SchreyerOrder(std::shared_ptr<const Order> prev, std::vector<std::pair<Exp, int>> leads);
  int cmp(const Exp& a, int pa, const Exp& b, int pb) const override;
  const std::vector<std::pair<Exp, int>>& leads() const { return leads_; }

 private:
  std::shared_ptr<const Order> prev_;
  std::vector<std::pair<Exp, int>> leads_;
};

/// Plain lexicographic order on (pos, exponents); used for bookkeeping.
class LexOrder : public Order {
 public:
  int cmp(const Exp& a, int pa, const Exp& b, int pb) const override;
};

void sort_vec(Vec& v, const Order& o);
Integer vec_content(const Vec& v);
/// Divide by the content and make the leading coefficient positive.
/// Returns the (signed) factor divided out.
Integer make_primitive(Vec& v);
/// a*p - b*q for sorted p, q.
Vec combine(const Integer& a, const Vec& p, const Integer& b, const Vec& q, const Order& o);
/// c * x^e * p (left multiplication), sorted.
Vec left_mul_mono(const Algebra& alg, const Exp& e, const Integer& c, const Vec& p, const Order& o);
/// a * p for an algebra element a (pos ignored), sorted.
Vec left_mul(const Algebra& alg, const Vec& a, const Vec& p, const Order& o);

/// Representation coefficients of an element in terms of some fixed
/// family, as a module element with a rational multiplier.
struct Rep {
  Vec v;
  Rational mult = 1;
  bool empty() const { return v.empty(); }
};

struct Options {
  bool chain_criterion = true;
  long max_steps = 2000000;  // reduction steps
  bool track = false;        // maintain representations in the inputs
  std::vector<bool> tracked_inputs;  // if nonempty, only these inputs are tracked
};

struct Element {
  Vec v;
  Rep rep;
};

/// Buchberger's algorithm with the normal selection strategy.
class Groebner {
 public:
  Groebner(Algebra alg, std::shared_ptr<const Order> order, Options opts = {});

  /// Input generator. Returns its input index.
  int add_input(Vec v);
  void run();

  const Algebra& algebra() const { return alg_; }
  const Order& order() const { return *order_; }
  std::shared_ptr<const Order> order_ptr() const { return order_; }
  /// Reduced Gröbner basis, sorted by increasing leading term.
  const std::vector<Element>& basis() const { return basis_; }
  /// Full normal form with respect to the basis (content removed).
  Vec normal_form(const Vec& p) const;
  bool reduces_to_zero(const Vec& p) const { return normal_form(p).empty(); }
  long steps() const { return steps_; }

 private:
  struct Pair {
    int i, j;
    Exp lcm;
    int pos;
  };

  void add_element(Element el);
  void reduce_element(Element& el, bool full, const std::vector<Element>& by, bool count);
  void interreduce();

  Algebra alg_;
  std::shared_ptr<const Order> order_;
  Options opts_;
  std::vector<Element> inputs_;
  std::vector<Element> work_;
  std::vector<bool> live_;
  std::vector<Pair> pairs_;
  std::vector<Element> basis_;
  long steps_ = 0;
};

/// Top/full reduction of p by a family (no tracking).
Vec reduce_by(const Algebra& alg, const Order& o, const Vec& p, const std::vector<Vec>& by, bool full);

/// Full reduction keeping track of scaling: r = mu * p modulo the family.
Vec reduce_by_scaled(const Algebra& alg, const Order& o, const Vec& p, const std::vector<Vec>& by,
                     Rational& mu);

/// Syzygies of a Gröbner basis G (module elements over `order`) computed
/// from S-pairs; the result is a Gröbner basis of the syzygy module for
/// `syz_order` (which must be the Schreyer order of G's leading terms).
/// Syzygies with non-minimal leading terms are dropped.
std::vector<Vec> schreyer_syzygies(const Algebra& alg, const std::vector<Vec>& G,
                                   const Order& order, const Order& syz_order, long max_steps);

/// Replace h by 1 and drop h from the layout positions (h keeps its slot
/// with exponent 0). Result sorted for order o.
Vec dehomogenize_h(const Algebra& alg, const Vec& v, const Order& o);
/// Multiply terms by powers of h so every term has the same degree
/// deg(term) + shift[pos].
Vec homogenize_h(const Algebra& alg, const Vec& v, const std::vector<long>& shifts, const Order& o);
long h_degree(const Algebra& alg, const Term& t, const std::vector<long>& shifts);

// Conversions between WeylElement (x, d, central parameters) and the
// engine layout of Algebra::weyl(n, ncentral, homogenized).
Vec to_vec(const Algebra& alg, const WeylElement& a, int pos, const Order& o);
/// Clears denominators; returns the positive integer multiplier used.
Vec to_vec_scaled(const Algebra& alg, const WeylElement& a, int pos, const Order& o, Integer* mult);
WeylElement to_weyl(const Algebra& alg, const Vec& v, int n, int ncentral, int pos = -1);

}  // namespace drc::gb
