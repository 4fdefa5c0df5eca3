#include "drcoh/groebner.hpp"

#include <algorithm>

namespace drc::gb {

Exp exp_zero() {
  Exp e;
  e.fill(0);
  return e;
}

Exp exp_add(const Exp& a, const Exp& b) {
  Exp r;
  for (int i = 0; i < kVars; ++i) r[i] = static_cast<uint16_t>(a[i] + b[i]);
  return r;
}

Exp exp_sub(const Exp& a, const Exp& b) {
  Exp r;
  for (int i = 0; i < kVars; ++i) r[i] = static_cast<uint16_t>(a[i] - b[i]);
  return r;
}

Exp exp_lcm(const Exp& a, const Exp& b) {
  Exp r;
  for (int i = 0; i < kVars; ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool exp_divides(const Exp& a, const Exp& b) {
  for (int i = 0; i < kVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Algebra Algebra::weyl(int n, int ncentral, bool homogenized) {
  Algebra a;
  a.nweyl = n;
  a.nvars = 2 * n + ncentral + (homogenized ? 1 : 0);
  a.h = homogenized ? 2 * n + ncentral : -1;
  if (a.nvars > kVars) throw MathError("algebra has too many variables");
  return a;
}

// ---------------------------------------------------------------------------

WeightOrder::WeightOrder(std::vector<Row> rows, std::vector<int> revlex)
    : rows_(std::move(rows)), revlex_(std::move(revlex)) {}

long WeightOrder::row_value(std::size_t r, const Exp& a, int pa) const {
  const Row& row = rows_[r];
  long s = 0;
  for (std::size_t i = 0; i < row.w.size(); ++i) s += row.w[i] * a[i];
  if (pa >= 0 && static_cast<std::size_t>(pa) < row.shift.size()) s += row.shift[pa];
  return s;
}

int WeightOrder::cmp(const Exp& a, int pa, const Exp& b, int pb) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    long x = row_value(r, a, pa), y = row_value(r, b, pb);
    if (x != y) return x > y ? 1 : -1;
  }
  for (auto it = revlex_.rbegin(); it != revlex_.rend(); ++it) {
    if (a[*it] != b[*it]) return a[*it] < b[*it] ? 1 : -1;
  }
  if (pa != pb) return pa < pb ? 1 : -1;
  return 0;
}

SchreyerOrder::SchreyerOrder(std::shared_ptr<const Order> prev,
                             std::vector<std::pair<Exp, int>> leads)
    : prev_(std::move(prev)), leads_(std::move(leads)) {}

int SchreyerOrder::cmp(const Exp& a, int pa, const Exp& b, int pb) const {
  const auto& la = leads_[pa];
  const auto& lb = leads_[pb];
  int c = prev_->cmp(exp_add(a, la.first), la.second, exp_add(b, lb.first), lb.second);
  if (c != 0) return c;
  if (pa != pb) return pa < pb ? 1 : -1;
  return 0;
}

int LexOrder::cmp(const Exp& a, int pa, const Exp& b, int pb) const {
  if (pa != pb) return pa < pb ? 1 : -1;
  for (int i = 0; i < kVars; ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  return 0;
}

namespace {

const LexOrder& lex_order() {
  static const LexOrder o;
  return o;
}

Integer pair_coeff(int b, int c, int k) {
  Integer r, t;
  mpz_bin_uiui(r.get_mpz_t(), b, k);
  mpz_bin_uiui(t.get_mpz_t(), c, k);
  r *= t;
  mpz_fac_ui(t.get_mpz_t(), k);
  r *= t;
  return r;
}

// Product of monomials a * b in the algebra, as normally ordered terms.
void mono_mul(const Algebra& alg, const Exp& a, const Exp& b,
              std::vector<std::pair<Exp, Integer>>& out) {
  out.clear();
  out.emplace_back(exp_add(a, b), Integer(1));
  const int n = alg.nweyl;
  for (int i = 0; i < n; ++i) {
    int bd = a[n + i], cx = b[i];
    if (bd == 0 || cx == 0) continue;
    std::vector<std::pair<Exp, Integer>> next;
    int kmax = std::min(bd, cx);
    next.reserve(out.size() * (kmax + 1));
    for (const auto& [e, c] : out) {
      for (int k = 0; k <= kmax; ++k) {
        Exp t = e;
        t[i] = static_cast<uint16_t>(t[i] - k);
        t[n + i] = static_cast<uint16_t>(t[n + i] - k);
        if (alg.h >= 0) t[alg.h] = static_cast<uint16_t>(t[alg.h] + 2 * k);
        next.emplace_back(t, k == 0 ? c : Integer(c * pair_coeff(bd, cx, k)));
      }
    }
    out.swap(next);
  }
  if (alg.shift_s >= 0) {
    int l = a[alg.shift_dt], k = b[alg.shift_s];
    if (l > 0 && k > 0) {
      // dt^l s^k = (s - l)^k dt^l
      std::vector<std::pair<Exp, Integer>> next;
      for (const auto& [e, c] : out) {
        for (int j = 0; j <= k; ++j) {
          Exp t = e;
          t[alg.shift_s] = static_cast<uint16_t>(t[alg.shift_s] - k + j);
          Integer coef, pw;
          mpz_bin_uiui(coef.get_mpz_t(), k, j);
          mpz_ui_pow_ui(pw.get_mpz_t(), l, k - j);
          if ((k - j) % 2) pw = -pw;
          next.emplace_back(t, c * coef * pw);
        }
      }
      out.swap(next);
    }
  }
}

void normalize_sorted_dups(Vec& v, const Order& o) {
  std::stable_sort(v.begin(), v.end(), [&](const Term& x, const Term& y) {
    return o.cmp(x.e, x.pos, y.e, y.pos) > 0;
  });
  Vec out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && out.back().pos == t.pos && out.back().e == t.e) {
      out.back().c += t.c;
    } else {
      if (!out.empty() && sgn(out.back().c) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().c) == 0) out.pop_back();
  v.swap(out);
}

}  // namespace

void sort_vec(Vec& v, const Order& o) { normalize_sorted_dups(v, o); }

Integer vec_content(const Vec& v) {
  Integer g = 0;
  for (const auto& t : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Integer make_primitive(Vec& v) {
  if (v.empty()) return 1;
  Integer g = vec_content(v);
  if (sgn(v.front().c) < 0) g = -g;
  if (g != 1)
    for (auto& t : v) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
  return g;
}

Vec combine(const Integer& a, const Vec& p, const Integer& b, const Vec& q, const Order& o) {
  Vec out;
  out.reserve(p.size() + q.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < q.size()) {
    int c;
    if (i == p.size()) c = -1;
    else if (j == q.size()) c = 1;
    else c = o.cmp(p[i].e, p[i].pos, q[j].e, q[j].pos);
    if (c > 0) {
      out.push_back(Term{p[i].e, p[i].pos, a * p[i].c});
      ++i;
    } else if (c < 0) {
      out.push_back(Term{q[j].e, q[j].pos, -b * q[j].c});
      ++j;
    } else {
      Integer s = a * p[i].c - b * q[j].c;
      if (sgn(s) != 0) out.push_back(Term{p[i].e, p[i].pos, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

Vec left_mul_mono(const Algebra& alg, const Exp& e, const Integer& c, const Vec& p, const Order& o) {
  Vec out;
  out.reserve(p.size());
  std::vector<std::pair<Exp, Integer>> prod;
  bool sorted = true;
  for (const auto& t : p) {
    mono_mul(alg, e, t.e, prod);
    if (prod.size() > 1) sorted = false;
    for (auto& [pe, pc] : prod) out.push_back(Term{pe, t.pos, c * t.c * pc});
  }
  if (!sorted) normalize_sorted_dups(out, o);
  else {
    // Leading products keep the order (the orders in use are multiplicative).
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return sgn(t.c) == 0; }),
              out.end());
  }
  return out;
}

Vec left_mul(const Algebra& alg, const Vec& a, const Vec& p, const Order& o) {
  Vec out;
  std::vector<std::pair<Exp, Integer>> prod;
  for (const auto& s : a)
    for (const auto& t : p) {
      mono_mul(alg, s.e, t.e, prod);
      for (auto& [pe, pc] : prod) out.push_back(Term{pe, t.pos, s.c * t.c * pc});
    }
  normalize_sorted_dups(out, o);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// alpha * (m1 * r1) + beta * (m2 * r2)
Rep rep_combine(const Algebra& alg, const Rational& alpha, const Exp& m1, const Rep& r1,
                const Rational& beta, const Exp& m2, const Rep& r2) {
  Rational A = alpha * r1.mult, B = beta * r2.mult;
  Integer L;
  mpz_lcm(L.get_mpz_t(), A.get_den_mpz_t(), B.get_den_mpz_t());
  Integer ai = A.get_num() * (L / A.get_den());
  Integer bi = B.get_num() * (L / B.get_den());
  const Order& o = lex_order();
  Vec v1 = (r1.v.empty() || sgn(ai) == 0) ? Vec{} : left_mul_mono(alg, m1, 1, r1.v, o);
  Vec v2 = (r2.v.empty() || sgn(bi) == 0) ? Vec{} : left_mul_mono(alg, m2, 1, r2.v, o);
  Rep out;
  out.v = combine(ai, v1, -bi, v2, o);
  Integer g = make_primitive(out.v);
  out.mult = Rational(g) / Rational(L);
  out.mult.canonicalize();
  return out;
}

struct Reducer {
  const Vec* v;
  const Rep* rep;
};

// Reduce p (with optional representation) by the reducers.
void reduce_core(const Algebra& alg, const Order& o, Vec& p, Rep* rep,
                 const std::vector<Reducer>& by, bool full, long& steps, long max_steps) {
  std::size_t k = 0;
  int since_content = 0;
  while (k < p.size()) {
    const Term& t = p[k];
    const Reducer* red = nullptr;
    for (const auto& r : by) {
      const Term& l = r.v->front();
      if (l.pos == t.pos && exp_divides(l.e, t.e)) {
        red = &r;
        break;
      }
    }
    if (!red) {
      if (!full) break;
      ++k;
      continue;
    }
    if (++steps > max_steps) throw ResourceLimit("groebner", "reduction step limit exceeded");
    const Term& l = red->v->front();
    Exp q = exp_sub(t.e, l.e);
    Vec qg = left_mul_mono(alg, q, 1, *red->v, o);
    Integer g;
    mpz_gcd(g.get_mpz_t(), t.c.get_mpz_t(), l.c.get_mpz_t());
    Integer a = l.c / g, b = t.c / g;
    if (sgn(a) < 0) {
      a = -a;
      b = -b;
    }
    if (rep) {
      *rep = rep_combine(alg, Rational(a), exp_zero(), *rep, Rational(-b), q, *red->rep);
    }
    p = combine(a, p, b, qg, o);
    if (++since_content >= 4) {
      since_content = 0;
      Integer c = vec_content(p);
      if (c > 1) {
        for (auto& x : p) mpz_divexact(x.c.get_mpz_t(), x.c.get_mpz_t(), c.get_mpz_t());
        if (rep) rep->mult /= Rational(c);
      }
    }
  }
  if (!p.empty()) {
    Integer c = make_primitive(p);
    if (rep) rep->mult /= Rational(c);
  }
}

}  // namespace

Vec reduce_by(const Algebra& alg, const Order& o, const Vec& p, const std::vector<Vec>& by, bool full) {
  std::vector<Reducer> rs;
  for (const auto& v : by)
    if (!v.empty()) rs.push_back(Reducer{&v, nullptr});
  Vec r = p;
  long steps = 0;
  reduce_core(alg, o, r, nullptr, rs, full, steps, 100000000);
  return r;
}

Vec reduce_by_scaled(const Algebra& alg, const Order& o, const Vec& p, const std::vector<Vec>& by,
                     Rational& mu) {
  static const Rep none;
  std::vector<Reducer> rs;
  for (const auto& v : by)
    if (!v.empty()) rs.push_back(Reducer{&v, &none});
  Vec r = p;
  Rep self;
  self.v.push_back(Term{exp_zero(), 0, Integer(1)});
  long steps = 0;
  reduce_core(alg, o, r, &self, rs, true, steps, 100000000);
  mu = self.mult * Rational(self.v.front().c);
  return r;
}

// ---------------------------------------------------------------------------

Groebner::Groebner(Algebra alg, std::shared_ptr<const Order> order, Options opts)
    : alg_(alg), order_(std::move(order)), opts_(std::move(opts)) {}

int Groebner::add_input(Vec v) {
  sort_vec(v, *order_);
  Element el;
  int idx = static_cast<int>(inputs_.size());
  bool tracked = opts_.track &&
                 (opts_.tracked_inputs.empty() ||
                  (static_cast<std::size_t>(idx) < opts_.tracked_inputs.size() &&
                   opts_.tracked_inputs[idx]));
  Integer g = make_primitive(v);
  el.v = std::move(v);
  if (tracked) {
    el.rep.v.push_back(Term{exp_zero(), idx, Integer(1)});
    el.rep.mult = Rational(1) / Rational(g);
  }
  inputs_.push_back(std::move(el));
  return idx;
}

void Groebner::reduce_element(Element& el, bool full, const std::vector<Element>& by, bool count) {
  std::vector<Reducer> rs;
  for (std::size_t i = 0; i < by.size(); ++i)
    if ((&by != &work_ || live_[i]) && !by[i].v.empty()) rs.push_back(Reducer{&by[i].v, &by[i].rep});
  long dummy = 0;
  reduce_core(alg_, *order_, el.v, opts_.track ? &el.rep : nullptr, rs, full,
              count ? steps_ : dummy, count ? opts_.max_steps : 100000000);
}

void Groebner::add_element(Element el) {
  const int k = static_cast<int>(work_.size());
  work_.push_back(std::move(el));
  live_.push_back(true);
  const Exp lmk = work_[k].v.front().e;
  const int posk = work_[k].v.front().pos;

  // Candidate new pairs.
  std::vector<Pair> cand;
  for (int i = 0; i < k; ++i) {
    if (!live_[i]) continue;
    const Term& li = work_[i].v.front();
    if (li.pos != posk) continue;
    cand.push_back(Pair{i, k, exp_lcm(li.e, lmk), posk});
  }
  if (opts_.chain_criterion) {
    // B_k: drop old pairs whose lcm is a proper multiple via the new element.
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (const auto& pr : pairs_) {
      if (pr.pos == posk && exp_divides(lmk, pr.lcm)) {
        Exp lik = exp_lcm(work_[pr.i].v.front().e, lmk);
        Exp ljk = exp_lcm(work_[pr.j].v.front().e, lmk);
        if (lik != pr.lcm && ljk != pr.lcm) continue;
      }
      kept.push_back(pr);
    }
    pairs_.swap(kept);
    // M and F criteria on the new pairs.
    std::vector<bool> alive(cand.size(), true);
    std::vector<Pair> chosen;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      bool drop = false;
      for (std::size_t b = 0; b < cand.size() && !drop; ++b) {
        if (a == b || !alive[b]) continue;
        if (exp_divides(cand[b].lcm, cand[a].lcm)) drop = true;
      }
      if (drop) alive[a] = false;
      else chosen.push_back(cand[a]);
    }
    cand.swap(chosen);
  }
  for (auto& p : cand) pairs_.push_back(p);
  // Elements whose leading term is a multiple of the new one leave the basis.
  for (int i = 0; i < k; ++i) {
    if (!live_[i]) continue;
    const Term& li = work_[i].v.front();
    if (li.pos == posk && exp_divides(lmk, li.e)) live_[i] = false;
  }
}

void Groebner::run() {
  for (auto& in : inputs_) {
    if (in.v.empty()) continue;
    Element el = in;
    reduce_element(el, true, work_, true);
    if (!el.v.empty()) add_element(std::move(el));
  }
  while (!pairs_.empty()) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < pairs_.size(); ++a) {
      int c = order_->cmp(pairs_[a].lcm, pairs_[a].pos, pairs_[best].lcm, pairs_[best].pos);
      if (c < 0 || (c == 0 && (pairs_[a].j < pairs_[best].j ||
                               (pairs_[a].j == pairs_[best].j && pairs_[a].i < pairs_[best].i))))
        best = a;
    }
    Pair pr = pairs_[best];
    pairs_.erase(pairs_.begin() + best);
    const Element& gi = work_[pr.i];
    const Element& gj = work_[pr.j];
    Exp mi = exp_sub(pr.lcm, gi.v.front().e);
    Exp mj = exp_sub(pr.lcm, gj.v.front().e);
    Integer g;
    mpz_gcd(g.get_mpz_t(), gi.v.front().c.get_mpz_t(), gj.v.front().c.get_mpz_t());
    Integer ci = gi.v.front().c / g, cj = gj.v.front().c / g;
    Vec a = left_mul_mono(alg_, mi, cj, gi.v, *order_);
    Vec b = left_mul_mono(alg_, mj, ci, gj.v, *order_);
    Element s;
    s.v = combine(1, a, 1, b, *order_);
    if (opts_.track)
      s.rep = rep_combine(alg_, Rational(cj), mi, gi.rep, Rational(-ci), mj, gj.rep);
    if (s.v.empty()) continue;
    Integer c = make_primitive(s.v);
    if (opts_.track) s.rep.mult /= Rational(c);
    reduce_element(s, true, work_, true);
    if (!s.v.empty()) add_element(std::move(s));
  }
  interreduce();
}

void Groebner::interreduce() {
  std::vector<Element> minimal;
  std::vector<int> idx;
  for (std::size_t i = 0; i < work_.size(); ++i) {
    if (!live_[i]) continue;
    const Term& li = work_[i].v.front();
    bool redundant = false;
    for (std::size_t j = 0; j < work_.size() && !redundant; ++j) {
      if (j == i || !live_[j]) continue;
      const Term& lj = work_[j].v.front();
      if (lj.pos == li.pos && exp_divides(lj.e, li.e) && (lj.e != li.e || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(work_[i]);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const Element& x, const Element& y) {
    return order_->cmp(x.v.front().e, x.v.front().pos, y.v.front().e, y.v.front().pos) < 0;
  });
  // Tail reduction: each element by all others (leading terms are minimal).
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Reducer> rs;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) rs.push_back(Reducer{&minimal[j].v, &minimal[j].rep});
    Element& el = minimal[i];
    // The head is irreducible by the others, so full reduction only
    // touches the tail.
    long dummy = 0;
    reduce_core(alg_, *order_, el.v, opts_.track ? &el.rep : nullptr, rs, true, dummy, 100000000);
  }
  basis_ = std::move(minimal);
}

Vec Groebner::normal_form(const Vec& p) const {
  std::vector<Reducer> rs;
  for (const auto& el : basis_) rs.push_back(Reducer{&el.v, nullptr});
  Vec r = p;
  sort_vec(r, *order_);
  long steps = 0;
  reduce_core(alg_, *order_, r, nullptr, rs, true, steps, opts_.max_steps);
  return r;
}

// ---------------------------------------------------------------------------

std::vector<Vec> schreyer_syzygies(const Algebra& alg, const std::vector<Vec>& G,
                                   const Order& order, const Order& syz_order, long max_steps) {
  struct Cand {
    int i, j;
    Exp mi, mj;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < static_cast<int>(G.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(G.size()); ++j) {
      const Term& li = G[i].front();
      const Term& lj = G[j].front();
      if (li.pos != lj.pos) continue;
      Exp l = exp_lcm(li.e, lj.e);
      cands.push_back(Cand{i, j, exp_sub(l, li.e), exp_sub(l, lj.e)});
    }
  // Keep minimal leading terms (mi, i).
  std::vector<Cand> keep;
  for (std::size_t a = 0; a < cands.size(); ++a) {
    bool drop = false;
    for (std::size_t b = 0; b < cands.size() && !drop; ++b) {
      if (a == b || cands[a].i != cands[b].i) continue;
      if (exp_divides(cands[b].mi, cands[a].mi) && (cands[b].mi != cands[a].mi || b < a)) drop = true;
    }
    if (!drop) keep.push_back(cands[a]);
  }
  std::vector<Rep> units(G.size());
  std::vector<Reducer> rs;
  for (std::size_t k = 0; k < G.size(); ++k) {
    units[k].v.push_back(Term{exp_zero(), static_cast<int>(k), Integer(1)});
    rs.push_back(Reducer{&G[k], &units[k]});
  }
  std::vector<Vec> out;
  long steps = 0;
  for (const auto& c : keep) {
    const Term& li = G[c.i].front();
    const Term& lj = G[c.j].front();
    Integer g;
    mpz_gcd(g.get_mpz_t(), li.c.get_mpz_t(), lj.c.get_mpz_t());
    Integer ci = li.c / g, cj = lj.c / g;
    Vec a = left_mul_mono(alg, c.mi, cj, G[c.i], order);
    Vec b = left_mul_mono(alg, c.mj, ci, G[c.j], order);
    Vec s = combine(1, a, 1, b, order);
    Rep rep;
    rep.v = combine(1, Vec{Term{c.mi, c.i, cj}}, 1, Vec{Term{c.mj, c.j, ci}}, lex_order());
    rep.mult = 1;
    reduce_core(alg, order, s, &rep, rs, false, steps, max_steps);
    if (!s.empty()) throw MathError("schreyer_syzygies: input is not a Groebner basis");
    Vec syz = rep.v;
    sort_vec(syz, syz_order);
    make_primitive(syz);
    if (syz.empty() || syz.front().pos != c.i || syz.front().e != c.mi)
      throw MathError("schreyer_syzygies: unexpected leading term");
    out.push_back(std::move(syz));
  }
  std::sort(out.begin(), out.end(), [&](const Vec& x, const Vec& y) {
    return syz_order.cmp(x.front().e, x.front().pos, y.front().e, y.front().pos) < 0;
  });
  return out;
}

// ---------------------------------------------------------------------------

Vec dehomogenize_h(const Algebra& alg, const Vec& v, const Order& o) {
  Vec out = v;
  if (alg.h >= 0)
    for (auto& t : out) t.e[alg.h] = 0;
  sort_vec(out, o);
  return out;
}

long h_degree(const Algebra& alg, const Term& t, const std::vector<long>& shifts) {
  long d = 0;
  for (int i = 0; i < alg.nvars; ++i) d += t.e[i];
  if (t.pos >= 0 && static_cast<std::size_t>(t.pos) < shifts.size()) d += shifts[t.pos];
  return d;
}

Vec homogenize_h(const Algebra& alg, const Vec& v, const std::vector<long>& shifts, const Order& o) {
  if (alg.h < 0) throw MathError("homogenize_h: algebra has no h");
  long top = 0;
  bool first = true;
  for (const auto& t : v) {
    long d = h_degree(alg, t, shifts);
    if (first || d > top) top = d;
    first = false;
  }
  Vec out = v;
  for (auto& t : out) t.e[alg.h] = static_cast<uint16_t>(t.e[alg.h] + (top - h_degree(alg, t, shifts)));
  sort_vec(out, o);
  return out;
}

Vec to_vec_scaled(const Algebra& alg, const WeylElement& a, int pos, const Order& o, Integer* mult) {
  Integer l = 1;
  for (const auto& [m, c] : a.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  Vec v;
  const int n = a.n();
  if (n != alg.nweyl) throw MathError("to_vec: algebra mismatch");
  for (const auto& [m, c] : a.terms()) {
    Exp e = exp_zero();
    for (int i = 0; i < a.nvars(); ++i) {
      if (m[i] < 0) throw MathError("to_vec: negative exponent");
      e[i] = static_cast<uint16_t>(m[i]);
    }
    v.push_back(Term{e, pos, Integer(c.get_num() * (l / c.get_den()))});
  }
  sort_vec(v, o);
  if (mult) *mult = l;
  return v;
}

Vec to_vec(const Algebra& alg, const WeylElement& a, int pos, const Order& o) {
  return to_vec_scaled(alg, a, pos, o, nullptr);
}

WeylElement to_weyl([[maybe_unused]] const Algebra& alg, const Vec& v, int n, int ncentral, int pos) {
  WeylElement r(n, ncentral);
  for (const auto& t : v) {
    if (pos >= 0 && t.pos != pos) continue;
    Monomial m = mono_zero();
    for (int i = 0; i < 2 * n + ncentral; ++i) m[i] = static_cast<int16_t>(t.e[i]);
    r.add_term(m, Rational(t.c));
  }
  return r;
}

}  // namespace drc::gb
