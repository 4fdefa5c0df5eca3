#include "drcoh/dmod.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>

#include "drcoh/groebner.hpp"

namespace drc {

namespace {

// Total-degree order with reverse lexicographic tie break on all variables.
std::shared_ptr<gb::WeightOrder> degree_order(const gb::Algebra& alg) {
  std::vector<long> w(alg.nvars, 1);
  std::vector<int> rl;
  for (int i = 0; i < alg.nvars; ++i) rl.push_back(i);
  return std::make_shared<gb::WeightOrder>(std::vector<gb::WeightOrder::Row>{{w, {}}}, rl);
}

Integer denominator_lcm(const Poly& f) {
  Integer l = 1;
  for (const auto& [m, c] : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

gb::Exp exp_of(const Monomial& m, int nvars) {
  gb::Exp e = gb::exp_zero();
  for (int i = 0; i < nvars; ++i) {
    if (m[i] < 0) throw MathError("negative exponent in operator");
    e[i] = static_cast<uint16_t>(m[i]);
  }
  return e;
}

Poly s_var(int n) { return Poly::variable(n + 1, n); }

}  // namespace

FsValue apply_to_fs(const WeylElement& op, const Poly& f, const FsValue& v) {
  const int n = op.n();
  std::vector<Poly> df;
  for (int i = 0; i < n; ++i) df.push_back(f.derivative(i));
  const Poly s = s_var(n);
  std::map<Monomial, FsValue> cache;
  cache.emplace(mono_zero(), v);
  std::function<const FsValue&(const Monomial&)> deriv = [&](const Monomial& b) -> const FsValue& {
    auto it = cache.find(b);
    if (it != cache.end()) return it->second;
    int i = 0;
    while (b[i] == 0) ++i;
    Monomial prev = b;
    prev[i] = static_cast<int16_t>(prev[i] - 1);
    const FsValue& p = deriv(prev);
    FsValue next;
    next.g = p.g.derivative(i) * f + (s + Poly(n + 1, Rational(p.e))) * p.g * df[i];
    next.e = p.e - 1;
    return cache.emplace(b, std::move(next)).first->second;
  };
  std::vector<std::pair<Poly, long>> parts;
  long low = v.e;
  for (const auto& [m, c] : op.terms()) {
    Monomial b = mono_zero(), xs = mono_zero();
    for (int i = 0; i < n; ++i) {
      b[i] = m[n + i];
      xs[i] = m[i];
    }
    if (op.ncentral() > 0) xs[n] = m[2 * n];
    const FsValue& d = deriv(b);
    parts.emplace_back(d.g.mul_monomial(xs) * c, d.e);
    low = std::min(low, d.e);
  }
  FsValue out;
  out.g = Poly(n + 1);
  out.e = low;
  for (const auto& [g, e] : parts) out.g += g * f.pow(static_cast<int>(e - low));
  return out;
}

bool fs_equal(const FsValue& a, const FsValue& b, const Poly& f) {
  long low = std::min(a.e, b.e);
  Poly x = a.g * f.pow(static_cast<int>(a.e - low));
  Poly y = b.g * f.pow(static_cast<int>(b.e - low));
  return (x - y).is_zero();
}

std::vector<WeylElement> ann_fs(const Poly& f, const Limits& lim) {
  const int n = f.nvars();
  if (f.is_zero()) throw MathError("ann_fs: zero polynomial");
  gb::Algebra alg;
  alg.nweyl = n;
  alg.nvars = 2 * n + 2;
  alg.shift_s = 2 * n;
  alg.shift_dt = 2 * n + 1;
  if (alg.nvars > gb::kVars) throw MathError("ann_fs: too many variables");
  std::vector<long> elim(alg.nvars, 0), deg(alg.nvars, 1);
  elim[alg.shift_dt] = 1;
  std::vector<int> rl;
  for (int i = 0; i < alg.nvars; ++i) rl.push_back(i);
  auto order = std::make_shared<gb::WeightOrder>(
      std::vector<gb::WeightOrder::Row>{{elim, {}}, {deg, {}}}, rl);
  gb::Options opt;
  opt.max_steps = lim.max_gb_steps;
  gb::Groebner g(alg, order, opt);

  // s + f dt and d_i + (d_i f) dt, denominators cleared.
  auto with_dt = [&](const Poly& p, gb::Vec& v, const Integer& scale) {
    for (const auto& [m, c] : p.terms()) {
      gb::Exp e = exp_of(m, n);
      e[alg.shift_dt] = 1;
      Rational k = c * Rational(scale);
      v.push_back(gb::Term{e, 0, k.get_num()});
    }
  };
  {
    Integer L = denominator_lcm(f);
    gb::Vec v;
    gb::Exp e = gb::exp_zero();
    e[alg.shift_s] = 1;
    v.push_back(gb::Term{e, 0, L});
    with_dt(f, v, L);
    g.add_input(v);
  }
  for (int i = 0; i < n; ++i) {
    Poly fi = f.derivative(i);
    Integer L = denominator_lcm(fi);
    gb::Vec v;
    gb::Exp e = gb::exp_zero();
    e[n + i] = 1;
    v.push_back(gb::Term{e, 0, L});
    with_dt(fi, v, L);
    g.add_input(v);
  }
  g.run();

  std::vector<WeylElement> out;
  for (const auto& el : g.basis()) {
    if (el.v.front().e[alg.shift_dt] != 0) continue;
    WeylElement a = gb::to_weyl(alg, el.v, n, 1);
    FsValue r = apply_to_fs(a, f, FsValue{Poly(n + 1, Rational(1)), 0});
    if (!r.g.is_zero()) throw MathError("ann_fs: generator does not annihilate f^s");
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Rational> rational_roots(const Poly& b) {
  if (b.nvars() > 1) {
    for (const auto& [m, c] : b.terms())
      for (int i = 1; i < b.nvars(); ++i)
        if (m[i] != 0) throw MathError("rational_roots: not univariate");
  }
  int d = b.total_degree();
  if (d < 0) throw MathError("rational_roots: zero polynomial");
  std::vector<Rational> c(d + 1, Rational(0));
  for (const auto& [m, x] : b.terms()) c[m[0]] = x;
  std::vector<Rational> roots;
  auto strip = [&](const Rational& r) {
    // synthetic division by (s - r) while it divides
    while (c.size() > 1) {
      Rational v = 0;
      for (std::size_t k = c.size(); k-- > 0;) v = v * r + c[k];
      if (sgn(v) != 0) return;
      std::vector<Rational> q(c.size() - 1);
      Rational carry = 0;
      for (std::size_t k = c.size() - 1; k-- > 0;) {
        carry = carry * r + c[k + 1];
        q[k] = carry;
      }
      c.swap(q);
      roots.push_back(r);
    }
  };
  strip(Rational(0));
  while (c.size() > 1) {
    Integer L = 1;
    for (const auto& x : c) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den_mpz_t());
    Integer a0 = abs(Rational(c.front() * Rational(L)).get_num());
    Integer ad = abs(Rational(c.back() * Rational(L)).get_num());
    auto divisors = [](Integer v) {
      std::vector<Integer> ds;
      for (Integer k = 1; k * k <= v; ++k)
        if (v % k == 0) {
          ds.push_back(k);
          if (k * k != v) ds.push_back(v / k);
        }
      return ds;
    };
    std::size_t before = c.size();
    for (const auto& p : divisors(a0))
      for (const auto& q : divisors(ad)) {
        Rational r(p, q);
        r.canonicalize();
        strip(r);
        strip(-r);
      }
    if (c.size() == before) throw MathError("polynomial does not split over Q");
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

BernsteinSato bernstein_sato(const Poly& f, const Limits& lim, bool with_witness) {
  const int n = f.nvars();
  if (f.is_constant()) throw MathError("bernstein_sato: constant polynomial");
  BernsteinSato out;
  out.ann = ann_fs(f, lim);

  gb::Algebra alg = gb::Algebra::weyl(n, 1);
  std::vector<long> elim(alg.nvars, 1), deg(alg.nvars, 1);
  elim[2 * n] = 0;
  std::vector<int> rl;
  for (int i = 0; i < alg.nvars; ++i) rl.push_back(i);
  auto order = std::make_shared<gb::WeightOrder>(
      std::vector<gb::WeightOrder::Row>{{elim, {}}, {deg, {}}}, rl);
  gb::Options opt;
  opt.max_steps = lim.max_gb_steps;
  if (with_witness) {
    opt.track = true;
    opt.tracked_inputs.assign(out.ann.size() + 1, false);
    opt.tracked_inputs.back() = true;
  }
  gb::Groebner g(alg, order, opt);
  for (const auto& a : out.ann) g.add_input(gb::to_vec(alg, a, 0, *order));
  Integer L;
  int fidx = g.add_input(gb::to_vec_scaled(alg, WeylElement::from_poly(n, 1, f), 0, *order, &L));
  g.run();

  const gb::Element* bel = nullptr;
  for (const auto& el : g.basis()) {
    bool pure = true;
    for (int i = 0; i < 2 * n; ++i)
      if (el.v.front().e[i] != 0) pure = false;
    if (pure) {
      bel = &el;
      break;
    }
  }
  if (!bel) throw MathError("bernstein_sato: no polynomial in s found");
  Poly b(1);
  for (const auto& t : bel->v) b.add_term(mono_unit(0, t.e[2 * n]), Rational(t.c));
  Rational lc = b.lead_coeff();
  out.b = b * (Rational(1) / lc);
  out.roots = rational_roots(out.b);
  for (const auto& r : out.roots)
    if (r.get_den() == 1) {
      long v = r.get_num().get_si();
      if (out.integer_roots.empty() || out.integer_roots.back() != v) out.integer_roots.push_back(v);
    }
  if (!with_witness) return out;
  out.witness = gb::to_weyl(alg, bel->rep.v, n, 1, fidx) * (bel->rep.mult * Rational(L) / lc);

  // b(s) f^s = P f^(s+1)
  WeylElement bop(n, 1);
  for (const auto& [m, c] : out.b.terms()) {
    Monomial t = mono_zero();
    t[2 * n] = m[0];
    bop.add_term(t, c);
  }
  FsValue one{Poly(n + 1, Rational(1)), 0};
  FsValue lhs = apply_to_fs(bop, f, one);
  FsValue rhs = apply_to_fs(*out.witness, f, FsValue{one.g, 1});
  if (!fs_equal(lhs, rhs, f)) throw MathError("bernstein_sato: functional equation check failed");
  return out;
}

WeylElement specialize_s(const WeylElement& op, const Rational& value) {
  const int n = op.n();
  WeylElement r(n, 0);
  for (const auto& [m, c] : op.terms()) {
    Rational k = c;
    for (int e = 0; e < m[2 * n]; ++e) k *= value;
    Monomial t = m;
    t[2 * n] = 0;
    r.add_term(t, k);
  }
  return r;
}

std::string CyclicPresentation::generator_tag(const std::vector<std::string>& names) const {
  if (a == 0) return "1";
  return "(" + F.to_string(names) + ")^-" + std::to_string(a);
}

CyclicPresentation localize_cyclic(const Poly& F, int n, const Limits& lim) {
  CyclicPresentation out;
  out.n = n;
  out.F = F;
  if (F.is_zero()) throw MathError("localize_cyclic: zero polynomial");
  if (F.is_constant()) {
    out.a = 0;
    for (int i = 0; i < n; ++i) out.relations.push_back(WeylElement::d(n, i));
    return out;
  }
  Poly G = F;
  if (G.nvars() < n) {
    std::vector<int> id;
    for (int i = 0; i < F.nvars(); ++i) id.push_back(i);
    G = F.remap(n, id);
  }
  out.F = G;
  out.bs = bernstein_sato(G, lim, false);
  if (out.bs.integer_roots.empty() || out.bs.integer_roots.front() >= 0)
    throw MathError("localize_cyclic: no negative integer root");
  out.a = -out.bs.integer_roots.front();
  LocalFraction gen(Poly(n, Rational(1)), G, static_cast<int>(out.a));
  for (const auto& r : out.bs.ann) {
    WeylElement q = specialize_s(r, Rational(-out.a));
    if (q.is_zero()) continue;
    if (!apply_to_fraction(q, gen).is_zero())
      throw MathError("localize_cyclic: relation does not annihilate the generator");
    out.relations.push_back(std::move(q));
  }
  return out;
}

WeylElement lift_generator(const CyclicPresentation& from, const CyclicPresentation& to) {
  const int n = to.n;
  if (to.F.is_constant()) return WeylElement(n, 0, 1);
  std::optional<Poly> gq = to.F.divide_exact(from.F);
  if (!gq) throw MathError("lift_generator: divisor does not divide");
  auto as_op = [&](const Poly& p) { return WeylElement::from_poly(n, 0, p); };
  WeylElement q2(n, 0, 1);
  if (from.a <= to.a) {
    q2 = as_op(to.F.pow(static_cast<int>(to.a - from.a)));
  } else {
    // G^(-k-1) = P(-k-1)/b(-k-1) G^(-k) for k >= to.a.
    std::optional<WeylElement> witness = to.bs.witness;
    if (!witness) witness = bernstein_sato(to.F, {}, true).witness;
    for (long k = from.a - 1; k >= to.a; --k) {
      Rational t(-k - 1);
      Rational bv = to.bs.b.evaluate({t});
      if (sgn(bv) == 0) throw MathError("lift_generator: b vanishes below its smallest root");
      q2 = q2 * (specialize_s(*witness, t) * (Rational(1) / bv));
    }
  }
  WeylElement q = as_op(gq->pow(static_cast<int>(from.a))) * q2;
  LocalFraction image = apply_to_fraction(q, LocalFraction(Poly(n, Rational(1)), to.F, static_cast<int>(to.a)));
  LocalFraction want(gq->pow(static_cast<int>(from.a)), to.F, static_cast<int>(from.a));
  if (!(image == want)) throw MathError("lift_generator: lift check failed");
  return q;
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < m; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

CechDComplex cech_dcomplex(const std::vector<Poly>& f, int n, const Limits& lim) {
  CechDComplex c;
  c.n = n;
  c.f = f;
  const int m = static_cast<int>(f.size());
  if (m == 0) {
    c.subsets.push_back({{}});
    c.terms.push_back({localize_cyclic(Poly(n, Rational(1)), n, lim)});
    return c;
  }
  for (int d = 0; d < m; ++d) {
    c.subsets.push_back(subsets_of_size(m, d + 1));
    std::vector<CyclicPresentation> terms;
    for (const auto& I : c.subsets.back()) {
      Poly F(n, Rational(1));
      for (int i : I) F *= f[i];
      terms.push_back(localize_cyclic(F, n, lim));
    }
    c.terms.push_back(std::move(terms));
  }
  for (int d = 0; d + 1 < m; ++d) {
    std::vector<CechDComplex::MapEntry> entries;
    for (int s = 0; s < static_cast<int>(c.subsets[d].size()); ++s) {
      const auto& I = c.subsets[d][s];
      for (int t = 0; t < static_cast<int>(c.subsets[d + 1].size()); ++t) {
        const auto& J = c.subsets[d + 1][t];
        if (!std::includes(J.begin(), J.end(), I.begin(), I.end())) continue;
        int pos = 0;
        while (pos < static_cast<int>(I.size()) && I[pos] == J[pos]) ++pos;
        entries.push_back(CechDComplex::MapEntry{s, t, pos % 2 ? -1 : 1,
                                                 lift_generator(c.terms[d][s], c.terms[d + 1][t])});
      }
    }
    c.maps.push_back(std::move(entries));
  }
  return c;
}

bool cech_d_squared_zero(const CechDComplex& c, const Limits& lim) {
  const int n = c.n;
  gb::Algebra alg = gb::Algebra::weyl(n);
  auto order = degree_order(alg);
  for (std::size_t d = 0; d + 1 < c.maps.size(); ++d) {
    // composite[src][tgt2] = sum sign1 sign2 q1 q2
    std::map<std::pair<int, int>, WeylElement> comp;
    for (const auto& e1 : c.maps[d])
      for (const auto& e2 : c.maps[d + 1]) {
        if (e2.src != e1.tgt) continue;
        auto key = std::make_pair(e1.src, e2.tgt);
        WeylElement term = e1.q * e2.q * Rational(e1.sign * e2.sign);
        auto it = comp.find(key);
        if (it == comp.end()) comp.emplace(key, term);
        else it->second += term;
      }
    std::map<int, std::unique_ptr<gb::Groebner>> gbs;
    for (const auto& [key, p] : comp) {
      if (p.is_zero()) continue;
      auto& slot = gbs[key.second];
      if (!slot) {
        gb::Options opt;
        opt.max_steps = lim.max_gb_steps;
        slot = std::make_unique<gb::Groebner>(alg, order, opt);
        for (const auto& r : c.terms[d + 2][key.second].relations)
          slot->add_input(gb::to_vec(alg, r, 0, *order));
        slot->run();
      }
      if (!slot->reduces_to_zero(gb::to_vec(alg, p, 0, *order))) return false;
    }
  }
  return true;
}

}  // namespace drc
