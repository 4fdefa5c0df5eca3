#include "drcoh/integrate.hpp"

#include <algorithm>
#include <functional>
#include <memory>

#include "drcoh/groebner.hpp"

namespace drc {

namespace {

std::shared_ptr<gb::WeightOrder> homogenized_weight_order(const gb::Algebra& alg, int n) {
  std::vector<long> deg(alg.nvars, 1), w(alg.nvars, 0);
  for (int i = 0; i < n; ++i) {
    w[i] = 1;
    w[n + i] = -1;
  }
  std::vector<int> rl;
  for (int i = 0; i < alg.nvars; ++i) rl.push_back(i);
  return std::make_shared<gb::WeightOrder>(std::vector<gb::WeightOrder::Row>{{deg, {}}, {w, {}}}, rl);
}

std::vector<Monomial> monomials_upto(int n, long d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  Monomial m = mono_zero();
  std::function<void(int, long)> rec = [&](int i, long left) {
    if (i == n) {
      out.push_back(m);
      return;
    }
    for (long e = 0; e <= left; ++e) {
      m[i] = static_cast<int16_t>(e);
      rec(i + 1, left - e);
    }
    m[i] = 0;
  };
  rec(0, d);
  std::stable_sort(out.begin(), out.end(),
                   [&](const Monomial& a, const Monomial& b) { return mono_degree(a, n) < mono_degree(b, n); });
  return out;
}

using BasisKey = std::pair<int, Monomial>;

struct Truncation {
  std::vector<std::vector<BasisKey>> basis;  // per j: (generator, x-exponent)
  std::vector<std::map<BasisKey, std::size_t>> index;
  std::vector<RatMatrix> d;  // d[j]: A^{-j-1} -> A^{-j}
};

Truncation truncate(const ShiftedFreeComplex& a, long k) {
  const int n = a.n;
  Truncation t;
  const std::size_t L = a.length();
  t.basis.resize(L + 1);
  t.index.resize(L + 1);
  for (std::size_t j = 0; j <= L; ++j) {
    for (std::size_t i = 0; i < a.rank(j); ++i)
      for (const auto& m : monomials_upto(n, k - a.shifts[j][i])) {
        t.index[j].emplace(BasisKey{static_cast<int>(i), m}, t.basis[j].size());
        t.basis[j].emplace_back(static_cast<int>(i), m);
      }
  }
  for (std::size_t j = 0; j < L; ++j) {
    RatMatrix d(t.basis[j].size(), t.basis[j + 1].size());
    for (std::size_t c = 0; c < t.basis[j + 1].size(); ++c) {
      const auto& [i, alpha] = t.basis[j + 1][c];
      Poly xa = Poly::term(n, alpha, 1);
      for (std::size_t col = 0; col < a.rank(j); ++col) {
        const WeylElement& e = a.maps[j][i][col];
        if (e.is_zero()) continue;
        Poly img = omega_class(xa, e);
        for (const auto& [g, v] : img.terms()) {
          auto it = t.index[j].find(BasisKey{static_cast<int>(col), g});
          if (it == t.index[j].end()) throw MathError("truncation: map leaves the filtration level");
          d.add(it->second, c, v);
        }
      }
    }
    t.d.push_back(std::move(d));
  }
  return t;
}

// Cohomology of a truncation; result.h[t] corresponds to A^{-(L - t)}.
ComplexCohomology truncation_cohomology(const Truncation& t) {
  const std::size_t L = t.basis.size() - 1;
  std::vector<std::size_t> dims;
  std::vector<RatMatrix> d;
  for (std::size_t s = 0; s <= L; ++s) dims.push_back(t.basis[L - s].size());
  for (std::size_t s = 0; s < L; ++s) d.push_back(t.d[L - s - 1]);
  return complex_cohomology(-static_cast<int>(L), dims, d);
}

std::vector<std::size_t> de_rham_dims(const ComplexCohomology& cc, int n, std::size_t L) {
  std::vector<std::size_t> dims(n + 1, 0);
  for (std::size_t j = 0; j <= L && j <= static_cast<std::size_t>(n); ++j)
    dims[n - j] = cc.h[L - j].dim();
  return dims;
}

using TermMap = std::map<Monomial, Rational>;

Integer pair_coeff(int a, int b, int k) {
  Integer r, t;
  mpz_bin_uiui(r.get_mpz_t(), a, k);
  mpz_bin_uiui(t.get_mpz_t(), b, k);
  r *= t;
  mpz_fac_ui(t.get_mpz_t(), k);
  return r * t;
}

// Rewrite between x^a d^b (normal) and d^b x^a (anti-normal) monomials.
// sign = -1 converts normal to anti-normal, +1 the other way.
TermMap reorder(int n, const TermMap& in, int sign) {
  TermMap out;
  for (const auto& [m, c] : in) {
    std::vector<std::pair<Monomial, Rational>> acc{{m, c}};
    for (int i = 0; i < n; ++i) {
      int a = m[i], b = m[n + i];
      if (a == 0 || b == 0) continue;
      std::vector<std::pair<Monomial, Rational>> next;
      for (const auto& [t, v] : acc)
        for (int k = 0; k <= std::min(a, b); ++k) {
          Monomial u = t;
          u[i] = static_cast<int16_t>(u[i] - k);
          u[n + i] = static_cast<int16_t>(u[n + i] - k);
          Rational w = v * Rational(pair_coeff(a, b, k));
          if (sign < 0 && k % 2) w = -w;
          next.emplace_back(u, w);
        }
      acc.swap(next);
    }
    for (const auto& [t, v] : acc) {
      auto [it, fresh] = out.emplace(t, v);
      if (!fresh) {
        it->second += v;
        if (sgn(it->second) == 0) out.erase(it);
      }
    }
  }
  return out;
}

TermMap to_antinormal(const WeylElement& a) { return reorder(a.n(), a.terms(), -1); }

WeylElement from_antinormal(int n, const TermMap& t) {
  WeylElement r(n);
  for (const auto& [m, c] : reorder(n, t, +1)) r.add_term(m, c);
  return r;
}

// Elements of Lambda^p (x) D^r.
using Chain = std::map<FormMask, std::vector<WeylElement>>;

void chain_add(Chain& z, FormMask k, std::size_t idx, std::size_t rank, int n, const WeylElement& v) {
  auto it = z.find(k);
  if (it == z.end()) it = z.emplace(k, std::vector<WeylElement>(rank, WeylElement(n))).first;
  it->second[idx] += v;
}

bool chain_is_zero(const Chain& z) {
  for (const auto& [k, v] : z)
    for (const auto& e : v)
      if (!e.is_zero()) return false;
  return true;
}

Chain chain_sub(const Chain& a, const Chain& b, std::size_t rank, int n) {
  Chain r = a;
  for (const auto& [k, v] : b)
    for (std::size_t i = 0; i < v.size(); ++i) chain_add(r, k, i, rank, n, -v[i]);
  return r;
}

// Right multiplication by the matrix M (rows: source generators).
Chain apply_delta(const Chain& z, const std::vector<std::vector<WeylElement>>& M, std::size_t target_rank,
                  int n) {
  Chain out;
  for (const auto& [k, v] : z)
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      for (std::size_t j = 0; j < target_rank; ++j) {
        if (M[i][j].is_zero()) continue;
        chain_add(out, k, j, target_rank, n, v[i] * M[i][j]);
      }
    }
  return out;
}

// Koszul differential: dx_K (x) P -> sum_i dx_i ^ dx_K (x) d_i P.
Chain koszul_d(const Chain& z, std::size_t rank, int n) {
  Chain out;
  for (const auto& [k, v] : z)
    for (int i = 0; i < n; ++i) {
      FormMask bit = FormMask{1} << i;
      int sg = wedge_sign(bit, k);
      if (sg == 0) continue;
      WeylElement di = WeylElement::d(n, i);
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!v[j].is_zero()) chain_add(out, k | bit, j, rank, n, di * v[j] * Rational(sg));
    }
  return out;
}

// Contracting homotopy of the Koszul complex on the d's (D is free over
// Q[d] on the right basis x^a when written anti-normally).
Chain koszul_homotopy(const Chain& y, std::size_t rank, int n) {
  std::map<std::pair<FormMask, std::size_t>, TermMap> acc;
  for (const auto& [k, v] : y) {
    const int ksize = mask_size(k);
    for (std::size_t j = 0; j < v.size(); ++j) {
      for (const auto& [m, c] : to_antinormal(v[j])) {
        int bdeg = 0;
        for (int i = 0; i < n; ++i) bdeg += m[n + i];
        int c0 = bdeg + n - ksize;
        if (c0 == 0) throw MathError("zig-zag: element is not exact in the Koszul row");
        int pos = 0;
        for (int i = 0; i < n; ++i) {
          if (!(k >> i & 1u)) continue;
          if (m[n + i] > 0) {
            Monomial u = m;
            u[n + i] = static_cast<int16_t>(u[n + i] - 1);
            Rational w = c * Rational(m[n + i]) / Rational(c0);
            if (pos % 2) w = -w;
            auto& t = acc[{k & ~(FormMask{1} << i), j}];
            auto [it, fresh] = t.emplace(u, w);
            if (!fresh) {
              it->second += w;
              if (sgn(it->second) == 0) t.erase(it);
            }
          }
          ++pos;
        }
      }
    }
  }
  Chain out;
  for (const auto& [key, t] : acc) {
    WeylElement e = from_antinormal(n, t);
    if (!e.is_zero()) chain_add(out, key.first, key.second, rank, n, e);
  }
  return out;
}

}  // namespace

ShiftedFreeComplex v_strict_complex(const CyclicPresentation& m, const Limits& lim) {
  const int n = m.n;
  ShiftedFreeComplex out;
  out.n = n;
  out.shifts.push_back({0});
  gb::Algebra alg = gb::Algebra::weyl(n, 0, true);
  std::shared_ptr<const gb::Order> order = homogenized_weight_order(alg, n);

  gb::Options opt;
  opt.max_steps = lim.max_gb_steps;
  gb::Groebner g0(alg, order, opt);
  for (const auto& r : m.relations) {
    gb::Vec v = gb::to_vec(alg, r, 0, *order);
    g0.add_input(gb::homogenize_h(alg, v, {0}, *order));
  }
  g0.run();
  std::vector<gb::Vec> G;
  for (const auto& el : g0.basis()) G.push_back(el.v);

  for (int k = 0; k <= n && !G.empty(); ++k) {
    const std::size_t src_rank = out.shifts[k].size();
    std::vector<std::vector<WeylElement>> rows;
    std::vector<long> next_shifts;
    for (const auto& v : G) {
      std::vector<WeylElement> row;
      long m_i = kNoDegree;
      for (std::size_t j = 0; j < src_rank; ++j) {
        row.push_back(gb::to_weyl(alg, v, n, 0, static_cast<int>(j)));
        long vd = v_degree(row.back());
        if (vd != kNoDegree) m_i = std::max(m_i, vd + out.shifts[k][j]);
      }
      rows.push_back(std::move(row));
      next_shifts.push_back(m_i);
    }
    out.maps.push_back(std::move(rows));
    out.shifts.push_back(std::move(next_shifts));
    if (k == n) break;
    std::vector<std::pair<gb::Exp, int>> leads;
    for (const auto& v : G) leads.emplace_back(v.front().e, v.front().pos);
    auto syz_order = std::make_shared<gb::SchreyerOrder>(order, leads);
    std::vector<gb::Vec> S = gb::schreyer_syzygies(alg, G, *order, *syz_order, lim.max_gb_steps);
    G.swap(S);
    order = syz_order;
  }
  return out;
}

bool respects_filtration(const ShiftedFreeComplex& a) {
  for (std::size_t k = 0; k < a.maps.size(); ++k)
    for (std::size_t i = 0; i < a.maps[k].size(); ++i)
      for (std::size_t j = 0; j < a.maps[k][i].size(); ++j) {
        long vd = v_degree(a.maps[k][i][j]);
        if (vd == kNoDegree) continue;
        if (vd > a.shifts[k + 1][i] - a.shifts[k][j]) return false;
      }
  return true;
}

bool maps_compose_to_zero(const ShiftedFreeComplex& a) {
  for (std::size_t k = 0; k + 1 < a.maps.size(); ++k) {
    const auto& top = a.maps[k + 1];
    const auto& bot = a.maps[k];
    for (const auto& row : top)
      for (std::size_t l = 0; l < a.rank(k); ++l) {
        WeylElement s(a.n);
        for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * bot[j][l];
        if (!s.is_zero()) return false;
      }
  }
  return true;
}

IntegrationBData integration_bfunction(const ShiftedFreeComplex& a, const Limits& lim) {
  const int n = a.n;
  gb::Algebra alg = gb::Algebra::weyl(n);
  std::vector<long> w(alg.nvars, 0), deg(alg.nvars, 1);
  for (int i = 0; i < n; ++i) {
    w[i] = 1;
    w[n + i] = -1;
  }
  std::vector<int> rl;
  for (int i = 0; i < alg.nvars; ++i) rl.push_back(i);
  gb::WeightOrder order({{w, {}}, {deg, {}}}, rl);
  std::vector<long> u(n, 1), v(n, -1);
  std::vector<gb::Vec> initial;
  if (!a.maps.empty())
    for (const auto& row : a.maps[0]) initial.push_back(gb::to_vec(alg, initial_form(row[0], u, v), 0, order));

  WeylElement theta = -euler_operator(n) - WeylElement(n, 0, Rational(n));
  std::map<std::pair<gb::Exp, int>, std::size_t> coords;
  auto to_sparse = [&](const gb::Vec& p) {
    std::map<std::size_t, Rational> m;
    for (const auto& t : p) {
      auto key = std::make_pair(t.e, t.pos);
      auto it = coords.find(key);
      if (it == coords.end()) it = coords.emplace(key, coords.size()).first;
      m[it->second] = Rational(t.c);
    }
    return SparseVec(m.begin(), m.end());
  };
  EchelonBasis eb;
  WeylElement power(n, 0, 1);
  IntegrationBData out;
  for (int k = 0;; ++k) {
    if (k > 64) throw ResourceLimit("integration_bfunction", "degree bound exceeded");
    Integer mult;
    gb::Vec p = gb::to_vec_scaled(alg, power, 0, order, &mult);
    Rational mu;
    gb::Vec r = gb::reduce_by_scaled(alg, order, p, initial, mu);
    SparseVec sv = sparse_scale(to_sparse(r), Rational(1) / (mu * Rational(mult)));
    auto c = eb.coordinates(sv);
    if (c) {
      Poly b = Poly::term(1, mono_unit(0, k), 1);
      for (const auto& [j, x] : *c) b.add_term(mono_unit(0, static_cast<int>(j)), -x);
      out.b = b;
      break;
    }
    if (k > 0 && lim.max_gb_steps <= 0) throw ResourceLimit("integration_bfunction", "step limit");
    eb.insert(sv);
    power = theta * power;
  }
  for (const auto& r : rational_roots(out.b))
    if (r.get_den() == 1) {
      long v = r.get_num().get_si();
      if (out.integer_roots.empty() || out.integer_roots.back() != v) out.integer_roots.push_back(v);
    }
  out.has_integer_root = !out.integer_roots.empty();
  if (out.has_integer_root) out.k1 = out.integer_roots.back();
  return out;
}

std::vector<std::size_t> truncated_dims(const ShiftedFreeComplex& a, long k) {
  Truncation t = truncate(a, k);
  return de_rham_dims(truncation_cohomology(t), a.n, a.length());
}

IntegrationResult integrate_cohomology(const ShiftedFreeComplex& a, const IntegrationBData& bd,
                                       int extra_levels) {
  const int n = a.n;
  const std::size_t L = a.length();
  IntegrationResult out;
  out.dims.assign(n + 1, 0);
  if (!bd.has_integer_root) return out;
  const long K = bd.k1;
  out.k1 = K;
  Truncation T = truncate(a, K);
  ComplexCohomology cc = truncation_cohomology(T);
  out.dims = de_rham_dims(cc, n, L);
  out.stability.push_back(out.dims);
  for (int e = 1; e <= extra_levels; ++e) {
    out.stability.push_back(truncated_dims(a, K + e));
    if (out.stability.back() != out.dims) out.stable = false;
  }

  long kmin = K;
  for (const auto& sh : a.shifts)
    for (long m : sh) kmin = std::min(kmin, m);
  std::map<long, Truncation> cache;
  for (std::size_t j = 0; j <= L && j <= static_cast<std::size_t>(n); ++j) {
    const Subquotient& h = cc.h[L - j];
    if (h.dim() == 0) continue;
    EchelonBasis eb;
    for (long k = kmin; k <= K && eb.rank() < h.dim(); ++k) {
      auto it = cache.find(k);
      if (it == cache.end()) it = cache.emplace(k, truncate(a, k)).first;
      const Truncation& Tk = it->second;
      if (Tk.basis[j].empty()) continue;
      std::vector<SparseVec> cycles;
      if (j == 0) {
        for (std::size_t c = 0; c < Tk.basis[0].size(); ++c) cycles.push_back({{c, Rational(1)}});
      } else {
        cycles = rank_kernel(Tk.d[j - 1]).kernel;
      }
      for (const auto& z : cycles) {
        SparseVec emb;
        for (const auto& [idx, v] : z) emb.emplace_back(T.index[j].at(Tk.basis[j][idx]), v);
        std::sort(emb.begin(), emb.end());
        std::vector<Rational> coords = h.reduce(emb);
        if (!eb.insert(sparse_from_dense(coords))) continue;
        OmegaClass cl;
        cl.degree = n - static_cast<int>(j);
        cl.level = k;
        cl.rep.assign(a.rank(j), Poly(n));
        for (const auto& [idx, v] : emb) {
          const auto& [gen, alpha] = T.basis[j][idx];
          cl.rep[gen].add_term(alpha, v);
        }
        if (sgn(bd.b.evaluate({Rational(k)})) != 0) out.levels_are_roots = false;
        out.classes.push_back(std::move(cl));
        if (eb.rank() == h.dim()) break;
      }
    }
    if (eb.rank() != h.dim()) throw MathError("integrate_cohomology: class levels incomplete");
  }
  std::stable_sort(out.classes.begin(), out.classes.end(),
                   [](const OmegaClass& x, const OmegaClass& y) { return x.degree < y.degree; });
  return out;
}

std::vector<DiffForm> to_de_rham_forms(const ShiftedFreeComplex& a, const std::vector<OmegaClass>& classes,
                                       const CyclicPresentation& m) {
  const int n = a.n;
  const FormMask top = (FormMask{1} << n) - 1;
  LocalFraction gen(Poly(n, Rational(1)), m.F, static_cast<int>(m.a));
  std::vector<DiffForm> out;
  for (const auto& cl : classes) {
    std::size_t j = static_cast<std::size_t>(n - cl.degree);
    Chain z;
    for (std::size_t i = 0; i < cl.rep.size(); ++i)
      if (!cl.rep[i].is_zero()) chain_add(z, top, i, a.rank(j), n, WeylElement::from_poly(n, 0, cl.rep[i]));
    for (std::size_t t = j; t >= 1; --t) {
      Chain y = apply_delta(z, a.maps[t - 1], a.rank(t - 1), n);
      Chain next = koszul_homotopy(y, a.rank(t - 1), n);
      if (!chain_is_zero(chain_sub(koszul_d(next, a.rank(t - 1), n), y, a.rank(t - 1), n)))
        throw MathError("zig-zag: homotopy step failed");
      z.swap(next);
    }
    DiffForm w(n, m.F, cl.degree);
    for (const auto& [k, v] : z) {
      if (v.empty() || v[0].is_zero()) continue;
      LocalFraction g = apply_to_fraction(v[0], gen);
      w.add(k, g.numerator(), g.power());
    }
    if (!de_rham_d(w).is_zero()) throw MathError("zig-zag: resulting form is not closed");
    out.push_back(std::move(w));
  }
  return out;
}

AffineCohomology affine_cohomology(const Poly& F, int n, const Limits& lim) {
  // name the expensive stage when a step limit is hit
  auto stage = [](const char* name, auto&& run) {
    try {
      return run();
    } catch (const ResourceLimit& e) {
      if (e.stage() == name) throw;
      throw ResourceLimit(name, e.what());
    }
  };
  AffineCohomology r;
  r.presentation = stage("bernstein_sato", [&] { return localize_cyclic(F, n, lim); });
  r.complex = stage("v_strict_resolution", [&] { return v_strict_complex(r.presentation, lim); });
  r.bdata = stage("integration_bfunction", [&] { return integration_bfunction(r.complex, lim); });
  r.result = integrate_cohomology(r.complex, r.bdata);
  r.forms = to_de_rham_forms(r.complex, r.result.classes, r.presentation);
  return r;
}

}  // namespace drc
