#include "drcoh/duality.hpp"

#include <bit>

namespace drc {

namespace {

long at(const std::vector<std::size_t>& v, long i) {
  return i < 0 || i >= static_cast<long>(v.size()) ? 0 : static_cast<long>(v[i]);
}

Cochain restrict_to(const Cochain& c, uint32_t allowed) {
  Cochain r;
  r.degree = c.degree;
  for (const auto& [S, w] : c.comp)
    if (!(S & ~allowed)) r.comp[S] = w;
  return r;
}

std::vector<std::size_t> padded_betti(const TotalComplex& tc, int n) {
  auto b = tc.betti();
  for (std::size_t t = 2 * n + 1; t < b.size(); ++t)
    if (b[t] != 0) throw MathError("cohomology above degree 2n");
  b.resize(2 * n + 1, 0);
  return b;
}

std::vector<std::size_t> to_size(const std::vector<long>& v, const char* what) {
  std::vector<std::size_t> out;
  for (long x : v) {
    if (x < 0) throw MathError(std::string(what) + ": negative dimension");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

// H^j_Y(P^n) -> H^j(P^n) -> H^j(W) -> H^{j+1}_Y(P^n) for W = P^n \ Y.
ExactSequence projective_pair(const std::string& name, const std::vector<std::size_t>& local,
                              const std::vector<std::size_t>& betti_W, const std::vector<bool>& chern_zero, int n) {
  ExactSequence s;
  s.name = name;
  for (int j = 0; j <= 2 * n; ++j) {
    const bool even = j % 2 == 0;
    const long to_w = even && !chern_zero[j / 2] ? 1 : 0;
    const long from_local = even && chern_zero[j / 2] ? 1 : 0;
    s.push("H^" + std::to_string(j) + "_Y(P^n)", at(local, j), from_local);
    s.push("H^" + std::to_string(j) + "(P^n)", even ? 1 : 0, to_w);
    s.push("H^" + std::to_string(j) + "(W)", at(betti_W, j), j < 2 * n ? at(betti_W, j) - to_w : 0);
  }
  return s;
}

std::vector<std::size_t> local_from_open(const std::vector<std::size_t>& betti_W, const std::vector<bool>& chern_zero,
                                         int n) {
  std::vector<long> loc(2 * n + 1, 0);
  for (int m = 0; m <= 2 * n; ++m) {
    long v = 0;
    if (m >= 1) v += at(betti_W, m - 1) - ((m - 1) % 2 == 0 && !chern_zero[(m - 1) / 2] ? 1 : 0);
    if (m % 2 == 0 && chern_zero[m / 2]) v += 1;
    loc[m] = v;
  }
  return to_size(loc, "local cohomology");
}

}  // namespace

void ExactSequence::push(std::string term, long dim, long rank_out) {
  terms.push_back(std::move(term));
  dims.push_back(dim);
  ranks.push_back(rank_out);
}

long ExactSequence::alternating_sum() const {
  long s = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) s += i % 2 ? -dims[i] : dims[i];
  return s;
}

bool ExactSequence::exact() const {
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const long in = i ? ranks[i - 1] : 0;
    if (dims[i] < 0 || ranks[i] < 0 || ranks[i] > dims[i]) return false;
    if (i + 1 == dims.size() && ranks[i] != 0) return false;
    if (dims[i] != in + ranks[i]) return false;
  }
  return alternating_sum() == 0;
}

bool DualityLedger::exact() const {
  for (const auto& s : sequences)
    if (!s.exact()) return false;
  return true;
}

Atlas affine_atlas(int n, const std::vector<std::string>& names) {
  if (static_cast<int>(names.size()) != n) throw MathError("affine_atlas: need n names");
  Atlas a;
  a.n = n;
  Chart c;
  c.name = "A";
  c.characters = MonomialMap::identity(n).A;
  c.coordinate_names = names;
  a.charts.push_back(std::move(c));
  return a;
}

OpenWithChern open_with_chern(Cover& cover, uint32_t allowed, const CoverOptions& opt) {
  const int n = cover.n();
  std::vector<Cochain> c;
  std::map<std::size_t, std::vector<DiffForm>> extras;
  for (int k = 0; k <= n; ++k) {
    c.push_back(chern_cocycle(cover, k));
    for (auto& [p, forms] : cochain_forms(cover, c.back()))
      extras[p].insert(extras[p].end(), forms.begin(), forms.end());
  }
  saturate(cover, extras, opt);
  TotalComplex tc(cover, allowed);
  OpenWithChern r;
  r.betti = padded_betti(tc, n);
  for (int k = 0; k <= n; ++k) r.chern_zero.push_back(tc.is_coboundary(restrict_to(c[k], allowed)));
  return r;
}

ClosedCohomology closed_from_open(const OpenWithChern& u, int n) {
  std::vector<long> y(2 * n + 1, 0);
  for (int k = 0; k <= n; ++k) {
    const long zero = u.chern_zero[k] ? 1 : 0;
    y[2 * n - 2 * k] = at(u.betti, 2 * k - 1) + zero;
    const long odd = at(u.betti, 2 * k) - (1 - zero);
    if (2 * n - 2 * k - 1 >= 0) y[2 * n - 2 * k - 1] = odd;
    else if (odd != 0) throw MathError("closed_variety_cohomology: top class of U is not the Chern class");
  }
  ClosedCohomology r;
  r.betti = to_size(y, "closed_variety_cohomology");
  r.ledger.betti_U = u.betti;
  r.ledger.chern_zero = u.chern_zero;
  std::vector<std::size_t> local(2 * n + 1);
  for (int j = 0; j <= 2 * n; ++j) local[j] = r.betti[2 * n - j];
  if (local != local_from_open(u.betti, u.chern_zero, n))
    throw MathError("closed_variety_cohomology: duality bookkeeping mismatch");
  r.ledger.sequences.push_back(projective_pair("pair (P^n, Y)", local, u.betti, u.chern_zero, n));
  if (!r.ledger.exact()) throw MathError("closed_variety_cohomology: sequence is not exact");
  return r;
}

ClosedCohomology closed_variety_cohomology(const std::vector<Poly>& f, int n, const std::vector<std::string>& names,
                                           const CoverOptions& opt) {
  std::vector<Poly> nonzero;
  for (const auto& p : f)
    if (!p.is_zero()) nonzero.push_back(p);
  if (nonzero.empty()) throw MathError("closed_variety_cohomology: Y is all of P^n");
  Cover c = projective_cover(n, nonzero, names, opt);
  return closed_from_open(open_with_chern(c, ~uint32_t{0}, opt), n);
}

CompactCohomology compact_from_open(const std::vector<std::size_t>& betti_U, int n) {
  if (at(betti_U, 0) == 0) throw MathError("compact_support_affine: Y is all of affine space");
  for (std::size_t j = 2 * n + 1; j < betti_U.size(); ++j)
    if (betti_U[j] != 0) throw MathError("compact_support_affine: cohomology above degree 2n");
  CompactCohomology r;
  r.betti_U = betti_U;
  r.betti_U.resize(2 * n + 1, 0);
  std::vector<long> dims(2 * n + 1, 0);
  for (int i = 0; i <= 2 * n; ++i) {
    const int m = 2 * n - i;  // H^i_c(Y)* = H^m_Y(A^n)
    if (m >= 2) dims[i] = at(betti_U, m - 1);
    else if (m == 1) dims[i] = at(betti_U, 0) - 1;
  }
  r.dims = to_size(dims, "compact_support_affine");
  r.ledger.betti_U = r.betti_U;
  ExactSequence s;
  s.name = "pair (A^n, Y)";
  for (int j = 0; j <= 2 * n; ++j) {
    s.push("H^" + std::to_string(j) + "_Y(A^n)", dims[2 * n - j], 0);
    s.push("H^" + std::to_string(j) + "(A^n)", j == 0 ? 1 : 0, j == 0 ? 1 : 0);
    s.push("H^" + std::to_string(j) + "(U)", at(r.betti_U, j), j < 2 * n ? at(r.betti_U, j) - (j == 0 ? 1 : 0) : 0);
  }
  r.ledger.sequences.push_back(std::move(s));
  if (!r.ledger.exact()) throw MathError("compact_support_affine: sequence is not exact");
  return r;
}

CompactCohomology compact_support_affine(const std::vector<Poly>& f, int n, const CoverOptions& opt) {
  std::vector<Poly> nonzero;
  for (const auto& p : f) {
    if (p.nvars() != n) throw MathError("compact_support_affine: wrong number of variables");
    if (!p.is_zero()) nonzero.push_back(p);
  }
  if (nonzero.empty()) throw MathError("compact_support_affine: Y is all of affine space");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  std::vector<std::vector<Poly>> eq;
  for (const auto& p : nonzero) eq.push_back({p});
  Cover c = build_cover(affine_atlas(n, names), eq, opt);
  TotalComplex tc(c);
  return compact_from_open(padded_betti(tc, n), n);
}

LocallyClosedCohomology locally_closed_cohomology(const Poly& f, const Poly& g, int n,
                                                  const std::vector<std::string>& names, bool smooth_certified,
                                                  const CoverOptions& opt) {
  if (!smooth_certified)
    throw MathError("locally_closed_cohomology: smoothness of Var(f) must be certified by the caller");
  if (f.is_zero() || f.is_constant()) throw MathError("locally_closed_cohomology: f must define a hypersurface");
  if (g.is_zero()) throw MathError("locally_closed_cohomology: g = 0 removes all of Y");
  Cover cv = projective_cover(n, {f, g}, names, opt);
  uint32_t allowed_U = 0;
  for (std::size_t s = 0; s < cv.opens.size(); ++s)
    if (cv.opens[s].poly == 0) allowed_U |= 1u << s;

  // one saturation for both complexes
  std::vector<Cochain> chern;
  std::map<std::size_t, std::vector<DiffForm>> extras;
  for (int k = 0; k <= n; ++k) {
    chern.push_back(chern_cocycle(cv, k));
    for (auto& [p, forms] : cochain_forms(cv, chern.back()))
      extras[p].insert(extras[p].end(), forms.begin(), forms.end());
  }
  saturate(cv, extras, opt);
  TotalComplex tv(cv), tu(cv, allowed_U);
  OpenWithChern V, U;
  V.betti = padded_betti(tv, n);
  U.betti = padded_betti(tu, n);
  for (int k = 0; k <= n; ++k) {
    V.chern_zero.push_back(tv.is_coboundary(chern[k]));
    U.chern_zero.push_back(tu.is_coboundary(restrict_to(chern[k], allowed_U)));
  }

  LocallyClosedCohomology r;
  const int top = 2 * n, d = n - 1;
  r.ambient.assign(top + 1, 0);
  for (int k = 0; k <= n; ++k) r.ambient[2 * k] = 1;
  r.betti_V = V.betti;
  r.betti_U = U.betti;
  r.ker_V_to_U.assign(top + 1, 0);
  r.im_P_to_V.assign(top + 1, 0);
  for (int k = 0; k <= top; ++k) {
    auto gens_V = tv.generators(k), gens_U = tu.generators(k);
    std::size_t rank = 0;
    if (!gens_V.empty() && !gens_U.empty()) {
      RatMatrix M(gens_U.size(), gens_V.size());
      for (std::size_t i = 0; i < gens_V.size(); ++i) {
        auto c = tu.class_coordinates(restrict_to(gens_V[i], allowed_U), gens_U);
        for (std::size_t j = 0; j < c.size(); ++j)
          if (sgn(c[j]) != 0) M.set(j, i, c[j]);
      }
      rank = matrix_rank(M);
    }
    r.ker_V_to_U[k] = gens_V.size() - rank;
    if (k % 2 == 0 && !V.chern_zero[k / 2]) r.im_P_to_V[k] = 1;
  }
  r.local_Z = local_from_open(V.betti, V.chern_zero, n);
  r.local_Y = local_from_open(U.betti, U.chern_zero, n);
  ClosedCohomology Z = closed_from_open(V, n), Y = closed_from_open(U, n);
  r.betti_Z = Z.betti;
  r.betti_Y = Y.betti;

  // psi_m : H^m_Z(P^n) -> H^m_Y(P^n); phi_j : H^j_Z(Y) -> H^j(Y) has the rank of psi_{j+2}
  std::vector<long> rank_psi(top + 3, 0);
  for (int m = 1; m <= top; ++m) {
    const int k = m - 1;
    long ker = 0;
    if (k > 0) {
      ker = at(r.ker_V_to_U, k);
      if (k % 2 == 0 && !V.chern_zero[k / 2] && U.chern_zero[k / 2]) ker -= 1;
    }
    rank_psi[m] = at(r.local_Z, m) - ker;
    if (ker < 0 || rank_psi[m] < 0 || rank_psi[m] > at(r.local_Y, m))
      throw MathError("locally_closed_cohomology: inconsistent ranks");
  }
  auto phi = [&](int j) { return j < 0 || j + 2 > top ? 0L : rank_psi[j + 2]; };
  std::vector<long> b(top + 1, 0);
  ExactSequence s;
  s.name = "pair (Y, Z)";
  for (int k = 0; k <= 2 * d; ++k) {
    const long coker = at(r.betti_Y, k) - phi(k);
    const long ker = at(r.betti_Z, 2 * d - k - 1) - phi(k + 1);
    b[k] = coker + ker;
    s.push("H^" + std::to_string(k) + "_Z(Y)", at(r.betti_Z, 2 * d - k), phi(k));
    s.push("H^" + std::to_string(k) + "(Y)", at(r.betti_Y, k), coker);
    s.push("H^" + std::to_string(k) + "(Y\\Z)", b[k], k < 2 * d ? ker : 0);
  }
  r.betti = to_size(b, "locally_closed_cohomology");
  r.ledger.betti_U = U.betti;
  r.ledger.chern_zero = U.chern_zero;
  r.ledger.sequences.push_back(projective_pair("pair (P^n, Z)", r.local_Z, V.betti, V.chern_zero, n));
  r.ledger.sequences.push_back(projective_pair("pair (P^n, Y)", r.local_Y, U.betti, U.chern_zero, n));
  r.ledger.sequences.push_back(std::move(s));
  if (!r.ledger.exact()) throw MathError("locally_closed_cohomology: sequence is not exact");
  return r;
}

}  // namespace drc
