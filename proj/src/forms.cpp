#include "drcoh/forms.hpp"

#include <bit>
#include <functional>
#include <sstream>

namespace drc {

int mask_size(FormMask m) { return std::popcount(m); }

int wedge_sign(FormMask a, FormMask b) {
  if (a & b) return 0;
  // count pairs (i in a, j in b) with i > j
  int inv = 0;
  for (int j = 0; j < 32; ++j)
    if (b >> j & 1u) inv += std::popcount(a >> (j + 1));
  return inv % 2 ? -1 : 1;
}

std::vector<FormMask> masks_of_degree(int n, int degree) {
  std::vector<FormMask> out;
  for (FormMask m = 0; m < (FormMask{1} << n); ++m)
    if (mask_size(m) == degree) out.push_back(m);
  return out;
}

DiffForm::DiffForm(int n, Poly base, int degree) : n_(n), degree_(degree), base_(std::move(base)) {
  if (base_.is_zero()) throw MathError("DiffForm: zero base");
}

DiffForm DiffForm::function(int n, const Poly& base, const Poly& num, int power) {
  return monomial_form(n, base, 0, num, power);
}

DiffForm DiffForm::monomial_form(int n, const Poly& base, FormMask k, const Poly& num, int power) {
  DiffForm w(n, base, mask_size(k));
  w.add(k, num, power);
  return w;
}

std::map<FormMask, Poly> DiffForm::numerators_at(int P) const {
  if (P < power_) throw MathError("numerators_at: power below canonical power");
  std::map<FormMask, Poly> out;
  Poly f = base_.pow(P - power_);
  for (const auto& [k, g] : num_) out.emplace(k, g * f);
  return out;
}

LocalFraction DiffForm::component(FormMask k) const {
  auto it = num_.find(k);
  Poly g = it == num_.end() ? Poly(n_) : it->second;
  return LocalFraction(g, base_, power_);
}

void DiffForm::add(FormMask k, const Poly& num, int power) {
  if (mask_size(k) != degree_) throw MathError("DiffForm: component of wrong degree");
  if (num.is_zero()) return;
  if (power < 0) throw MathError("DiffForm: negative power");
  if (power > power_) {
    Poly f = base_.pow(power - power_);
    for (auto& [m, g] : num_) g = g * f;
    power_ = power;
  }
  Poly add = num * base_.pow(power_ - power);
  auto it = num_.find(k);
  if (it == num_.end()) num_.emplace(k, add);
  else {
    it->second += add;
    if (it->second.is_zero()) num_.erase(it);
  }
  canonicalize();
}

void DiffForm::canonicalize() {
  if (num_.empty()) {
    power_ = 0;
    return;
  }
  if (base_.is_constant()) {
    Rational c = Rational(1) / base_.constant_term();
    Rational f = 1;
    for (int k = 0; k < power_; ++k) f *= c;
    if (f != 1)
      for (auto& [m, g] : num_) g = g * f;
    power_ = 0;
    return;
  }
  while (power_ > 0) {
    std::map<FormMask, Poly> q;
    bool ok = true;
    for (const auto& [m, g] : num_) {
      auto d = g.divide_exact(base_);
      if (!d) {
        ok = false;
        break;
      }
      q.emplace(m, std::move(*d));
    }
    if (!ok) break;
    num_.swap(q);
    --power_;
  }
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && n_ == 0) {
    *this = o;
    return *this;
  }
  if (o.degree_ != degree_ || o.n_ != n_) throw MathError("DiffForm: degree mismatch");
  if (o.base_ != base_) throw MathError("DiffForm: base mismatch");
  for (const auto& [k, g] : o.num_) add(k, g, o.power_);
  return *this;
}

DiffForm DiffForm::operator+(const DiffForm& o) const {
  DiffForm r = *this;
  r += o;
  return r;
}

DiffForm DiffForm::operator-(const DiffForm& o) const { return *this + (-o); }

DiffForm DiffForm::operator-() const {
  DiffForm r = *this;
  for (auto& [k, g] : r.num_) g = -g;
  return r;
}

DiffForm DiffForm::operator*(const Rational& c) const {
  DiffForm r = *this;
  if (sgn(c) == 0) {
    r.num_.clear();
    r.power_ = 0;
    return r;
  }
  for (auto& [k, g] : r.num_) g = g * c;
  return r;
}

bool DiffForm::operator==(const DiffForm& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  return degree_ == o.degree_ && base_ == o.base_ && power_ == o.power_ && num_ == o.num_;
}

DiffForm DiffForm::rebased(const Poly& new_base) const {
  DiffForm r(n_, new_base, degree_);
  if (is_zero()) return r;
  Poly cof(n_, Rational(1));
  if (!base_.is_constant()) {
    auto q = new_base.divide_exact(base_);
    if (!q) throw MathError("rebased: old base does not divide the new one");
    cof = *q;
  } else {
    cof = new_base * (Rational(1) / base_.constant_term());
  }
  Poly f = cof.pow(power_);
  for (const auto& [k, g] : num_) r.add(k, g * f, power_);
  return r;
}

std::string DiffForm::to_string(const std::vector<std::string>& names) const {
  if (num_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, g] : num_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << g.to_string(names) << ")";
    if (power_ > 0) {
      os << "/(" << base_.to_string(names) << ")";
      if (power_ > 1) os << "^" << power_;
    }
    for (int i = 0; i < n_; ++i)
      if (k >> i & 1u) os << " d" << names.at(i);
  }
  return os.str();
}

DiffForm de_rham_d(const DiffForm& w) {
  DiffForm r(w.n(), w.base(), w.degree() + 1);
  if (w.is_zero()) return r;
  const int p = w.power();
  for (const auto& [k, g] : w.numerators()) {
    for (int i = 0; i < w.n(); ++i) {
      FormMask bit = FormMask{1} << i;
      int sg = wedge_sign(bit, k);
      if (sg == 0) continue;
      Poly num = g.derivative(i) * w.base() - g * w.base().derivative(i) * Rational(p);
      if (sg < 0) num = -num;
      r.add(k | bit, num, p + 1);
    }
  }
  return r;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  if (a.base() != b.base()) throw MathError("wedge: base mismatch");
  DiffForm r(a.n(), a.base(), a.degree() + b.degree());
  for (const auto& [ka, ga] : a.numerators())
    for (const auto& [kb, gb] : b.numerators()) {
      int sg = wedge_sign(ka, kb);
      if (sg == 0) continue;
      r.add(ka | kb, ga * gb * Rational(sg), a.power() + b.power());
    }
  return r;
}

}  // namespace drc

// ---------------------------------------------------------------------------

namespace drc {

namespace {

using LaurentForm = std::map<FormMask, Poly>;

void laurent_add(LaurentForm& f, FormMask k, const Poly& p) {
  if (p.is_zero()) return;
  auto it = f.find(k);
  if (it == f.end()) {
    f.emplace(k, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) f.erase(it);
}

LaurentForm laurent_wedge(const LaurentForm& a, const LaurentForm& b) {
  LaurentForm r;
  for (const auto& [ka, ga] : a)
    for (const auto& [kb, gb] : b) {
      int sg = wedge_sign(ka, kb);
      if (sg == 0) continue;
      laurent_add(r, ka | kb, ga * gb * Rational(sg));
    }
  return r;
}

Monomial row_monomial(const std::vector<long>& row) {
  Monomial m = mono_zero();
  for (std::size_t l = 0; l < row.size(); ++l) m[l] = static_cast<int16_t>(row[l]);
  return m;
}

int target_vars(const MonomialMap& m) { return m.A.empty() ? 0 : static_cast<int>(m.A[0].size()); }

}  // namespace

MonomialMap MonomialMap::identity(int n) {
  MonomialMap m;
  m.A.assign(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) m.A[i][i] = 1;
  return m;
}

MonomialMap MonomialMap::then(const MonomialMap& next) const {
  MonomialMap r;
  const int n = this->n(), mid = target_vars(*this), out = target_vars(next);
  if (mid != next.n()) throw MathError("MonomialMap: dimension mismatch");
  r.A.assign(n, std::vector<long>(out, 0));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < mid; ++l)
      for (int m = 0; m < out; ++m) r.A[k][m] += A[k][l] * next.A[l][m];
  return r;
}

MonomialMap MonomialMap::inverse() const {
  const int n = this->n();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(A[i].size()) != n) throw MathError("MonomialMap: not square");
    for (int j = 0; j < n; ++j) a[i][j] = A[i][j];
    a[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw MathError("MonomialMap: singular");
    std::swap(a[p], a[c]);
    Rational inv = Rational(1) / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  MonomialMap r;
  r.A.assign(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational& x = a[i][n + j];
      if (x.get_den() != 1) throw MathError("MonomialMap: not unimodular");
      r.A[i][j] = x.get_num().get_si();
    }
  return r;
}

Poly pullback(const Poly& p, const MonomialMap& m) {
  const int nt = target_vars(m);
  if (p.nvars() != m.n()) throw MathError("pullback: variable count mismatch");
  Poly r(nt);
  for (const auto& [mono, c] : p.terms()) {
    Monomial out = mono_zero();
    for (int k = 0; k < m.n(); ++k) {
      if (mono[k] == 0) continue;
      for (int l = 0; l < nt; ++l) out[l] = static_cast<int16_t>(out[l] + mono[k] * m.A[k][l]);
    }
    r.add_term(out, c);
  }
  return r;
}

DiffForm translate_form(const DiffForm& w, const MonomialMap& m, const Poly& target_base) {
  const int nt = target_vars(m);
  if (target_base.nvars() != nt) throw MathError("translate_form: base lives in the wrong ring");
  DiffForm out(nt, target_base, w.degree());
  if (w.is_zero()) return out;
  if (w.n() != m.n()) throw MathError("translate_form: form lives in the wrong ring");

  // images of dc_k = c_k * sum_l A[k][l] dc'_l / c'_l
  std::vector<LaurentForm> dimg(m.n());
  for (int k = 0; k < m.n(); ++k) {
    Monomial ck = row_monomial(m.A[k]);
    for (int l = 0; l < nt; ++l) {
      if (m.A[k][l] == 0) continue;
      Monomial e = ck;
      e[l] = static_cast<int16_t>(e[l] - 1);
      laurent_add(dimg[k], FormMask{1} << l, Poly::term(nt, e, Rational(m.A[k][l])));
    }
  }
  LaurentForm total;
  for (const auto& [K, g] : w.numerators()) {
    LaurentForm t{{0, pullback(g, m)}};
    for (int k = 0; k < m.n(); ++k)
      if (K >> k & 1u) t = laurent_wedge(t, dimg[k]);
    for (const auto& [L, h] : t) laurent_add(total, L, h);
  }

  const int p = w.power();
  Poly G = pullback(w.base(), m);
  Monomial mu = G.min_exponents();
  Monomial shift = mono_zero();
  for (int l = 0; l < nt; ++l) shift[l] = static_cast<int16_t>(-p * mu[l]);
  Poly Q(nt, Rational(1));
  if (p > 0) {
    Monomial neg = mono_zero();
    for (int l = 0; l < nt; ++l) neg[l] = static_cast<int16_t>(-mu[l]);
    Poly H = G.mul_monomial(neg);
    auto q = target_base.divide_exact(H);
    if (!q) throw MathError("translate_form: denominator does not divide the target divisor");
    Q = q->pow(p);
  }
  std::map<FormMask, Poly> nums;
  int e = 0;
  for (const auto& [L, h] : total) {
    Poly M = h.mul_monomial(shift) * Q;
    if (M.is_zero()) continue;
    Monomial lo = M.min_exponents();
    for (int l = 0; l < nt; ++l) {
      if (lo[l] >= 0) continue;
      if (!target_base.divide_exact(Poly::variable(nt, l)))
        throw MathError("translate_form: pole along a coordinate that is not inverted");
      e = std::max(e, -static_cast<int>(lo[l]));
    }
    nums.emplace(L, std::move(M));
  }
  Poly Te = target_base.pow(e);
  for (const auto& [L, M] : nums) out.add(L, M * Te, p + e);
  return out;
}

MonomialMap projective_transition(int n, int j, int jp) {
  auto pos = [](int chart, int i) { return i < chart ? i : i - 1; };
  MonomialMap m;
  m.A.assign(n, std::vector<long>(n, 0));
  if (j == jp) return MonomialMap::identity(n);
  for (int i = 0; i <= n; ++i) {
    if (i == j) continue;
    int k = pos(j, i);
    if (i != jp) m.A[k][pos(jp, i)] += 1;
    m.A[k][pos(jp, j)] -= 1;
  }
  return m;
}

DiffForm dlog_monomial(int n, const std::vector<long>& m, const Poly& base) {
  Poly prod(n, Rational(1));
  for (int k = 0; k < n; ++k)
    if (m[k] != 0) prod = prod * Poly::variable(n, k);
  DiffForm w(n, prod, 1);
  for (int k = 0; k < n; ++k) {
    if (m[k] == 0) continue;
    Monomial others = prod.lead_monomial();
    others[k] = 0;
    w.add(FormMask{1} << k, Poly::term(n, others, Rational(m[k])), 1);
  }
  return translate_form(w, MonomialMap::identity(n), base);
}

// ---------------------------------------------------------------------------

FormSpace::FormSpace(int n, Poly base, int degree) : n_(n), degree_(degree), base_(std::move(base)) {}

std::optional<SparseVec> FormSpace::vectorize(const DiffForm& w, bool grow) const {
  std::map<std::size_t, Rational> acc;
  for (const auto& [K, g] : w.numerators_at(power_))
    for (const auto& [mono, c] : g.terms()) {
      auto key = std::make_pair(K, mono);
      auto it = keys_.find(key);
      if (it == keys_.end()) {
        if (!grow) return std::nullopt;
        it = keys_.emplace(key, keys_.size()).first;
      }
      acc[it->second] += c;
    }
  SparseVec v;
  for (auto& [i, c] : acc)
    if (sgn(c) != 0) v.emplace_back(i, c);
  return v;
}

void FormSpace::rebuild(int power) {
  power_ = power;
  keys_.clear();
  ech_ = EchelonBasis();
  for (const auto& b : basis_) ech_.insert(*vectorize(b, true));
}

void FormSpace::check(const DiffForm& w) const {
  if (w.degree() != degree_) throw MathError("FormSpace: degree mismatch");
  if (w.base() != base_) throw MathError("FormSpace: base mismatch");
}

bool FormSpace::add(const DiffForm& w) {
  if (w.is_zero()) return false;
  check(w);
  if (w.power() > power_) rebuild(w.power());
  SparseVec v = *vectorize(w, true);
  if (ech_.contains(v)) return false;
  ech_.insert(v);
  basis_.push_back(w);
  return true;
}

std::optional<std::vector<Rational>> FormSpace::coordinates(const DiffForm& w) const {
  std::vector<Rational> out(basis_.size());
  if (w.is_zero()) return out;
  check(w);
  if (w.power() > power_) return std::nullopt;
  auto v = vectorize(w, false);
  if (!v) return std::nullopt;
  auto c = ech_.coordinates(*v);
  if (!c) return std::nullopt;
  for (const auto& [i, x] : *c) out[i] = x;
  return out;
}

DiffForm FormSpace::combination(const std::vector<Rational>& c) const {
  DiffForm r(n_, base_, degree_);
  for (std::size_t i = 0; i < c.size() && i < basis_.size(); ++i)
    if (sgn(c[i]) != 0) r += basis_[i] * c[i];
  return r;
}

CanonicalCoordinates canonical_coordinates(const std::vector<DiffForm>& forms) {
  CanonicalCoordinates cc;
  for (const auto& w : forms) cc.power = std::max(cc.power, w.power());
  std::map<std::pair<FormMask, Monomial>, std::size_t> index;
  std::vector<std::map<FormMask, Poly>> nums;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (i > 0 && !forms[i].is_zero() && !forms[0].is_zero() &&
        (forms[i].base() != forms[0].base() || forms[i].degree() != forms[0].degree()))
      throw MathError("canonical_coordinates: forms must share base and degree");
    nums.push_back(forms[i].numerators_at(cc.power));
    for (const auto& [K, g] : nums.back())
      for (const auto& [mono, c] : g.terms()) index.emplace(std::make_pair(K, mono), 0);
  }
  for (auto& [key, idx] : index) {
    idx = cc.keys.size();
    cc.keys.push_back(key);
  }
  cc.matrix = RatMatrix(cc.keys.size(), forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (const auto& [K, g] : nums[i])
      for (const auto& [mono, c] : g.terms()) cc.matrix.add(index.at({K, mono}), i, c);
  cc.rank = matrix_rank(cc.matrix);
  return cc;
}

// ---------------------------------------------------------------------------

FiniteSubcomplex::FiniteSubcomplex(int n, const Poly& base) : n_(n), base_(base) {
  for (int q = 0; q <= n; ++q) terms_.emplace_back(n, base, q);
}

bool FiniteSubcomplex::add(const DiffForm& w) {
  if (w.is_zero()) return false;
  if (!terms_.at(w.degree()).add(w)) return false;
  if (w.degree() < n_) {
    DiffForm dw = de_rham_d(w);
    if (!dw.is_zero()) terms_[w.degree() + 1].add(dw);
  }
  return true;
}

RatMatrix FiniteSubcomplex::differential(int q) const {
  const FormSpace& src = terms_.at(q);
  const FormSpace& dst = terms_.at(q + 1);
  RatMatrix m(dst.dim(), src.dim());
  for (std::size_t i = 0; i < src.dim(); ++i) {
    auto c = dst.coordinates(de_rham_d(src.basis()[i]));
    if (!c) throw MathError("FiniteSubcomplex: not closed under d");
    for (std::size_t r = 0; r < c->size(); ++r)
      if (sgn((*c)[r]) != 0) m.set(r, i, (*c)[r]);
  }
  return m;
}

std::vector<std::size_t> FiniteSubcomplex::dims() const {
  std::vector<std::size_t> d;
  for (const auto& t : terms_) d.push_back(t.dim());
  return d;
}

std::vector<std::size_t> FiniteSubcomplex::cohomology_dims() const {
  std::vector<std::size_t> rk(n_ + 1, 0), h(n_ + 1);
  for (int q = 0; q < n_; ++q) rk[q] = matrix_rank(differential(q));
  for (int q = 0; q <= n_; ++q) h[q] = terms_[q].dim() - rk[q] - (q > 0 ? rk[q - 1] : 0);
  return h;
}

std::vector<WeylElement> exhaustion_level(int n, int k) {
  // exponent vectors of 2n variables with total degree <= k, by degree
  std::vector<WeylElement> out;
  for (int deg = 0; deg <= k; ++deg) {
    std::vector<int> e(2 * n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == 2 * n - 1) {
        e[i] = left;
        Monomial m = mono_zero();
        for (int t = 0; t < 2 * n; ++t) m[t] = static_cast<int16_t>(e[t]);
        WeylElement w(n);
        w.add_term(m, Rational(1));
        out.push_back(std::move(w));
        return;
      }
      for (int v = left; v >= 0; --v) {
        e[i] = v;
        rec(i + 1, left - v);
      }
    };
    if (n == 0) {
      if (deg == 0) out.emplace_back(0, 0, Rational(1));
      continue;
    }
    rec(0, deg);
  }
  return out;
}

EnlargeStats enlarge_subcomplex(FiniteSubcomplex& c, const std::vector<std::size_t>& target, long a,
                                int max_level) {
  EnlargeStats st;
  const int n = c.n();
  if (static_cast<int>(target.size()) != n + 1) throw MathError("enlarge_subcomplex: target size");
  const LocalFraction gen(Poly(n, Rational(1)), c.base(), static_cast<int>(a));
  while (true) {
    auto h = c.cohomology_dims();
    int i0 = -1;
    for (int q = n; q >= 0; --q)
      if (h[q] != target[q]) {
        i0 = q;
        break;
      }
    if (i0 < 0) return st;
    if (h[i0] < target[i0])
      throw MathError("enlarge_subcomplex: cohomology in degree " + std::to_string(i0) +
                      " is smaller than the target");
    if (i0 == 0) throw MathError("enlarge_subcomplex: excess closed functions");
    std::size_t excess = h[i0] - target[i0];

    const FormSpace& top = c.term(i0);
    EchelonBasis bounds;
    {
      RatMatrix d = c.differential(i0 - 1);
      for (std::size_t j = 0; j < d.cols(); ++j) bounds.insert(d.column(j));
    }
    std::vector<DiffForm> cands, dcands;
    const auto masks = masks_of_degree(n, i0 - 1);
    std::size_t seen_ops = 0;
    for (int k = 0; k <= max_level && excess > 0; ++k) {
      auto ops = exhaustion_level(n, k);
      for (std::size_t t = seen_ops; t < ops.size(); ++t) {
        LocalFraction f = apply_to_fraction(ops[t], gen);
        if (f.is_zero()) continue;
        for (FormMask K : masks) {
          DiffForm eta = DiffForm::monomial_form(n, c.base(), K, f.numerator(), f.power());
          DiffForm deta = de_rham_d(eta);
          if (deta.is_zero()) continue;
          cands.push_back(std::move(eta));
          dcands.push_back(std::move(deta));
        }
      }
      seen_ops = ops.size();
      std::vector<DiffForm> cols = dcands;
      for (const auto& b : top.basis()) cols.push_back(-b);
      auto cc = canonical_coordinates(cols);
      auto rk = rank_kernel(cc.matrix);
      for (const auto& v : rk.kernel) {
        SparseVec z;
        DiffForm eta(n, c.base(), i0 - 1);
        for (const auto& [i, x] : v) {
          if (i < cands.size()) eta += cands[i] * x;
          else z.emplace_back(i - cands.size(), x);
        }
        if (z.empty() || bounds.contains(z)) continue;
        c.add(eta);
        bounds.insert(z);
        ++st.added;
        st.max_level_used = std::max(st.max_level_used, k);
        if (--excess == 0) break;
      }
    }
    if (excess > 0)
      throw ResourceLimit("enlarge", "no killing form up to exhaustion level " + std::to_string(max_level) +
                                         " in degree " + std::to_string(i0 - 1));
  }
}

}  // namespace drc
