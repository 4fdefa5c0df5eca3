#include "drcoh/weyl.hpp"

#include <functional>
#include <sstream>

namespace drc {

namespace {

// C(b,k) * C(c,k) * k!, the coefficient of x^{c-k} d^{b-k} in d^b x^c.
Integer pair_coeff(int b, int c, int k) {
  Integer r = 1;
  mpz_class t;
  mpz_bin_uiui(t.get_mpz_t(), b, k);
  r *= t;
  mpz_bin_uiui(t.get_mpz_t(), c, k);
  r *= t;
  mpz_fac_ui(t.get_mpz_t(), k);
  r *= t;
  return r;
}

}  // namespace

WeylElement::WeylElement(int n, int ncentral) : n_(n), nc_(ncentral) {
  if (2 * n + ncentral > kMaxPolyVars) throw MathError("Weyl algebra too large");
}

WeylElement::WeylElement(int n, int ncentral, const Rational& c) : WeylElement(n, ncentral) {
  add_term(mono_zero(), c);
}

WeylElement WeylElement::x(int n, int i, int ncentral) {
  WeylElement r(n, ncentral);
  r.add_term(mono_unit(i), 1);
  return r;
}

WeylElement WeylElement::d(int n, int i, int ncentral) {
  WeylElement r(n, ncentral);
  r.add_term(mono_unit(n + i), 1);
  return r;
}

WeylElement WeylElement::central(int n, int ncentral, int k) {
  WeylElement r(n, ncentral);
  r.add_term(mono_unit(2 * n + k), 1);
  return r;
}

WeylElement WeylElement::from_poly(int n, int ncentral, const Poly& p) {
  WeylElement r(n, ncentral);
  if (p.nvars() > n + ncentral) throw MathError("from_poly: too many variables");
  for (const auto& [m, c] : p.terms()) {
    Monomial t = mono_zero();
    for (int i = 0; i < n && i < p.nvars(); ++i) t[i] = m[i];
    for (int k = 0; k < ncentral && n + k < p.nvars(); ++k) t[2 * n + k] = m[n + k];
    if (!mono_nonnegative(t, kMaxPolyVars)) throw MathError("from_poly: Laurent input");
    r.add_term(t, c);
  }
  return r;
}

void WeylElement::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  if (is_zero() && n_ == 0 && nc_ == 0) {
    n_ = o.n_;
    nc_ = o.nc_;
  }
  if (o.n_ != n_ || o.nc_ != nc_) {
    if (!o.is_zero()) throw MathError("Weyl algebra mismatch");
  }
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
  *this += -o;
  return *this;
}

WeylElement WeylElement::operator+(const WeylElement& o) const {
  WeylElement r = *this;
  r += o;
  return r;
}

WeylElement WeylElement::operator-(const WeylElement& o) const {
  WeylElement r = *this;
  r += -o;
  return r;
}

WeylElement WeylElement::operator-() const {
  WeylElement r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

WeylElement WeylElement::operator*(const Rational& c) const {
  if (sgn(c) == 0) return WeylElement(n_, nc_);
  WeylElement r = *this;
  for (auto& [m, x] : r.terms_) x *= c;
  return r;
}

WeylElement WeylElement::operator*(const WeylElement& o) const { return weyl_mul(*this, o); }

WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) {
  if (a.n() != b.n() || a.ncentral() != b.ncentral()) throw MathError("Weyl algebra mismatch");
  const int n = a.n();
  WeylElement r(n, a.ncentral());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      // Expand pair by pair: d_i^{ma[n+i]} passes x_i^{mb[i]}.
      std::vector<std::pair<Monomial, Integer>> acc{{mono_add(ma, mb), Integer(1)}};
      for (int i = 0; i < n; ++i) {
        int bd = ma[n + i], cx = mb[i];
        if (bd == 0 || cx == 0) continue;
        std::vector<std::pair<Monomial, Integer>> next;
        for (const auto& [m, c] : acc) {
          for (int k = 0; k <= std::min(bd, cx); ++k) {
            Monomial t = m;
            t[i] = static_cast<int16_t>(t[i] - k);
            t[n + i] = static_cast<int16_t>(t[n + i] - k);
            next.emplace_back(t, c * pair_coeff(bd, cx, k));
          }
        }
        acc.swap(next);
      }
      Rational c = ca * cb;
      for (const auto& [m, k] : acc) r.add_term(m, c * Rational(k));
    }
  }
  return r;
}

WeylElement WeylElement::substitute_central(int k, const Rational& value) const {
  WeylElement r(n_, nc_);
  int idx = 2 * n_ + k;
  for (const auto& [m, c] : terms_) {
    Monomial t = m;
    Rational f = c;
    for (int e = 0; e < m[idx]; ++e) f *= value;
    t[idx] = 0;
    r.add_term(t, f);
  }
  return r;
}

bool WeylElement::is_polynomial() const {
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < n_; ++i)
      if (m[n_ + i] != 0) return false;
  return true;
}

Poly WeylElement::to_poly() const {
  Poly p(n_ + nc_);
  for (const auto& [m, c] : terms_) {
    Monomial t = mono_zero();
    for (int i = 0; i < n_; ++i) {
      if (m[n_ + i] != 0) throw MathError("to_poly: element has derivative terms");
      t[i] = m[i];
    }
    for (int k = 0; k < nc_; ++k) t[n_ + k] = m[2 * n_ + k];
    p.add_term(t, c);
  }
  return p;
}

std::string WeylElement::to_string(const std::vector<std::string>& xnames,
                                   const std::vector<std::string>& cnames) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? "-" : "+");
    }
    first = false;
    bool wrote = false;
    bool unit = true;
    for (int i = 0; i < nvars(); ++i)
      if (m[i] != 0) unit = false;
    if (a != 1 || unit) {
      os << a.get_str();
      wrote = true;
    }
    auto emit = [&](const std::string& name, int e) {
      if (e == 0) return;
      if (wrote) os << "*";
      os << name;
      if (e != 1) os << "^" << e;
      wrote = true;
    };
    for (int k = 0; k < nc_; ++k)
      emit(k < static_cast<int>(cnames.size()) ? cnames[k] : "s" + std::to_string(k), m[2 * n_ + k]);
    for (int i = 0; i < n_; ++i) emit(xnames.at(i), m[i]);
    for (int i = 0; i < n_; ++i) emit("D" + xnames.at(i), m[n_ + i]);
  }
  return os.str();
}

long v_degree(const WeylElement& a) {
  if (a.is_zero()) return kNoDegree;
  long best = kNoDegree;
  for (const auto& [m, c] : a.terms()) {
    long w = 0;
    for (int i = 0; i < a.n(); ++i) w += m[i] - m[a.n() + i];
    best = std::max(best, w);
  }
  return best;
}

long weight_degree(const WeylElement& a, const std::vector<long>& u, const std::vector<long>& v) {
  if (a.is_zero()) return kNoDegree;
  long best = kNoDegree;
  for (const auto& [m, c] : a.terms()) {
    long w = 0;
    for (int i = 0; i < a.n(); ++i) w += u[i] * m[i] + v[i] * m[a.n() + i];
    best = std::max(best, w);
  }
  return best;
}

WeylElement initial_form(const WeylElement& a, const std::vector<long>& u,
                         const std::vector<long>& v) {
  long top = weight_degree(a, u, v);
  WeylElement r(a.n(), a.ncentral());
  for (const auto& [m, c] : a.terms()) {
    long w = 0;
    for (int i = 0; i < a.n(); ++i) w += u[i] * m[i] + v[i] * m[a.n() + i];
    if (w == top) r.add_term(m, c);
  }
  return r;
}

WeylElement euler_operator(int n, int ncentral) {
  WeylElement e(n, ncentral);
  for (int i = 0; i < n; ++i) {
    Monomial m = mono_zero();
    m[i] = 1;
    m[n + i] = 1;
    e.add_term(m, 1);
  }
  return e;
}

Poly omega_class(const Poly& p, const WeylElement& a) {
  const int n = a.n();
  if (a.ncentral() != 0) {
    for (const auto& [m, c] : a.terms())
      for (int k = 0; k < a.ncentral(); ++k)
        if (m[2 * n + k] != 0) throw MathError("omega_class: central parameters present");
  }
  Poly r(n);
  for (const auto& [m, c] : a.terms()) {
    Monomial xa = mono_zero();
    for (int i = 0; i < n; ++i) xa[i] = m[i];
    Poly t = p.mul_monomial(xa) * c;
    int total = 0;
    for (int i = 0; i < n; ++i) {
      for (int e = 0; e < m[n + i]; ++e) t = t.derivative(i);
      total += m[n + i];
    }
    if (total % 2) t = -t;
    r += t;
  }
  return r;
}

Poly omega_class(const WeylElement& a) { return omega_class(Poly(a.n(), Rational(1)), a); }

LocalFraction apply_to_fraction(const WeylElement& a, const LocalFraction& g) {
  const int n = a.n();
  const Poly& F = g.base();
  std::vector<Poly> dF;
  for (int i = 0; i < n; ++i) dF.push_back(F.derivative(i));
  // Derivatives d^b g, keyed by b, computed incrementally.
  std::map<Monomial, std::pair<Poly, int>> cache;
  Monomial zero = mono_zero();
  cache.emplace(zero, std::make_pair(g.numerator(), g.power()));
  std::function<const std::pair<Poly, int>&(const Monomial&)> deriv =
      [&](const Monomial& b) -> const std::pair<Poly, int>& {
    auto it = cache.find(b);
    if (it != cache.end()) return it->second;
    int i = 0;
    while (b[i] == 0) ++i;
    Monomial prev = b;
    prev[i] = static_cast<int16_t>(prev[i] - 1);
    const auto& [num, p] = deriv(prev);
    Poly next = num.derivative(i) * F - num * dF[i] * Rational(p);
    return cache.emplace(b, std::make_pair(std::move(next), p + 1)).first->second;
  };
  int top = 0;
  std::vector<std::pair<Poly, int>> parts;
  for (const auto& [m, c] : a.terms()) {
    Monomial b = mono_zero(), xa = mono_zero();
    for (int i = 0; i < n; ++i) {
      b[i] = m[n + i];
      xa[i] = m[i];
    }
    const auto& [num, p] = deriv(b);
    parts.emplace_back(num.mul_monomial(xa) * c, p);
    top = std::max(top, p);
  }
  Poly total(F.nvars());
  for (const auto& [num, p] : parts) total += num * F.pow(top - p);
  return LocalFraction(total, F, top);
}

}  // namespace drc
