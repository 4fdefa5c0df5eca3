#include "drcoh/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace drc {

Monomial mono_zero() {
  Monomial m{};
  m.fill(0);
  return m;
}

Monomial mono_unit(int i, int e) {
  Monomial m = mono_zero();
  m[i] = static_cast<int16_t>(e);
  return m;
}

Monomial mono_add(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxPolyVars; ++i) m[i] = static_cast<int16_t>(a[i] + b[i]);
  return m;
}

Monomial mono_sub(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxPolyVars; ++i) m[i] = static_cast<int16_t>(a[i] - b[i]);
  return m;
}

bool mono_divides(const Monomial& a, const Monomial& b, int nvars) {
  for (int i = 0; i < nvars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

int mono_degree(const Monomial& a, int nvars) {
  int d = 0;
  for (int i = 0; i < nvars; ++i) d += a[i];
  return d;
}

bool mono_nonnegative(const Monomial& a, int nvars) {
  for (int i = 0; i < nvars; ++i)
    if (a[i] < 0) return false;
  return true;
}

// ---------------------------------------------------------------------------

Poly::Poly(int nvars) : nvars_(nvars) {
  if (nvars < 0 || nvars > kMaxPolyVars) throw MathError("unsupported number of variables");
}

Poly::Poly(int nvars, const Rational& c) : Poly(nvars) {
  if (sgn(c) != 0) terms_.emplace(mono_zero(), c);
}

Poly Poly::variable(int nvars, int i) {
  Poly p(nvars);
  p.terms_.emplace(mono_unit(i), Rational(1));
  return p;
}

Poly Poly::term(int nvars, const Monomial& m, const Rational& c) {
  Poly p(nvars);
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == mono_zero());
}

bool Poly::is_polynomial() const {
  for (const auto& [m, c] : terms_)
    if (!mono_nonnegative(m, nvars_)) return false;
  return true;
}

Rational Poly::constant_term() const { return coeff(mono_zero()); }

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m, nvars_));
  return d;
}

int Poly::min_total_degree() const {
  if (terms_.empty()) return -1;
  int d = mono_degree(terms_.begin()->first, nvars_);
  for (const auto& [m, c] : terms_) d = std::min(d, mono_degree(m, nvars_));
  return d;
}

int Poly::degree_in(int i) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max<int>(d, m[i]);
  return d;
}

bool Poly::is_homogeneous() const { return total_degree() == min_total_degree(); }

const Monomial& Poly::lead_monomial() const {
  if (terms_.empty()) throw MathError("leading monomial of zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& Poly::lead_coeff() const {
  if (terms_.empty()) throw MathError("leading coefficient of zero polynomial");
  return terms_.rbegin()->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(std::max(nvars_, o.nvars_));
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(mono_add(m1, m2), c1 * c2);
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly Poly::operator*(const Rational& c) const {
  if (sgn(c) == 0) return Poly(nvars_);
  Poly r = *this;
  for (auto& [m, x] : r.terms_) x *= c;
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) {
    if (terms_.size() != 1) throw MathError("negative power of a non-monomial");
    const auto& [m, c] = *terms_.begin();
    Monomial r = mono_zero();
    for (int i = 0; i < nvars_; ++i) r[i] = static_cast<int16_t>(m[i] * e);
    Rational rc = 1;
    for (int k = 0; k < -e; ++k) rc /= c;
    return term(nvars_, r, rc);
  }
  Poly result(nvars_, Rational(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::derivative(int i) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial d = m;
    d[i] = static_cast<int16_t>(d[i] - 1);
    r.add_term(d, c * m[i]);
  }
  return r;
}

Poly Poly::mul_monomial(const Monomial& m) const {
  Poly r(nvars_);
  for (const auto& [a, c] : terms_) r.terms_.emplace(mono_add(a, m), c);
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  if (static_cast<int>(images.size()) < nvars_) throw MathError("substitute: too few images");
  int tn = images.empty() ? 0 : images[0].nvars();
  for (const auto& im : images) tn = std::max(tn, im.nvars());
  Poly r(tn);
  // Cache powers per variable.
  std::vector<std::map<int, Poly>> cache(nvars_);
  auto power = [&](int i, int e) -> const Poly& {
    auto it = cache[i].find(e);
    if (it != cache[i].end()) return it->second;
    Poly p = images[i].pow(e);
    if (p.nvars_ < tn) p.nvars_ = tn;
    return cache[i].emplace(e, std::move(p)).first->second;
  };
  for (const auto& [m, c] : terms_) {
    Poly t(tn, c);
    for (int i = 0; i < nvars_; ++i)
      if (m[i] != 0) t = t * power(i, m[i]);
    r += t;
  }
  return r;
}

Rational Poly::evaluate(const std::vector<Rational>& values) const {
  Rational s = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] >= 0) {
        for (int k = 0; k < m[i]; ++k) t *= values[i];
      } else {
        for (int k = 0; k < -m[i]; ++k) t /= values[i];
      }
    }
    s += t;
  }
  return s;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw MathError("division by zero polynomial");
  Poly q(std::max(nvars_, d.nvars_));
  Poly r = *this;
  const Monomial& ld = d.lead_monomial();
  const Rational& lc = d.lead_coeff();
  int n = std::max(nvars_, d.nvars_);
  while (!r.is_zero()) {
    const Monomial lm = r.lead_monomial();
    if (!mono_divides(ld, lm, n)) return std::nullopt;
    Monomial qm = mono_sub(lm, ld);
    Rational qc = r.lead_coeff() / lc;
    q.add_term(qm, qc);
    for (const auto& [m, c] : d.terms_) r.add_term(mono_add(m, qm), -qc * c);
  }
  return q;
}

Poly Poly::remap(int new_nvars, const std::vector<int>& map) const {
  Poly r(new_nvars);
  for (const auto& [m, c] : terms_) {
    Monomial t = mono_zero();
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (map[i] < 0) throw MathError("remap drops a variable in use");
      t[map[i]] = static_cast<int16_t>(t[map[i]] + m[i]);
    }
    r.add_term(t, c);
  }
  return r;
}

Rational Poly::content() const {
  if (terms_.empty()) return 1;
  Integer num = 0, den = 1;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r(num, den);
  r.canonicalize();
  if (sgn(lead_coeff()) < 0) r = -r;
  return r;
}

Poly Poly::primitive() const {
  if (terms_.empty()) return *this;
  return *this * (Rational(1) / content());
}

Monomial Poly::min_exponents() const {
  Monomial r = mono_zero();
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first) {
      r = m;
      first = false;
    } else {
      for (int i = 0; i < nvars_; ++i) r[i] = std::min(r[i], m[i]);
    }
  }
  return r;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print in descending degree, then descending lex for readability.
  std::vector<std::pair<Monomial, Rational>> ts(terms_.rbegin(), terms_.rend());
  std::stable_sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
    return mono_degree(a.first, nvars_) > mono_degree(b.first, nvars_);
  });
  for (const auto& [m, c] : ts) {
    Rational a = abs(c);
    bool neg = sgn(c) < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? "-" : "+");
    }
    first = false;
    bool is_one = (m == mono_zero());
    bool wrote = false;
    if (a != 1 || is_one) {
      os << a.get_str();
      wrote = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i));
      if (m[i] != 1) os << "^" << (m[i] < 0 ? "(" + std::to_string(m[i]) + ")" : std::to_string(m[i]));
      wrote = true;
    }
  }
  return os.str();
}

std::vector<std::string> default_names(int n, const std::string& stem) {
  std::vector<std::string> r;
  for (int i = 0; i < n; ++i) r.push_back(stem + std::to_string(i));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& names) : s_(s), names_(names) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return p;
  }

 private:
  int n() const { return static_cast<int>(names_.size()); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    skip();
    Poly acc(n());
    bool first = true;
    while (true) {
      skip();
      bool neg = false;
      if (!first) {
        if (accept('+')) neg = false;
        else if (accept('-')) neg = true;
        else break;
      }
      first = false;
      Poly t = term();
      if (neg) acc -= t;
      else acc += t;
    }
    return acc;
  }

  Poly term() {
    Poly acc = unary();
    while (true) {
      skip();
      if (accept('*')) {
        acc = acc * unary();
      } else if (pos_ < s_.size() && s_[pos_] == '/') {
        std::size_t at = pos_;
        ++pos_;
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) {
          if (d.is_monomial()) {
            acc = acc * d.pow(-1);
            continue;
          }
          throw ParseError("division only by nonzero constants or monomials", at);
        }
        acc = acc * (Rational(1) / d.constant_term());
      } else {
        break;
      }
    }
    return acc;
  }

  Poly unary() {
    skip();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    skip();
    if (accept('^')) {
      skip();
      bool neg = false;
      bool paren = accept('(');
      skip();
      if (accept('-')) neg = true;
      skip();
      std::size_t at = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("expected integer exponent", at);
      long e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + (s_[pos_] - '0');
        if (e > 10000) throw ParseError("exponent too large", at);
        ++pos_;
      }
      if (paren && !accept(')')) throw ParseError("expected ')'", pos_);
      if (neg && !base.is_monomial()) throw ParseError("negative power of a non-monomial", at);
      return base.pow(neg ? -static_cast<int>(e) : static_cast<int>(e));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Rational v(Integer(s_.substr(start, pos_ - start)));
      return Poly(n(), v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      for (int i = 0; i < n(); ++i)
        if (names_[i] == name) return Poly::variable(n(), i);
      throw ParseError("unknown variable '" + name + "'", start);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  const std::string& s_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& names) {
  if (static_cast<int>(names.size()) > kMaxPolyVars) throw ParseError("too many variables", 0);
  return Parser(text, names).parse();
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  for (const auto& n : out)
    if (n.empty()) throw ParseError("empty variable name", 0);
  return out;
}

// ---------------------------------------------------------------------------

Poly dehomogenize(const Poly& f, int j) {
  int n = f.nvars();
  if (j < 0 || j >= n) throw MathError("dehomogenize: chart index out of range");
  if (!f.is_homogeneous()) throw MathError("dehomogenize: polynomial is not homogeneous");
  Poly r(n - 1);
  for (const auto& [m, c] : f.terms()) {
    Monomial t = mono_zero();
    int k = 0;
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      t[k++] = m[i];
    }
    r.add_term(t, c);
  }
  return r;
}

Poly rehomogenize(const Poly& g, int j, int deg) {
  int n = g.nvars() + 1;
  Poly r(n);
  for (const auto& [m, c] : g.terms()) {
    Monomial t = mono_zero();
    int k = 0, d = 0;
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      t[i] = m[k];
      d += m[k];
      ++k;
    }
    if (d > deg) throw MathError("rehomogenize: degree too small");
    t[j] = static_cast<int16_t>(deg - d);
    r.add_term(t, c);
  }
  return r;
}

std::vector<std::string> chart_names(const std::vector<std::string>& names, int j) {
  std::vector<std::string> r;
  for (int i = 0; i < static_cast<int>(names.size()); ++i)
    if (i != j) r.push_back(names[i] + "/" + names[j]);
  return r;
}

// ---------------------------------------------------------------------------

LocalFraction::LocalFraction(Poly numerator, Poly base, int power)
    : num_(std::move(numerator)), base_(std::move(base)), power_(power) {
  if (power_ < 0) throw MathError("negative denominator power");
  if (base_.is_zero()) throw MathError("zero denominator base");
  canonicalize();
}

void LocalFraction::canonicalize() {
  if (num_.is_zero()) {
    power_ = 0;
    return;
  }
  if (base_.is_constant()) {
    Rational c = base_.constant_term();
    for (int k = 0; k < power_; ++k) num_ = num_ * (Rational(1) / c);
    power_ = 0;
    return;
  }
  while (power_ > 0) {
    auto q = num_.divide_exact(base_);
    if (!q) break;
    num_ = std::move(*q);
    --power_;
  }
}

Poly LocalFraction::numerator_at(int p) const {
  if (p < power_) throw MathError("numerator_at: power below canonical power");
  return num_ * base_.pow(p - power_);
}

LocalFraction LocalFraction::operator+(const LocalFraction& o) const {
  if (base_ != o.base_) throw MathError("fraction bases differ");
  int p = std::max(power_, o.power_);
  return LocalFraction(numerator_at(p) + o.numerator_at(p), base_, p);
}

LocalFraction LocalFraction::operator-(const LocalFraction& o) const {
  if (base_ != o.base_) throw MathError("fraction bases differ");
  int p = std::max(power_, o.power_);
  return LocalFraction(numerator_at(p) - o.numerator_at(p), base_, p);
}

LocalFraction LocalFraction::operator*(const LocalFraction& o) const {
  if (base_ != o.base_) throw MathError("fraction bases differ");
  return LocalFraction(num_ * o.num_, base_, power_ + o.power_);
}

LocalFraction LocalFraction::operator-() const {
  LocalFraction r = *this;
  r.num_ = -r.num_;
  return r;
}

bool LocalFraction::operator==(const LocalFraction& o) const {
  if (base_ != o.base_) return false;
  int p = std::max(power_, o.power_);
  return numerator_at(p) == o.numerator_at(p);
}

std::string LocalFraction::to_string(const std::vector<std::string>& names) const {
  if (power_ == 0) return num_.to_string(names);
  std::string s = "(" + num_.to_string(names) + ")/(" + base_.to_string(names) + ")";
  if (power_ > 1) s += "^" + std::to_string(power_);
  return s;
}

// ---------------------------------------------------------------------------

std::vector<Poly> normalized_factors(const std::vector<Poly>& factors) {
  std::vector<Poly> out;
  auto push = [&](const Poly& p) {
    if (p.is_constant()) return;
    Poly q = p.primitive();
    for (const auto& e : out)
      if (e == q) return;
    out.push_back(q);
  };
  for (const auto& f : factors) {
    if (f.is_zero()) throw MathError("zero factor in divisor");
    Monomial m = f.min_exponents();
    int n = f.nvars();
    for (int i = 0; i < n; ++i)
      if (m[i] > 0) push(Poly::variable(n, i));
    Monomial neg = mono_zero();
    for (int i = 0; i < n; ++i) neg[i] = static_cast<int16_t>(-m[i]);
    Poly rest = f.mul_monomial(neg);
    if (rest.is_monomial()) continue;
    push(rest);
  }
  return out;
}

Poly product(int nvars, const std::vector<Poly>& factors) {
  Poly r(nvars, Rational(1));
  for (const auto& f : factors) r = r * f;
  return r;
}

}  // namespace drc
