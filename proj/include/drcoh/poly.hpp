#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drcoh/exactla.hpp"

namespace drc {

constexpr int kMaxPolyVars = 12;

/// Exponent vector. Negative entries are allowed so that the same type
/// carries Laurent monomials (torus characters, chart transitions).
using Monomial = std::array<int16_t, kMaxPolyVars>;

Monomial mono_zero();
Monomial mono_unit(int i, int e = 1);
Monomial mono_add(const Monomial& a, const Monomial& b);
Monomial mono_sub(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& a, const Monomial& b, int nvars);
int mono_degree(const Monomial& a, int nvars);
bool mono_nonnegative(const Monomial& a, int nvars);

/// Multivariate (Laurent) polynomial over Q in a fixed number of variables.
/// Terms are ordered lexicographically with x_0 > x_1 > ...; the last map
/// entry is the lex-leading term.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Poly() = default;
  explicit Poly(int nvars);
  Poly(int nvars, const Rational& c);

  static Poly variable(int nvars, int i);
  static Poly term(int nvars, const Monomial& m, const Rational& c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_polynomial() const;  // no negative exponents
  Rational constant_term() const;
  Rational coeff(const Monomial& m) const;
  int total_degree() const;       // max total degree; -1 for zero
  int min_total_degree() const;   // min total degree; -1 for zero
  int degree_in(int i) const;
  bool is_homogeneous() const;
  const Monomial& lead_monomial() const;
  const Rational& lead_coeff() const;

  void add_term(const Monomial& m, const Rational& c);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(int e) const;
  Poly derivative(int i) const;
  Poly mul_monomial(const Monomial& m) const;
  /// Replace x_i by images[i]; the images share a common number of variables.
  Poly substitute(const std::vector<Poly>& images) const;
  /// Evaluate x_i = values[i].
  Rational evaluate(const std::vector<Rational>& values) const;
  /// Exact quotient this / d, or nullopt if d does not divide this.
  std::optional<Poly> divide_exact(const Poly& d) const;
  /// Embed into a ring with more variables (variable i keeps index map[i]).
  Poly remap(int new_nvars, const std::vector<int>& map) const;

  /// Positive rational c with this = c * primitive integral poly, sign
  /// chosen so that the lex-leading coefficient of the result is positive.
  Rational content() const;
  Poly primitive() const;
  /// Exponent vector of the largest monomial dividing every term
  /// (componentwise minimum).
  Monomial min_exponents() const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int nvars_ = 0;
  TermMap terms_;
};

/// Default variable names x0, x1, ...
std::vector<std::string> default_names(int n, const std::string& stem = "x");

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  /// Wraps an error from a nested parse with the location of the outer one.
  ParseError(const std::string& context, const ParseError& inner)
      : std::runtime_error(context + ": " + inner.what()), pos_(inner.pos_) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Parse a polynomial over the declared variables. Grammar:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*      ('/' only by nonzero constants)
///   unary  := ('+'|'-') unary | power
///   power  := atom ['^' integer]            (negative powers of monomials allowed)
///   atom   := number ['/' number] | name | '(' expr ')'
Poly parse_poly(const std::string& text, const std::vector<std::string>& names);
std::vector<std::string> split_names(const std::string& csv);

/// f(x_0..x_n) homogeneous -> f(x_0/x_j, .., 1, .., x_n/x_j) in n variables
/// ordered by increasing i != j.
Poly dehomogenize(const Poly& f, int j);
/// Inverse direction: g in the chart variables of chart j, multiplied by
/// x_j^deg so it becomes a homogeneous polynomial in n+1 variables.
Poly rehomogenize(const Poly& g, int j, int deg);
/// Names of the chart coordinates x_i/x_j.
std::vector<std::string> chart_names(const std::vector<std::string>& names, int j);

/// Element g / F^k of R[F^{-1}] in canonical form.
class LocalFraction {
 public:
  LocalFraction() = default;
  LocalFraction(Poly numerator, Poly base, int power);

  const Poly& numerator() const { return num_; }
  const Poly& base() const { return base_; }
  int power() const { return power_; }
  bool is_zero() const { return num_.is_zero(); }

  LocalFraction operator+(const LocalFraction& o) const;
  LocalFraction operator-(const LocalFraction& o) const;
  LocalFraction operator*(const LocalFraction& o) const;
  LocalFraction operator-() const;
  bool operator==(const LocalFraction& o) const;
  /// Numerator over base^p for p >= power().
  Poly numerator_at(int p) const;
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void canonicalize();
  Poly num_;
  Poly base_;
  int power_ = 0;
};

/// Split a polynomial into a list of distinct primitive factors that we can
/// detect without factorization: monomial content is split into variables,
/// identical factors are merged, constants are dropped.
std::vector<Poly> normalized_factors(const std::vector<Poly>& factors);
Poly product(int nvars, const std::vector<Poly>& factors);

}  // namespace drc
