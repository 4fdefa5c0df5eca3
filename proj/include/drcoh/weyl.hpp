#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "drcoh/poly.hpp"

namespace drc {

/// Element of the Weyl algebra D_n, optionally with extra central
/// parameters (such as s in D_n[s]). Every stored monomial is normally
/// ordered x^a d^b c^k; exponents are laid out as
///   [x_0..x_{n-1}, d_0..d_{n-1}, c_0..c_{k-1}].
class WeylElement {
 public:
  using TermMap = std::map<Monomial, Rational>;

  WeylElement() = default;
  explicit WeylElement(int n, int ncentral = 0);
  WeylElement(int n, int ncentral, const Rational& c);

  static WeylElement x(int n, int i, int ncentral = 0);
  static WeylElement d(int n, int i, int ncentral = 0);
  static WeylElement central(int n, int ncentral, int k);
  /// Polynomial in x (first n variables of p) and, if p has more
  /// variables, in the central parameters (following variables).
  static WeylElement from_poly(int n, int ncentral, const Poly& p);

  int n() const { return n_; }
  int ncentral() const { return nc_; }
  int nvars() const { return 2 * n_ + nc_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c);
  WeylElement operator+(const WeylElement& o) const;
  WeylElement operator-(const WeylElement& o) const;
  WeylElement operator-() const;
  WeylElement operator*(const WeylElement& o) const;
  WeylElement operator*(const Rational& c) const;
  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  bool operator==(const WeylElement& o) const {
    return n_ == o.n_ && nc_ == o.nc_ && terms_ == o.terms_;
  }
  bool operator!=(const WeylElement& o) const { return !(*this == o); }

  /// Substitute a value for central parameter k (the parameter stays in
  /// the layout with exponent 0).
  WeylElement substitute_central(int k, const Rational& value) const;
  /// Terms with no d-factor, as a polynomial in x and central parameters.
  bool is_polynomial() const;
  Poly to_poly() const;

  std::string to_string(const std::vector<std::string>& xnames,
                        const std::vector<std::string>& cnames = {}) const;

 private:
  int n_ = 0;
  int nc_ = 0;
  TermMap terms_;
};

WeylElement weyl_mul(const WeylElement& a, const WeylElement& b);

constexpr long kNoDegree = std::numeric_limits<long>::min();

/// Max over terms of |a| - |b| (weights x -> 1, d -> -1).
/// Returns kNoDegree for zero.
long v_degree(const WeylElement& a);
/// Weighted degree max(u.a + v.b).
long weight_degree(const WeylElement& a, const std::vector<long>& u, const std::vector<long>& v);
/// Sum of the terms of maximal (u,v)-weight.
WeylElement initial_form(const WeylElement& a, const std::vector<long>& u,
                         const std::vector<long>& v);

/// The element sum_i x_i d_i.
WeylElement euler_operator(int n, int ncentral = 0);

/// Class of a in Omega = D / (d_1 D + ... + d_n D): each x^a d^b becomes
/// (-d)^b applied to x^a. Central parameters must be absent.
Poly omega_class(const WeylElement& a);
/// Class of p * a in Omega for a polynomial p in x.
Poly omega_class(const Poly& p, const WeylElement& a);

/// Apply an operator without central parameters to g / F^p.
LocalFraction apply_to_fraction(const WeylElement& a, const LocalFraction& g);

}  // namespace drc
