#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drcoh/exactla.hpp"
#include "drcoh/poly.hpp"
#include "drcoh/weyl.hpp"

namespace drc {

/// Subset of coordinates {i : bit i set}, i.e. the form dx_K.
using FormMask = uint32_t;

int mask_size(FormMask m);
/// Sign of dx_A ^ dx_B = sign * dx_{A u B}; 0 if A and B meet.
int wedge_sign(FormMask a, FormMask b);
std::vector<FormMask> masks_of_degree(int n, int degree);

/// Algebraic differential form sum_K g_K / F^p dx_K on the complement of
/// Var(F) in n-space, with a single denominator power p kept minimal.
class DiffForm {
 public:
  DiffForm() = default;
  DiffForm(int n, Poly base, int degree);

  static DiffForm function(int n, const Poly& base, const Poly& num, int power);
  /// num / base^power dx_K
  static DiffForm monomial_form(int n, const Poly& base, FormMask k, const Poly& num, int power);

  int n() const { return n_; }
  int degree() const { return degree_; }
  const Poly& base() const { return base_; }
  int power() const { return power_; }
  const std::map<FormMask, Poly>& numerators() const { return num_; }
  bool is_zero() const { return num_.empty(); }

  /// Numerators over base^P for P >= power().
  std::map<FormMask, Poly> numerators_at(int P) const;
  LocalFraction component(FormMask k) const;

  void add(FormMask k, const Poly& num, int power);
  DiffForm operator+(const DiffForm& o) const;
  DiffForm operator-(const DiffForm& o) const;
  DiffForm operator-() const;
  DiffForm operator*(const Rational& c) const;
  DiffForm& operator+=(const DiffForm& o);
  bool operator==(const DiffForm& o) const;
  bool operator!=(const DiffForm& o) const { return !(*this == o); }

  /// Same form written over a different base G = base * cofactor.
  DiffForm rebased(const Poly& new_base) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void canonicalize();
  int n_ = 0;
  int degree_ = 0;
  Poly base_;
  int power_ = 0;
  std::map<FormMask, Poly> num_;
};

DiffForm de_rham_d(const DiffForm& w);
/// Wedge product of forms over the same base.
DiffForm wedge(const DiffForm& a, const DiffForm& b);

// ---------------------------------------------------------------------------
// Chart changes

/// Coordinate change between two charts of a variety whose coordinates are
/// Laurent monomials in each other: source coordinate k equals
/// prod_l target_l^A[k][l].
struct MonomialMap {
  std::vector<std::vector<long>> A;
  int n() const { return static_cast<int>(A.size()); }
  static MonomialMap identity(int n);
  MonomialMap then(const MonomialMap& next) const;  // apply this, then next
  MonomialMap inverse() const;                      // A must be unimodular
  bool operator==(const MonomialMap& o) const { return A == o.A; }
};

/// Substitute source coordinates by their Laurent images.
Poly pullback(const Poly& p, const MonomialMap& m);

/// Rewrite w in target coordinates as a form over target_base. Throws
/// MathError when the result has a pole outside Var(target_base), i.e.
/// when w is not regular on the target piece.
DiffForm translate_form(const DiffForm& w, const MonomialMap& m, const Poly& target_base);

/// Transition from chart j (coordinates x_i/x_j, i != j increasing) to
/// chart jp of projective n-space.
MonomialMap projective_transition(int n, int j, int jp);

/// d log of the Laurent monomial c^m, as a form over base.
DiffForm dlog_monomial(int n, const std::vector<long>& m, const Poly& base);

// ---------------------------------------------------------------------------
// Finite-dimensional spaces and complexes of forms

/// Forms of one degree over a common base, with exact coordinates: every
/// form is written over base^P for a common P and read as a coefficient
/// vector indexed by (dx_K, monomial).
class FormSpace {
 public:
  FormSpace() = default;
  FormSpace(int n, Poly base, int degree);

  int degree() const { return degree_; }
  const Poly& base() const { return base_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<DiffForm>& basis() const { return basis_; }

  /// Adds w if it is not in the span; returns whether it was added.
  bool add(const DiffForm& w);
  bool contains(const DiffForm& w) const { return coordinates(w).has_value(); }
  /// Coordinates with respect to basis().
  std::optional<std::vector<Rational>> coordinates(const DiffForm& w) const;
  DiffForm combination(const std::vector<Rational>& c) const;

 private:
  std::optional<SparseVec> vectorize(const DiffForm& w, bool grow) const;
  void rebuild(int power);
  void check(const DiffForm& w) const;

  int n_ = 0;
  int degree_ = 0;
  Poly base_;
  int power_ = 0;
  std::vector<DiffForm> basis_;
  mutable std::map<std::pair<FormMask, Monomial>, std::size_t> keys_;
  EchelonBasis ech_;
};

struct CanonicalCoordinates {
  int power = 0;  // common denominator exponent
  std::vector<std::pair<FormMask, Monomial>> keys;
  RatMatrix matrix;  // one column per input form
  std::size_t rank = 0;
};

/// Coefficient vectors of forms sharing base and degree after clearing
/// denominators.
CanonicalCoordinates canonical_coordinates(const std::vector<DiffForm>& forms);

/// Finite subcomplex of the de Rham complex on the complement of
/// Var(base): one FormSpace per degree, closed under d.
class FiniteSubcomplex {
 public:
  FiniteSubcomplex() = default;
  FiniteSubcomplex(int n, const Poly& base);

  int n() const { return n_; }
  const Poly& base() const { return base_; }
  const FormSpace& term(int q) const { return terms_.at(q); }
  /// Adds w and d(w). Returns whether anything new was added.
  bool add(const DiffForm& w);
  /// Matrix of d: C^q -> C^{q+1} (rows index C^{q+1}).
  RatMatrix differential(int q) const;
  std::vector<std::size_t> cohomology_dims() const;
  std::vector<std::size_t> dims() const;

 private:
  int n_ = 0;
  Poly base_;
  std::vector<FormSpace> terms_;
};

/// Exhaustion level k of the Weyl algebra: x^a d^b with |a|+|b| <= k, in
/// a fixed order (by level, then lexicographically).
std::vector<WeylElement> exhaustion_level(int n, int k);

struct EnlargeStats {
  int max_level_used = -1;
  std::size_t added = 0;
};

/// Enlarge c so that its cohomology has the given dimensions, adding
/// (q-1)-forms from the exhaustion D^k F^-a dx_K from the top degree
/// down. c must already contain cocycles spanning the true cohomology.
/// F^-a must generate R[1/F] over the Weyl algebra.
EnlargeStats enlarge_subcomplex(FiniteSubcomplex& c, const std::vector<std::size_t>& target, long a,
                                int max_level = 8);

}  // namespace drc
