#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drcoh/poly.hpp"
#include "drcoh/weyl.hpp"

/// D-module constructions around a polynomial f: the annihilator of f^s,
/// the Bernstein-Sato polynomial with a witness operator, cyclic
/// presentations of localizations R[F^-1] and the reduced Cech complex.
namespace drc {

struct Limits {
  long max_gb_steps = 2000000;
};

/// g * f^(s+e) with g a polynomial in x_1..x_n, s (n+1 variables).
struct FsValue {
  Poly g;
  long e = 0;
};

/// Apply an operator of D_n[s] (WeylElement with one central parameter s)
/// to g f^(s+e), using d_i f^(s+e) = (s+e) (d_i f) f^(s+e-1).
FsValue apply_to_fs(const WeylElement& op, const Poly& f, const FsValue& v);
/// Equality of g f^(s+e) and g' f^(s+e') as formal expressions.
bool fs_equal(const FsValue& a, const FsValue& b, const Poly& f);

/// Generators of Ann_{D_n[s]} f^s (each verified to annihilate f^s).
std::vector<WeylElement> ann_fs(const Poly& f, const Limits& lim = {});

struct BernsteinSato {
  Poly b;                           // monic, univariate in s
  std::optional<WeylElement> witness;  // P with b(s) f^s = P f^(s+1)
  std::vector<WeylElement> ann;     // generators of Ann f^s
  std::vector<Rational> roots;      // with multiplicity, increasing
  std::vector<long> integer_roots;  // distinct, increasing
};

/// Bernstein-Sato polynomial of a non-constant f. With a witness the
/// functional equation is verified symbolically before returning; tracking
/// the witness through the elimination can cost orders of magnitude more.
BernsteinSato bernstein_sato(const Poly& f, const Limits& lim = {}, bool with_witness = true);

/// Rational roots (with multiplicity, increasing) of a univariate
/// polynomial; throws if it does not split over Q.
std::vector<Rational> rational_roots(const Poly& b);

/// Specialize s to a value, giving an element of D_n.
WeylElement specialize_s(const WeylElement& op, const Rational& value);

/// D_n / J presenting R_n[F^-1] with cyclic generator F^-a.
struct CyclicPresentation {
  int n = 0;
  Poly F;
  long a = 0;
  std::vector<WeylElement> relations;
  BernsteinSato bs;  // empty when F is constant

  std::string generator_tag(const std::vector<std::string>& names) const;
};

CyclicPresentation localize_cyclic(const Poly& F, int n, const Limits& lim = {});

/// Operator Q with Q * G^-b = F^-a where F divides G and D G^-b = R[G^-1]
/// (b = presentation exponent of G).
WeylElement lift_generator(const CyclicPresentation& from, const CyclicPresentation& to);

/// Reduced Cech complex of f_0..f_r: degree d holds the localizations at
/// F_I, |I| = d + 1. Maps are right multiplications [P] -> [sign P Q].
struct CechDComplex {
  struct MapEntry {
    int src, tgt;  // indices into terms of degree d and d + 1
    int sign;
    WeylElement q;
  };
  int n = 0;
  std::vector<Poly> f;
  std::vector<std::vector<std::vector<int>>> subsets;  // per degree, sorted
  std::vector<std::vector<CyclicPresentation>> terms;  // per degree
  std::vector<std::vector<MapEntry>> maps;             // degree d -> d + 1
};

CechDComplex cech_dcomplex(const std::vector<Poly>& f, int n, const Limits& lim = {});
/// Check that consecutive maps compose to zero modulo the relations.
bool cech_d_squared_zero(const CechDComplex& c, const Limits& lim = {});

}  // namespace drc
