#pragma once

#include <vector>

#include "drcoh/dmod.hpp"
#include "drcoh/forms.hpp"

/// Integration of R_n[F^-1] along d_1..d_n: a V-strict free resolution,
/// the b-function for integration, the truncated complex Omega (x) A and
/// the translation of its classes into algebraic de Rham forms.
namespace drc {

/// ... -> A^{-1} -> A^0 -> M with A^{-k} = D^{r_k}[m_k]. maps[k] is the
/// matrix of A^{-k-1} -> A^{-k} acting by right multiplication on row
/// vectors: e_i -> sum_j maps[k][i][j] e_j.
struct ShiftedFreeComplex {
  int n = 0;
  std::vector<std::vector<long>> shifts;
  std::vector<std::vector<std::vector<WeylElement>>> maps;
  std::size_t rank(std::size_t k) const { return shifts[k].size(); }
  std::size_t length() const { return shifts.size() - 1; }
};

/// Resolution of the cyclic module D/J via Schreyer syzygies in the
/// homogenized Weyl algebra with the (1,..,1,-1,..,-1) weight, computed
/// up to A^{-(n+1)} (or until it stops).
ShiftedFreeComplex v_strict_complex(const CyclicPresentation& m, const Limits& lim = {});
/// Entry from shift p to shift q has V-degree <= p - q.
bool respects_filtration(const ShiftedFreeComplex& a);
/// Consecutive matrices multiply to zero.
bool maps_compose_to_zero(const ShiftedFreeComplex& a);

struct IntegrationBData {
  Poly b;  // monic minimal polynomial of -E-n on gr^0 of H^0
  std::vector<long> integer_roots;
  bool has_integer_root = false;
  long k1 = 0;  // largest integer root
};

/// b-function for integration of H^0 = D/J (the only cohomology of a
/// resolution), from the initial forms of the degree-0 relations.
IntegrationBData integration_bfunction(const ShiftedFreeComplex& a, const Limits& lim = {});

struct OmegaClass {
  int degree = 0;   // de Rham degree (internal degree + n)
  long level = 0;   // filtration level where the class first appears
  std::vector<Poly> rep;  // one polynomial per free generator of A^{degree-n}
};

struct IntegrationResult {
  long k1 = 0;
  std::vector<std::size_t> dims;  // de Rham degrees 0..n
  std::vector<OmegaClass> classes;
  /// dims at truncation levels k1, k1+1, k1+2
  std::vector<std::vector<std::size_t>> stability;
  bool stable = true;
  bool levels_are_roots = true;  // b(level) = 0 for every class
};

IntegrationResult integrate_cohomology(const ShiftedFreeComplex& a, const IntegrationBData& bd,
                                       int extra_levels = 2);

/// Dimensions of H^i(F^k(Omega (x) A)) in de Rham numbering.
std::vector<std::size_t> truncated_dims(const ShiftedFreeComplex& a, long k);

/// Closed forms on the complement of Var(F) representing the classes.
std::vector<DiffForm> to_de_rham_forms(const ShiftedFreeComplex& a, const std::vector<OmegaClass>& classes,
                                       const CyclicPresentation& m);

/// The whole affine pipeline for U = C^n minus Var(F) (F may be constant).
struct AffineCohomology {
  CyclicPresentation presentation;
  ShiftedFreeComplex complex;
  IntegrationBData bdata;
  IntegrationResult result;
  std::vector<DiffForm> forms;  // aligned with result.classes
};

AffineCohomology affine_cohomology(const Poly& F, int n, const Limits& lim = {});

}  // namespace drc
