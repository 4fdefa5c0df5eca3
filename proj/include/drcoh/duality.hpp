#pragma once

#include <string>
#include <vector>

#include "drcoh/glue.hpp"

/// Alexander duality: cohomology of closed subvarieties of projective
/// space, compactly supported cohomology of affine varieties, and
/// complements Y \ Z inside a smooth projective hypersurface Y.
namespace drc {

/// A finite exact sequence recorded by dimensions: terms[i] has dimension
/// dims[i] and the map out of it has rank ranks[i] (the last map is zero).
struct ExactSequence {
  std::string name;
  std::vector<std::string> terms;
  std::vector<long> dims;
  std::vector<long> ranks;

  void push(std::string term, long dim, long rank_out);
  long alternating_sum() const;
  /// dims[i] = ranks[i-1] + ranks[i] everywhere, ranks within bounds.
  bool exact() const;
};

struct DualityLedger {
  std::vector<std::size_t> betti_U;
  std::vector<bool> chern_zero;  // c_k = 0 in H^2k(U)
  std::vector<ExactSequence> sequences;
  bool exact() const;
};

/// Cohomology of an open subset of P^n together with the restrictions of
/// the Chern classes of P^n.
struct OpenWithChern {
  std::vector<std::size_t> betti;  // degrees 0..2n
  std::vector<bool> chern_zero;    // k = 0..n
};

/// Enlarges the cover so that it contains c_0..c_n, then evaluates the
/// subcover of `allowed` opens.
OpenWithChern open_with_chern(Cover& cover, uint32_t allowed = ~uint32_t{0}, const CoverOptions& opt = {});

struct ClosedCohomology {
  std::vector<std::size_t> betti;  // degrees 0..2n
  DualityLedger ledger;
};

/// Y = Var(f_0..f_r) in P^n from its complement:
///   dim H^{2n-2k}(Y)   = dim H^{2k-1}(U) + [c_k = 0 in U]
///   dim H^{2n-2k-1}(Y) = dim H^{2k}(U)   - [c_k != 0 in U]
ClosedCohomology closed_variety_cohomology(const std::vector<Poly>& f, int n, const std::vector<std::string>& names,
                                           const CoverOptions& opt = {});
ClosedCohomology closed_from_open(const OpenWithChern& u, int n);

struct CompactCohomology {
  std::vector<std::size_t> dims;  // H^i_c(Y), i = 0..2n
  std::vector<std::size_t> betti_U;
  DualityLedger ledger;
};

/// Compactly supported cohomology of Y = Var(f_0..f_r) in affine n-space.
CompactCohomology compact_support_affine(const std::vector<Poly>& f, int n, const CoverOptions& opt = {});
CompactCohomology compact_from_open(const std::vector<std::size_t>& betti_U, int n);

/// The whole dimension table for Y \ Z with Y = Var(f) smooth and
/// Z = Y n Var(g); every row is indexed by k = 0..2n.
struct LocallyClosedCohomology {
  std::vector<std::size_t> ambient;      // H^k(P^n)
  std::vector<std::size_t> betti_V;      // V = P^n \ Z
  std::vector<std::size_t> betti_U;      // U = P^n \ Y
  std::vector<std::size_t> local_Z;      // H^k_Z(P^n)
  std::vector<std::size_t> betti_Z;
  std::vector<std::size_t> local_Y;      // H^k_Y(P^n)
  std::vector<std::size_t> betti_Y;
  std::vector<std::size_t> ker_V_to_U;   // ker H^k(V) -> H^k(U)
  std::vector<std::size_t> im_P_to_V;    // im H^k(P^n) -> H^k(V)
  std::vector<std::size_t> betti;        // H^k(Y \ Z)
  DualityLedger ledger;
};

/// Requires the caller to certify that Var(f) is smooth; the engine does
/// not test smoothness.
LocallyClosedCohomology locally_closed_cohomology(const Poly& f, const Poly& g, int n,
                                                  const std::vector<std::string>& names, bool smooth_certified,
                                                  const CoverOptions& opt = {});

/// A single chart with the identity coordinates, for open subsets of
/// affine space.
Atlas affine_atlas(int n, const std::vector<std::string>& names);

}  // namespace drc
