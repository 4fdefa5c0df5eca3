#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drcoh/forms.hpp"
#include "drcoh/integrate.hpp"

/// Gluing affine pieces: a cover of an open set U of a variety with a
/// monomial atlas (projective space, smooth toric surfaces), compatible
/// finite subcomplexes on all intersections, the Cech-de Rham total
/// complex, Chern cocycles and cup products.
namespace drc {

/// Affine chart of a variety containing the torus (C*)^n. Its coordinates
/// are torus characters, one row per coordinate.
struct Chart {
  std::string name;
  std::vector<std::vector<long>> characters;
  std::vector<std::string> coordinate_names;
};

struct Atlas {
  int n = 0;
  std::vector<Chart> charts;
  bool projective = false;  // standard charts of P^n

  /// Coordinates of chart `from` as Laurent monomials in those of `to`.
  MonomialMap transition(int from, int to) const;
  /// Exponent vector of a torus character in the coordinates of a chart.
  std::vector<long> in_chart(const std::vector<long>& character, int chart) const;
  /// Coordinates of chart min(J) that become invertible on the
  /// intersection of the charts in J.
  std::vector<int> inverted_coordinates(uint32_t chart_mask) const;
};

/// Standard cover of P^n by the charts x_j != 0; torus coordinates are
/// x_i/x_0, chart j has coordinates x_i/x_j (i != j, increasing).
Atlas projective_atlas(int n, const std::vector<std::string>& names);

/// Open sets of the cover of U = X minus Var(f_0, .., f_r): chart j
/// intersected with D(f_i). Without equations U = X and the opens are
/// the charts (poly = -1).
struct CoverOpen {
  int chart = 0;
  int poly = -1;
};

/// U intersected with the charts in `charts` and the sets D(f_i), i in
/// `polys`, written in the coordinates of the first chart.
struct Piece {
  uint32_t charts = 0;
  uint32_t polys = 0;
  int chart = 0;
  Poly divisor;
  long a = 0;  // F^-a generates R[1/F]
  std::vector<std::size_t> target;  // de Rham dims 0..n
  long k1 = 0;
  std::vector<std::vector<std::size_t>> stability;
  std::vector<DiffForm> generators;
  FiniteSubcomplex complex;
  std::size_t enlarged = 0;  // forms added by enlargement
};

/// Output of the affine pipeline for one divisor, reusable across runs.
struct PieceSeed {
  long a = 0;
  long k1 = 0;
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::size_t>> stability;
  std::vector<DiffForm> forms;
};

PieceSeed affine_seed(const Poly& divisor, int n, const Limits& lim = {});

class SeedCache {
 public:
  virtual ~SeedCache() = default;
  virtual std::optional<PieceSeed> load(const Poly& divisor, int n) = 0;
  virtual void store(const Poly& divisor, int n, const PieceSeed& seed) = 0;
};

struct CoverOptions {
  Limits lim;
  int max_level = 8;
  bool parallel = false;
  SeedCache* cache = nullptr;
};

class Cover {
 public:
  Atlas atlas;
  std::vector<std::vector<Poly>> equations;  // equations[i][chart]
  std::vector<CoverOpen> opens;
  std::vector<Piece> pieces;  // ordered so that faces come first

  int n() const { return atlas.n; }
  /// Piece carrying the Cech index set S (bit k = opens[k]).
  std::size_t piece_of(uint32_t S) const;
  std::size_t piece_index(uint32_t charts, uint32_t polys) const;
  /// Same form on a smaller piece, in that piece's coordinates.
  DiffForm restrict(const DiffForm& w, std::size_t from, std::size_t to) const;
  std::vector<std::string> names(std::size_t piece) const;
  std::string describe(uint32_t S) const;

 private:
  friend Cover build_cover(const Atlas&, const std::vector<std::vector<Poly>>&, const CoverOptions&);
  std::map<std::pair<uint32_t, uint32_t>, std::size_t> index_;
};

/// Runs the affine pipeline on every piece and enlarges the subcomplexes
/// along increasing intersections so that each one contains the
/// restrictions of its faces.
Cover build_cover(const Atlas& atlas, const std::vector<std::vector<Poly>>& equations,
                  const CoverOptions& opt = {});

/// Add further forms (keyed by piece) and restore compatibility.
void saturate(Cover& cover, const std::map<std::size_t, std::vector<DiffForm>>& extras,
              const CoverOptions& opt = {});

/// Cech cochain of forms of total degree `degree`: one form per index set
/// S of Cech degree |S|-1, of form degree degree - |S| + 1.
struct Cochain {
  int degree = 0;
  std::map<uint32_t, DiffForm> comp;
};

/// Total complex of the subcomplexes, D = delta + (-1)^p d, where
/// (delta w)_S = sum_m (-1)^m w_{S - s_m} over S = {s_0 < s_1 < ..}.
/// Index sets can be restricted to subsets of `allowed` opens (a
/// subcover of the same open set).
class TotalComplex {
 public:
  TotalComplex(const Cover& cover, uint32_t allowed = ~uint32_t{0});

  const Cover& cover() const { return *cover_; }
  int top() const { return static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int t) const { return t < 0 || t > top() ? 0 : dims_[t]; }
  const std::vector<RatMatrix>& differentials() const { return d_; }

  /// Coordinates of a cochain; throws if a component leaves the subcomplex.
  SparseVec vectorize(const Cochain& c) const;
  Cochain cochain(int t, const SparseVec& v) const;
  /// Form-level differential.
  Cochain apply_d(const Cochain& c) const;

  const ComplexCohomology& cohomology() const { return h_; }
  std::vector<std::size_t> betti() const;
  std::vector<Cochain> generators(int t) const;
  bool is_cocycle(const Cochain& c) const;
  bool is_coboundary(const Cochain& c) const;
  /// Coordinates of the class of cocycle c with respect to `basis` (cocycles
  /// whose classes are independent).
  std::vector<Rational> class_coordinates(const Cochain& c, const std::vector<Cochain>& basis) const;

 private:
  struct Block {
    uint32_t S;
    std::size_t piece;
    int q;
    std::size_t offset;
  };
  const Block* find_block(int t, uint32_t S) const;

  const Cover* cover_;
  uint32_t allowed_;
  std::vector<std::vector<Block>> blocks_;
  std::vector<std::size_t> dims_;
  std::vector<RatMatrix> d_;
  ComplexCohomology h_;
};

/// Cup product (w u v)_S = sum (-1)^{q p'} w_front ^ v_back; the result
/// lives on the cover but not necessarily in the subcomplexes.
Cochain cup(const Cover& cover, const Cochain& w, const Cochain& v);
Cochain operator+(const Cochain& a, const Cochain& b);
Cochain operator*(const Cochain& a, const Rational& c);

/// Components of a cochain grouped by piece, ready for saturate().
std::map<std::size_t, std::vector<DiffForm>> cochain_forms(const Cover& cover, const Cochain& c);

/// Characters whose d logs are wedged on a set of sorted charts, or
/// nullopt for a zero component.
using CharacterRule = std::function<std::optional<std::vector<std::vector<long>>>(const std::vector<int>&)>;

/// Cochain of Cech degree p whose component on S is the wedge of
/// d log chi^m over rule(charts of S), pulled back along S -> charts
/// (zero where a chart repeats).
Cochain character_cochain(const Cover& cover, int cech_degree, const CharacterRule& rule);

/// The k-th Chern cocycle of P^n: on charts j_0 < .. < j_k the form
/// prod_{m>0} d(x_{j_m}/x_{j_0}) / (x_{j_m}/x_{j_0}). Requires a
/// projective atlas.
Cochain chern_cocycle(const Cover& cover, int k);

/// Row q of the first page of the Mayer-Vietoris spectral sequence: the
/// Cech complex of the groups H^q(U_S), with the maps induced by
/// restriction.
struct CechRow {
  std::vector<std::size_t> dims;   // per Cech degree
  std::vector<std::size_t> ranks;  // of the maps between them
};

CechRow cech_row(const Cover& cover, int q, uint32_t allowed = ~uint32_t{0});

struct OpenCohomology {
  std::vector<std::size_t> betti;  // degrees 0..2n
  std::vector<std::size_t> total_dims;
  std::vector<std::size_t> ranks;
  std::vector<std::vector<Cochain>> generators;  // per degree
};

OpenCohomology open_cohomology(const TotalComplex& tc);

/// Cover of P^n minus Var(f_0..f_r) for homogeneous f_i.
Cover projective_cover(int n, const std::vector<Poly>& homogeneous, const std::vector<std::string>& names,
                       const CoverOptions& opt = {});

struct CupTable {
  std::vector<std::pair<int, std::size_t>> basis;  // (degree, index)
  std::vector<Cochain> generators;                 // one per basis entry
  /// products[i][j] = coordinates of g_i u g_j in the basis of its degree
  std::vector<std::vector<std::vector<Rational>>> products;
  bool unit_law = true;
  bool graded_commutative = true;
};

/// Multiplication table on the generators of the total complex; the cover
/// is enlarged to contain all products.
CupTable cup_products(Cover& cover, const CoverOptions& opt = {});

}  // namespace drc
