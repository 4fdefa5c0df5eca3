#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace drc {

using Rational = mpq_class;
using Integer = mpz_class;

/// Sparse vector: (index, value) pairs, strictly increasing index, no zeros.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(const std::string& stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

SparseVec sparse_from_dense(const std::vector<Rational>& v);
std::vector<Rational> dense_from_sparse(const SparseVec& v, std::size_t dim);
/// a + c * b
SparseVec sparse_axpy(const SparseVec& a, const Rational& c, const SparseVec& b);
SparseVec sparse_scale(const SparseVec& a, const Rational& c);
Rational sparse_dot(const SparseVec& a, const SparseVec& b);

/// Sparse rational matrix. Entries are kept nonzero and in lowest terms.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  void add(std::size_t r, std::size_t c, const Rational& v);
  const std::map<std::size_t, Rational>& row(std::size_t r) const { return data_[r]; }
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  RatMatrix transpose() const;
  RatMatrix operator*(const RatMatrix& o) const;
  SparseVec apply(const SparseVec& v) const;  // M v
  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  static RatMatrix from_columns(std::size_t rows, const std::vector<SparseVec>& cols);
  static RatMatrix from_rows(std::size_t cols, const std::vector<SparseVec>& rows);
  SparseVec column(std::size_t c) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::map<std::size_t, Rational>> data_;
};

/// Incrementally built echelon basis of a subspace of Q^dim.
///
/// Rows are kept as primitive integer vectors and reduced fraction-free.
/// Every row remembers how it is expressed in the inserted vectors, so
/// membership tests also return coordinates.
class EchelonBasis {
 public:
  EchelonBasis() = default;

  /// Inserts v (tagged with the running insertion number). Returns true if
  /// v was independent of the previous vectors; dependent vectors are not
  /// counted in rank() but still receive an insertion number.
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const;
  /// Coordinates of v in terms of the *independent* inserted vectors,
  /// indexed by insertion number. nullopt if v is not in the span.
  std::optional<SparseVec> coordinates(const SparseVec& v) const;
  /// Remainder of v after reduction by the basis (zero iff v in span).
  SparseVec remainder(const SparseVec& v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }
  /// Insertion numbers of the vectors that enlarged the span.
  const std::vector<std::size_t>& independent() const { return independent_; }

 private:
  struct Row {
    std::vector<std::pair<std::size_t, Integer>> v;  // primitive, pivot first
    SparseVec expr;  // row = sum expr[j] * inserted_j
  };
  struct Work {
    std::map<std::size_t, Integer> w;
    Integer mu;      // w = mu * v - sum T_j ins_j
    SparseVec T;
  };
  void reduce(Work& work) const;

  std::vector<Row> rows_;
  std::map<std::size_t, std::size_t> pivot_row_;  // pivot column -> row
  std::vector<std::size_t> independent_;
  std::size_t inserted_ = 0;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<SparseVec> kernel;  // basis of {v : M v = 0}
};

/// Rank and right kernel of m by fraction-free elimination followed by
/// back substitution. Pivots are taken as the first nonzero column.
RankKernel rank_kernel(const RatMatrix& m);
std::size_t matrix_rank(const RatMatrix& m);

/// Subquotient span(cycles) / span(boundaries) with a fixed choice of
/// representatives.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(std::size_t ambient_dim, const std::vector<SparseVec>& cycles,
              const std::vector<SparseVec>& boundaries);

  std::size_t dim() const { return reps_.size(); }
  std::size_t ambient_dim() const { return ambient_; }
  const std::vector<SparseVec>& representatives() const { return reps_; }
  /// Coordinates of a cycle v with respect to the representatives.
  /// Throws MathError if v is not a cycle.
  std::vector<Rational> reduce(const SparseVec& v) const;
  bool is_boundary(const SparseVec& v) const;
  bool is_cycle(const SparseVec& v) const;

 private:
  std::size_t ambient_ = 0;
  std::size_t nbound_ = 0;
  std::vector<SparseVec> reps_;
  EchelonBasis all_;       // boundaries, then representatives
  EchelonBasis boundary_;  // boundaries only
  std::vector<std::size_t> rep_tag_;  // insertion number of each rep in all_
};

/// Cohomology of a finite complex of Q-vector spaces
///   C^lo -> C^{lo+1} -> ... -> C^hi,
/// with d[k] the matrix (dim C^{lo+k+1} x dim C^{lo+k}).
struct ComplexCohomology {
  int lo = 0;
  std::vector<std::size_t> dims;  // dims of the terms
  std::vector<Subquotient> h;     // one per term
  std::vector<std::size_t> ranks; // rank of d[k]
};

ComplexCohomology complex_cohomology(int lo, const std::vector<std::size_t>& dims,
                                     const std::vector<RatMatrix>& d);

}  // namespace drc
