#include "drcoh/exactla.hpp"

#include <algorithm>

namespace drc {

SparseVec sparse_from_dense(const std::vector<Rational>& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out.emplace_back(i, v[i]);
  return out;
}

std::vector<Rational> dense_from_sparse(const SparseVec& v, std::size_t dim) {
  std::vector<Rational> out(dim);
  for (const auto& [i, x] : v) {
    if (i >= dim) throw MathError("sparse vector index out of range");
    out[i] = x;
  }
  return out;
}

SparseVec sparse_axpy(const SparseVec& a, const Rational& c, const SparseVec& b) {
  if (sgn(c) == 0) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      Rational s = a[i].second + c * b[j].second;
      if (sgn(s) != 0) out.emplace_back(a[i].first, s);
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec sparse_scale(const SparseVec& a, const Rational& c) {
  if (sgn(c) == 0) return {};
  SparseVec out = a;
  for (auto& e : out) e.second *= c;
  return out;
}

Rational sparse_dot(const SparseVec& a, const SparseVec& b) {
  Rational s = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (b[j].first < a[i].first) ++j;
    else s += a[i++].second * b[j++].second;
  }
  return s;
}

// ---------------------------------------------------------------------------

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows) {}

Rational RatMatrix::at(std::size_t r, std::size_t c) const {
  auto it = data_.at(r).find(c);
  return it == data_[r].end() ? Rational(0) : it->second;
}

void RatMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw MathError("matrix index out of range");
  if (sgn(v) == 0) data_[r].erase(c);
  else data_[r][c] = v;
}

void RatMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw MathError("matrix index out of range");
  if (sgn(v) == 0) return;
  auto [it, fresh] = data_[r].emplace(c, v);
  if (!fresh) {
    it->second += v;
    if (sgn(it->second) == 0) data_[r].erase(it);
  }
}

std::size_t RatMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace(r, v);
  return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw MathError("matrix product shape mismatch");
  RatMatrix p(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [k, v] : data_[r])
      for (const auto& [c, w] : o.data_[k]) p.add(r, c, v * w);
  return p;
}

SparseVec RatMatrix::apply(const SparseVec& v) const {
  SparseVec out;
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational s = 0;
    for (const auto& [c, x] : v) {
      auto it = data_[r].find(c);
      if (it != data_[r].end()) s += it->second * x;
    }
    if (sgn(s) != 0) out.emplace_back(r, s);
  }
  return out;
}

std::vector<Rational> RatMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw MathError("matrix-vector shape mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, x] : data_[r]) out[r] += x * v[c];
  return out;
}

RatMatrix RatMatrix::from_columns(std::size_t rows, const std::vector<SparseVec>& cols) {
  RatMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, v] : cols[c]) m.set(r, c, v);
  return m;
}

RatMatrix RatMatrix::from_rows(std::size_t cols, const std::vector<SparseVec>& rows) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) m.set(r, c, v);
  return m;
}

SparseVec RatMatrix::column(std::size_t c) const {
  SparseVec out;
  for (std::size_t r = 0; r < rows_; ++r) {
    auto it = data_[r].find(c);
    if (it != data_[r].end()) out.emplace_back(r, it->second);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Integer content_of(const std::map<std::size_t, Integer>& w) {
  Integer g = 0;
  for (const auto& [c, v] : w) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

}  // namespace

void EchelonBasis::reduce(Work& work) const {
  auto it = work.w.begin();
  while (it != work.w.end()) {
    auto pr = pivot_row_.find(it->first);
    if (pr == pivot_row_.end()) {
      ++it;
      continue;
    }
    const Row& row = rows_[pr->second];
    const Integer& p = row.v.front().second;
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), it->second.get_mpz_t());
    Integer fa = p / g;
    Integer fb = it->second / g;
    std::size_t col = it->first;
    if (fa != 1)
      for (auto& e : work.w) e.second *= fa;
    for (const auto& [c, v] : row.v) {
      auto [jt, fresh] = work.w.emplace(c, 0);
      jt->second -= fb * v;
      if (sgn(jt->second) == 0) work.w.erase(jt);
    }
    work.mu *= fa;
    if (fa != 1)
      for (auto& e : work.T) e.second *= fa;
    work.T = sparse_axpy(work.T, Rational(fb), row.expr);
    Integer ct = content_of(work.w);
    mpz_gcd(ct.get_mpz_t(), ct.get_mpz_t(), work.mu.get_mpz_t());
    if (ct > 1) {
      for (auto& e : work.w) e.second /= ct;
      work.mu /= ct;
      Rational inv = Rational(1) / Rational(ct);
      for (auto& e : work.T) e.second *= inv;
    }
    it = work.w.upper_bound(col);
  }
}

namespace {

void init_work(const SparseVec& v, std::map<std::size_t, Integer>& w, Integer& mu) {
  Integer l = 1;
  for (const auto& [c, x] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  for (const auto& [c, x] : v) w.emplace(c, Integer(x.get_num() * (l / x.get_den())));
  mu = l;
}

}  // namespace

bool EchelonBasis::insert(const SparseVec& v) {
  Work work;
  init_work(v, work.w, work.mu);
  reduce(work);
  std::size_t tag = inserted_++;
  if (work.w.empty()) return false;
  Integer g = content_of(work.w);
  Row row;
  row.v.assign(work.w.begin(), work.w.end());
  Rational scale = Rational(1) / Rational(g);
  if (sgn(row.v.front().second) < 0) scale = -scale;
  for (auto& e : row.v) e.second = e.second / (sgn(scale) < 0 ? Integer(-g) : g);
  row.expr = sparse_scale(work.T, -scale);
  row.expr = sparse_axpy(row.expr, Rational(work.mu) * scale, SparseVec{{tag, Rational(1)}});
  std::sort(row.expr.begin(), row.expr.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  pivot_row_.emplace(row.v.front().first, rows_.size());
  rows_.push_back(std::move(row));
  independent_.push_back(tag);
  return true;
}

bool EchelonBasis::contains(const SparseVec& v) const {
  Work work;
  init_work(v, work.w, work.mu);
  reduce(work);
  return work.w.empty();
}

std::optional<SparseVec> EchelonBasis::coordinates(const SparseVec& v) const {
  Work work;
  init_work(v, work.w, work.mu);
  reduce(work);
  if (!work.w.empty()) return std::nullopt;
  return sparse_scale(work.T, Rational(1) / Rational(work.mu));
}

SparseVec EchelonBasis::remainder(const SparseVec& v) const {
  Work work;
  init_work(v, work.w, work.mu);
  reduce(work);
  SparseVec out;
  for (const auto& [c, x] : work.w) out.emplace_back(c, Rational(x) / Rational(work.mu));
  return out;
}

// ---------------------------------------------------------------------------

RankKernel rank_kernel(const RatMatrix& m) {
  EchelonBasis eb;
  std::vector<SparseVec> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseVec row(m.row(r).begin(), m.row(r).end());
    if (eb.insert(row)) rows.push_back(std::move(row));
  }
  RankKernel out;
  out.rank = rows.size();
  // Reduced row echelon form over Q from the independent rows.
  std::map<std::size_t, SparseVec> rref;  // pivot -> row with pivot 1
  for (auto& row : rows) {
    SparseVec v = row;
    bool changed = true;
    while (changed && !v.empty()) {
      changed = false;
      for (const auto& [i, x] : v) {
        auto it = rref.find(i);
        if (it != rref.end()) {
          v = sparse_axpy(v, -x, it->second);
          changed = true;
          break;
        }
      }
    }
    if (v.empty()) throw MathError("rank_kernel: inconsistent echelon state");
    Rational lead = v.front().second;
    v = sparse_scale(v, Rational(1) / lead);
    std::size_t p = v.front().first;
    for (auto& [q, r] : rref) {
      for (const auto& [i, x] : r)
        if (i == p) {
          r = sparse_axpy(r, -x, v);
          break;
        }
    }
    rref.emplace(p, std::move(v));
  }
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto& [p, r] : rref) is_pivot[p] = true;
  // Column index -> list of (pivot, coefficient) for the kernel vectors.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> by_col(m.cols());
  for (const auto& [p, r] : rref)
    for (const auto& [i, x] : r)
      if (i != p) by_col[i].emplace_back(p, x);
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseVec k;
    k.emplace_back(f, Rational(1));
    for (const auto& [p, x] : by_col[f]) k.emplace_back(p, -x);
    std::sort(k.begin(), k.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.kernel.push_back(std::move(k));
  }
  return out;
}

std::size_t matrix_rank(const RatMatrix& m) {
  EchelonBasis eb;
  for (std::size_t r = 0; r < m.rows(); ++r)
    eb.insert(SparseVec(m.row(r).begin(), m.row(r).end()));
  return eb.rank();
}

// ---------------------------------------------------------------------------

Subquotient::Subquotient(std::size_t ambient_dim, const std::vector<SparseVec>& cycles,
                         const std::vector<SparseVec>& boundaries)
    : ambient_(ambient_dim) {
  EchelonBasis zb;
  for (const auto& z : cycles) zb.insert(z);
  for (const auto& b : boundaries) {
    if (!zb.contains(b)) throw MathError("subquotient: a boundary is not a cycle");
    boundary_.insert(b);
    all_.insert(b);
  }
  nbound_ = all_.inserted();
  for (const auto& z : cycles) {
    std::size_t tag = all_.inserted();
    if (all_.insert(z)) {
      reps_.push_back(z);
      rep_tag_.push_back(tag);
    }
  }
}

std::vector<Rational> Subquotient::reduce(const SparseVec& v) const {
  auto coords = all_.coordinates(v);
  if (!coords) throw MathError("subquotient: vector is not a cycle");
  std::vector<Rational> out(reps_.size());
  for (const auto& [tag, x] : *coords) {
    auto it = std::lower_bound(rep_tag_.begin(), rep_tag_.end(), tag);
    if (it != rep_tag_.end() && *it == tag) out[it - rep_tag_.begin()] = x;
  }
  return out;
}

bool Subquotient::is_boundary(const SparseVec& v) const { return boundary_.contains(v); }

bool Subquotient::is_cycle(const SparseVec& v) const { return all_.contains(v); }

// ---------------------------------------------------------------------------

ComplexCohomology complex_cohomology(int lo, const std::vector<std::size_t>& dims,
                                     const std::vector<RatMatrix>& d) {
  if (!dims.empty() && d.size() + 1 != dims.size())
    throw MathError("complex_cohomology: need one matrix between consecutive terms");
  ComplexCohomology out;
  out.lo = lo;
  out.dims = dims;
  std::vector<RankKernel> rk;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k].rows() != dims[k + 1] || d[k].cols() != dims[k])
      throw MathError("complex_cohomology: matrix shape mismatch");
    rk.push_back(rank_kernel(d[k]));
    out.ranks.push_back(rk.back().rank);
  }
  for (std::size_t k = 0; k < dims.size(); ++k) {
    std::vector<SparseVec> cycles;
    if (k < d.size()) {
      cycles = rk[k].kernel;
    } else {
      for (std::size_t i = 0; i < dims[k]; ++i) cycles.push_back({{i, Rational(1)}});
    }
    std::vector<SparseVec> bounds;
    if (k > 0) {
      RatMatrix t = d[k - 1].transpose();
      for (std::size_t c = 0; c < t.rows(); ++c)
        if (!t.row(c).empty()) bounds.emplace_back(t.row(c).begin(), t.row(c).end());
    }
    out.h.emplace_back(dims[k], cycles, bounds);
  }
  return out;
}

}  // namespace drc
