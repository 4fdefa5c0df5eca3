#include "drcoh/glue.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <sstream>

namespace drc {

namespace {

int lowest(uint32_t m) { return std::countr_zero(m); }
int highest(uint32_t m) { return 31 - std::countl_zero(m); }
int count(uint32_t m) { return std::popcount(m); }

std::vector<int> bits(uint32_t m) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (m >> i & 1u) out.push_back(i);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

MonomialMap Atlas::transition(int from, int to) const {
  MonomialMap src{charts.at(from).characters}, dst{charts.at(to).characters};
  return src.then(dst.inverse());
}

std::vector<long> Atlas::in_chart(const std::vector<long>& character, int chart) const {
  MonomialMap inv = MonomialMap{charts.at(chart).characters}.inverse();
  std::vector<long> out(n, 0);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) out[l] += character[k] * inv.A[k][l];
  return out;
}

std::vector<int> Atlas::inverted_coordinates(uint32_t chart_mask) const {
  const int j = lowest(chart_mask);
  std::vector<bool> inv(n, false);
  for (int i : bits(chart_mask)) {
    if (i == j) continue;
    MonomialMap t = transition(i, j);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        if (t.A[k][l] < 0) inv[l] = true;
  }
  std::vector<int> out;
  for (int l = 0; l < n; ++l)
    if (inv[l]) out.push_back(l);
  return out;
}

Atlas projective_atlas(int n, const std::vector<std::string>& names) {
  if (static_cast<int>(names.size()) != n + 1) throw MathError("projective_atlas: need n+1 names");
  auto e = [n](int i) {
    std::vector<long> v(n, 0);
    if (i > 0) v[i - 1] = 1;
    return v;
  };
  Atlas a;
  a.n = n;
  for (int j = 0; j <= n; ++j) {
    Chart c;
    c.name = names[j];
    for (int i = 0; i <= n; ++i) {
      if (i == j) continue;
      std::vector<long> row = e(i), ej = e(j);
      for (int k = 0; k < n; ++k) row[k] -= ej[k];
      c.characters.push_back(row);
    }
    c.coordinate_names = chart_names(names, j);
    a.charts.push_back(std::move(c));
  }
  a.projective = true;
  return a;
}

// ---------------------------------------------------------------------------

std::size_t Cover::piece_index(uint32_t charts, uint32_t polys) const {
  auto it = index_.find({charts, polys});
  if (it == index_.end()) throw MathError("cover: no such piece");
  return it->second;
}

std::size_t Cover::piece_of(uint32_t S) const {
  uint32_t J = 0, I = 0;
  for (int s : bits(S)) {
    J |= 1u << opens.at(s).chart;
    if (opens[s].poly >= 0) I |= 1u << opens[s].poly;
  }
  return piece_index(J, I);
}

DiffForm Cover::restrict(const DiffForm& w, std::size_t from, std::size_t to) const {
  const Piece& a = pieces.at(from);
  const Piece& b = pieces.at(to);
  if ((a.charts & b.charts) != a.charts || (a.polys & b.polys) != a.polys)
    throw MathError("restrict: target is not contained in the source piece");
  if (from == to) return w;
  return translate_form(w, atlas.transition(a.chart, b.chart), b.divisor);
}

std::vector<std::string> Cover::names(std::size_t piece) const {
  return atlas.charts.at(pieces.at(piece).chart).coordinate_names;
}

std::string Cover::describe(uint32_t S) const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int s : bits(S)) {
    if (!first) os << ",";
    first = false;
    os << atlas.charts[opens[s].chart].name;
    if (opens[s].poly >= 0) os << ":f" << opens[s].poly;
  }
  os << "}";
  return os.str();
}

namespace {

}  // namespace

PieceSeed affine_seed(const Poly& T, int n, const Limits& lim) {
  AffineCohomology ac = affine_cohomology(T, n, lim);
  PieceSeed d;
  d.a = ac.presentation.a;
  d.k1 = ac.result.k1;
  d.dims = ac.result.dims;
  d.stability = ac.result.stability;
  d.forms = ac.forms;
  if (!ac.result.stable) throw MathError("affine pipeline: truncation is not stable");
  return d;
}

namespace {

bool add_all(FiniteSubcomplex& c, const std::vector<DiffForm>& forms) {
  bool changed = false;
  for (const auto& w : forms) changed = c.add(w) || changed;
  return changed;
}

}  // namespace

Cover build_cover(const Atlas& atlas, const std::vector<std::vector<Poly>>& equations, const CoverOptions& opt) {
  Cover c;
  c.atlas = atlas;
  c.equations = equations;
  const int n = atlas.n;
  const int nch = static_cast<int>(atlas.charts.size());
  const int npol = static_cast<int>(equations.size());
  for (const auto& eq : equations)
    if (static_cast<int>(eq.size()) != nch) throw MathError("build_cover: one local equation per chart");
  if (npol == 0) {
    for (int j = 0; j < nch; ++j) c.opens.push_back({j, -1});
  } else {
    for (int j = 0; j < nch; ++j)
      for (int i = 0; i < npol; ++i) c.opens.push_back({j, i});
  }
  if (c.opens.size() > 16) throw MathError("build_cover: too many open sets");

  std::vector<std::pair<uint32_t, uint32_t>> keys;
  for (uint32_t J = 1; J < (1u << nch); ++J) {
    if (npol == 0) keys.emplace_back(J, 0);
    else
      for (uint32_t I = 1; I < (1u << npol); ++I) keys.emplace_back(J, I);
  }
  std::stable_sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) {
    return count(x.first) + count(x.second) < count(y.first) + count(y.second);
  });
  for (const auto& [J, I] : keys) {
    Piece p;
    p.charts = J;
    p.polys = I;
    p.chart = lowest(J);
    std::vector<Poly> factors;
    for (int i : bits(I)) factors.push_back(equations[i][p.chart]);
    for (int l : atlas.inverted_coordinates(J)) factors.push_back(Poly::variable(n, l));
    auto norm = normalized_factors(factors);
    p.divisor = norm.empty() ? Poly(n, Rational(1)) : product(n, norm);
    c.index_[{J, I}] = c.pieces.size();
    c.pieces.push_back(std::move(p));
  }

  // affine pipeline once per distinct divisor
  std::vector<Poly> distinct;
  std::vector<std::size_t> which(c.pieces.size());
  for (std::size_t k = 0; k < c.pieces.size(); ++k) {
    auto it = std::find(distinct.begin(), distinct.end(), c.pieces[k].divisor);
    which[k] = it - distinct.begin();
    if (it == distinct.end()) distinct.push_back(c.pieces[k].divisor);
  }
  std::vector<PieceSeed> data(distinct.size());
  std::vector<std::size_t> missing;
  for (std::size_t k = 0; k < distinct.size(); ++k) {
    std::optional<PieceSeed> hit;
    if (opt.cache) hit = opt.cache->load(distinct[k], n);
    if (hit) data[k] = std::move(*hit);
    else missing.push_back(k);
  }
  if (opt.parallel) {
    std::vector<std::future<PieceSeed>> fut;
    for (std::size_t k : missing)
      fut.push_back(std::async(std::launch::async, affine_seed, distinct[k], n, opt.lim));
    for (std::size_t i = 0; i < fut.size(); ++i) data[missing[i]] = fut[i].get();
  } else {
    for (std::size_t k : missing) data[k] = affine_seed(distinct[k], n, opt.lim);
  }
  if (opt.cache)
    for (std::size_t k : missing) opt.cache->store(distinct[k], n, data[k]);
  for (std::size_t k = 0; k < c.pieces.size(); ++k) {
    Piece& p = c.pieces[k];
    const PieceSeed& d = data[which[k]];
    p.a = d.a;
    p.k1 = d.k1;
    p.target = d.dims;
    p.stability = d.stability;
    p.generators = d.forms;
    p.complex = FiniteSubcomplex(n, p.divisor);
    add_all(p.complex, p.generators);
    if (p.complex.cohomology_dims() != p.target)
      throw MathError("build_cover: generators of piece " + std::to_string(k) + " are not independent");
  }
  saturate(c, {}, opt);
  return c;
}

void saturate(Cover& cover, const std::map<std::size_t, std::vector<DiffForm>>& extras, const CoverOptions& opt) {
  for (std::size_t k = 0; k < cover.pieces.size(); ++k) {
    Piece& p = cover.pieces[k];
    bool changed = false;
    auto it = extras.find(k);
    if (it != extras.end()) changed = add_all(p.complex, it->second) || changed;
    std::vector<std::size_t> faces;
    if (count(p.charts) >= 2)
      for (int j : bits(p.charts)) faces.push_back(cover.piece_index(p.charts & ~(1u << j), p.polys));
    if (count(p.polys) >= 2)
      for (int i : bits(p.polys)) faces.push_back(cover.piece_index(p.charts, p.polys & ~(1u << i)));
    for (std::size_t f : faces) {
      const FiniteSubcomplex& fc = cover.pieces[f].complex;
      for (int q = 0; q <= cover.n(); ++q)
        for (const auto& w : fc.term(q).basis()) changed = p.complex.add(cover.restrict(w, f, k)) || changed;
    }
    if (!changed) continue;
    try {
      auto st = enlarge_subcomplex(p.complex, p.target, p.a, opt.max_level);
      p.enlarged += st.added;
    } catch (const ResourceLimit& e) {
      throw ResourceLimit("enlarge", "piece " + std::to_string(k) + ": " + e.what());
    }
  }
}

// ---------------------------------------------------------------------------

TotalComplex::TotalComplex(const Cover& cover, uint32_t allowed) : cover_(&cover) {
  const int m = static_cast<int>(cover.opens.size());
  const int n = cover.n();
  allowed_ = allowed & ((1u << m) - 1);
  const int top = count(allowed_) - 1 + n;
  blocks_.assign(top + 1, {});
  dims_.assign(top + 1, 0);
  for (uint32_t S = 1; S < (1u << m); ++S) {
    if (S & ~allowed_) continue;
    const int p = count(S) - 1;
    const std::size_t piece = cover.piece_of(S);
    for (int q = 0; q <= n; ++q) {
      const std::size_t d = cover.pieces[piece].complex.term(q).dim();
      if (d == 0) continue;
      blocks_[p + q].push_back({S, piece, q, dims_[p + q]});
      dims_[p + q] += d;
    }
  }

  std::map<std::pair<std::size_t, int>, RatMatrix> dr;
  std::map<std::tuple<std::size_t, std::size_t, int>, RatMatrix> res;
  auto restriction = [&](std::size_t from, std::size_t to, int q) -> const RatMatrix& {
    auto key = std::make_tuple(from, to, q);
    auto it = res.find(key);
    if (it != res.end()) return it->second;
    const FormSpace& src = cover.pieces[from].complex.term(q);
    const FormSpace& dst = cover.pieces[to].complex.term(q);
    RatMatrix r(dst.dim(), src.dim());
    for (std::size_t i = 0; i < src.dim(); ++i) {
      auto c = dst.coordinates(cover.restrict(src.basis()[i], from, to));
      if (!c) throw MathError("total complex: restriction leaves the subcomplex");
      for (std::size_t j = 0; j < c->size(); ++j)
        if (sgn((*c)[j]) != 0) r.set(j, i, (*c)[j]);
    }
    return res.emplace(key, std::move(r)).first->second;
  };

  for (int t = 0; t < top; ++t) {
    RatMatrix D(dims_[t + 1], dims_[t]);
    for (const Block& b : blocks_[t]) {
      const int p = count(b.S) - 1;
      if (b.q < n) {
        auto key = std::make_pair(b.piece, b.q);
        auto it = dr.find(key);
        if (it == dr.end()) it = dr.emplace(key, cover.pieces[b.piece].complex.differential(b.q)).first;
        const Block* tb = find_block(t + 1, b.S);
        const RatMatrix& M = it->second;
        if (tb && tb->q == b.q + 1) {
          for (std::size_t r = 0; r < M.rows(); ++r)
            for (const auto& [col, x] : M.row(r)) D.add(tb->offset + r, b.offset + col, p % 2 ? -x : x);
        } else if (!M.is_zero()) {
          throw MathError("total complex: missing block");
        }
      }
      for (int s = 0; s < m; ++s) {
        if ((b.S >> s & 1u) || !(allowed_ >> s & 1u)) continue;
        const uint32_t S2 = b.S | (1u << s);
        const int pos = count(b.S & ((1u << s) - 1));
        const RatMatrix& R = restriction(b.piece, cover.piece_of(S2), b.q);
        const Block* tb = nullptr;
        for (const Block& c : blocks_[t + 1])
          if (c.S == S2 && c.q == b.q) tb = &c;
        if (!tb) {
          if (!R.is_zero()) throw MathError("total complex: missing block");
          continue;
        }
        for (std::size_t r = 0; r < R.rows(); ++r)
          for (const auto& [col, x] : R.row(r)) D.add(tb->offset + r, b.offset + col, pos % 2 ? -x : x);
      }
    }
    d_.push_back(std::move(D));
  }
  h_ = complex_cohomology(0, dims_, d_);
}

const TotalComplex::Block* TotalComplex::find_block(int t, uint32_t S) const {
  if (t < 0 || t > top()) return nullptr;
  for (const Block& b : blocks_[t])
    if (b.S == S) return &b;
  return nullptr;
}

SparseVec TotalComplex::vectorize(const Cochain& c) const {
  std::map<std::size_t, Rational> acc;
  for (const auto& [S, w] : c.comp) {
    if (w.is_zero()) continue;
    if (S & ~allowed_) throw MathError("vectorize: component outside the subcover");
    const Block* b = find_block(c.degree, S);
    const int q = c.degree - (count(S) - 1);
    if (w.degree() != q) throw MathError("vectorize: component of wrong form degree");
    if (!b) throw MathError("vectorize: component leaves the subcomplex on " + cover_->describe(S));
    auto co = cover_->pieces[b->piece].complex.term(q).coordinates(w);
    if (!co) throw MathError("vectorize: component leaves the subcomplex on " + cover_->describe(S));
    for (std::size_t i = 0; i < co->size(); ++i)
      if (sgn((*co)[i]) != 0) acc[b->offset + i] += (*co)[i];
  }
  SparseVec v;
  for (auto& [i, x] : acc)
    if (sgn(x) != 0) v.emplace_back(i, x);
  return v;
}

Cochain TotalComplex::cochain(int t, const SparseVec& v) const {
  Cochain c;
  c.degree = t;
  for (const Block& b : blocks_.at(t)) {
    const FormSpace& sp = cover_->pieces[b.piece].complex.term(b.q);
    std::vector<Rational> coef(sp.dim());
    bool any = false;
    for (const auto& [i, x] : v)
      if (i >= b.offset && i < b.offset + sp.dim()) {
        coef[i - b.offset] = x;
        any = true;
      }
    if (any) c.comp[b.S] = sp.combination(coef);
  }
  return c;
}

Cochain TotalComplex::apply_d(const Cochain& c) const {
  Cochain r;
  r.degree = c.degree + 1;
  const int m = static_cast<int>(cover_->opens.size());
  for (const auto& [S, w] : c.comp) {
    if (w.is_zero()) continue;
    const int p = count(S) - 1;
    const std::size_t piece = cover_->piece_of(S);
    if (w.degree() < cover_->n()) {
      DiffForm dw = de_rham_d(w);
      r.comp[S] += p % 2 ? -dw : dw;
    }
    for (int s = 0; s < m; ++s) {
      if ((S >> s & 1u) || !(allowed_ >> s & 1u)) continue;
      const uint32_t S2 = S | (1u << s);
      const int pos = count(S & ((1u << s) - 1));
      DiffForm x = cover_->restrict(w, piece, cover_->piece_of(S2));
      r.comp[S2] += pos % 2 ? -x : x;
    }
  }
  for (auto it = r.comp.begin(); it != r.comp.end();)
    it = it->second.is_zero() ? r.comp.erase(it) : std::next(it);
  return r;
}

std::vector<std::size_t> TotalComplex::betti() const {
  std::vector<std::size_t> b;
  for (const auto& s : h_.h) b.push_back(s.dim());
  return b;
}

std::vector<Cochain> TotalComplex::generators(int t) const {
  std::vector<Cochain> out;
  if (t < 0 || t > top()) return out;
  for (const auto& r : h_.h[t].representatives()) out.push_back(cochain(t, r));
  return out;
}

bool TotalComplex::is_cocycle(const Cochain& c) const {
  if (c.degree >= top()) return true;
  return d_[c.degree].apply(vectorize(c)).empty();
}

bool TotalComplex::is_coboundary(const Cochain& c) const {
  SparseVec v = vectorize(c);
  if (v.empty()) return true;
  if (c.degree == 0) return false;
  return h_.h[c.degree].is_boundary(v);
}

std::vector<Rational> TotalComplex::class_coordinates(const Cochain& c, const std::vector<Cochain>& basis) const {
  const int t = c.degree;
  std::vector<SparseVec> bounds, cycles;
  if (t > 0 && t <= top())
    for (std::size_t j = 0; j < d_[t - 1].cols(); ++j) bounds.push_back(d_[t - 1].column(j));
  cycles = bounds;
  for (const auto& b : basis) {
    if (b.degree != t) throw MathError("class_coordinates: degree mismatch");
    cycles.push_back(vectorize(b));
  }
  Subquotient sq(dim(t), cycles, bounds);
  if (sq.dim() != basis.size()) throw MathError("class_coordinates: basis classes are dependent");
  return sq.reduce(vectorize(c));
}

// ---------------------------------------------------------------------------

Cochain operator+(const Cochain& a, const Cochain& b) {
  if (a.comp.empty()) return b;
  if (b.comp.empty()) return a;
  if (a.degree != b.degree) throw MathError("cochain sum: degree mismatch");
  Cochain r = a;
  for (const auto& [S, w] : b.comp) r.comp[S] += w;
  for (auto it = r.comp.begin(); it != r.comp.end();)
    it = it->second.is_zero() ? r.comp.erase(it) : std::next(it);
  return r;
}

Cochain operator*(const Cochain& a, const Rational& c) {
  Cochain r;
  r.degree = a.degree;
  if (sgn(c) == 0) return r;
  for (const auto& [S, w] : a.comp) r.comp[S] = w * c;
  return r;
}

Cochain cup(const Cover& cover, const Cochain& w, const Cochain& v) {
  Cochain r;
  r.degree = w.degree + v.degree;
  for (const auto& [S1, a] : w.comp)
    for (const auto& [S2, b] : v.comp) {
      if (highest(S1) != lowest(S2)) continue;
      const uint32_t S = S1 | S2;
      const int p2 = count(S2) - 1;
      const int q = a.degree();
      const std::size_t piece = cover.piece_of(S);
      DiffForm x = wedge(cover.restrict(a, cover.piece_of(S1), piece), cover.restrict(b, cover.piece_of(S2), piece));
      if ((q * p2) % 2) x = -x;
      r.comp[S] += x;
    }
  for (auto it = r.comp.begin(); it != r.comp.end();)
    it = it->second.is_zero() ? r.comp.erase(it) : std::next(it);
  return r;
}

std::map<std::size_t, std::vector<DiffForm>> cochain_forms(const Cover& cover, const Cochain& c) {
  std::map<std::size_t, std::vector<DiffForm>> out;
  for (const auto& [S, w] : c.comp)
    if (!w.is_zero()) out[cover.piece_of(S)].push_back(w);
  return out;
}

Cochain character_cochain(const Cover& cover, int cech_degree, const CharacterRule& rule) {
  Cochain c;
  const int n = cover.n();
  const int m = static_cast<int>(cover.opens.size());
  for (uint32_t S = 1; S < (1u << m); ++S) {
    if (count(S) != cech_degree + 1) continue;
    std::vector<int> charts;
    bool repeat = false;
    for (int s : bits(S)) {
      int j = cover.opens[s].chart;
      if (!charts.empty() && charts.back() == j) repeat = true;
      charts.push_back(j);
    }
    if (repeat) continue;
    auto chars = rule(charts);
    if (!chars) continue;
    const std::size_t pi = cover.piece_of(S);
    const Piece& p = cover.pieces[pi];
    DiffForm w = DiffForm::function(n, p.divisor, Poly(n, Rational(1)), 0);
    for (const auto& ch : *chars) w = wedge(w, dlog_monomial(n, cover.atlas.in_chart(ch, p.chart), p.divisor));
    c.degree = cech_degree + w.degree();
    if (!w.is_zero()) c.comp[S] = w;
  }
  if (c.comp.empty()) c.degree = -1;
  return c;
}

Cochain chern_cocycle(const Cover& cover, int k) {
  if (!cover.atlas.projective) throw MathError("chern_cocycle: needs the standard cover of projective space");
  const int n = cover.n();
  if (k < 0 || k > n) throw MathError("chern_cocycle: 0 <= k <= n");
  auto e = [n](int i) {
    std::vector<long> v(n, 0);
    if (i > 0) v[i - 1] = 1;
    return v;
  };
  Cochain c = character_cochain(cover, k, [&](const std::vector<int>& J) {
    std::vector<std::vector<long>> chars;
    for (std::size_t m = 1; m < J.size(); ++m) {
      auto a = e(J[m]), b = e(J[0]);
      for (int i = 0; i < n; ++i) a[i] -= b[i];
      chars.push_back(a);
    }
    return std::optional(chars);
  });
  c.degree = 2 * k;
  return c;
}

CechRow cech_row(const Cover& cover, int q, uint32_t allowed) {
  const int m = static_cast<int>(cover.opens.size());
  allowed &= (1u << m) - 1;
  std::map<std::size_t, Subquotient> hq;
  auto piece_h = [&](std::size_t k) -> const Subquotient& {
    auto it = hq.find(k);
    if (it != hq.end()) return it->second;
    const FiniteSubcomplex& c = cover.pieces[k].complex;
    std::vector<std::size_t> dims = c.dims();
    std::vector<RatMatrix> d;
    for (int i = 0; i < c.n(); ++i) d.push_back(c.differential(i));
    return hq.emplace(k, complex_cohomology(0, dims, d).h.at(q)).first->second;
  };
  const int top = count(allowed) - 1;
  CechRow row;
  row.dims.assign(top + 1, 0);
  std::vector<std::map<uint32_t, std::size_t>> offset(top + 1);
  for (uint32_t S = 1; S < (1u << m); ++S) {
    if (S & ~allowed) continue;
    const int p = count(S) - 1;
    offset[p][S] = row.dims[p];
    row.dims[p] += piece_h(cover.piece_of(S)).dim();
  }
  for (int p = 0; p < top; ++p) {
    RatMatrix M(row.dims[p + 1], row.dims[p]);
    for (const auto& [S, off] : offset[p]) {
      const std::size_t from = cover.piece_of(S);
      const FormSpace& src = cover.pieces[from].complex.term(q);
      const Subquotient& hs = piece_h(from);
      for (int s = 0; s < m; ++s) {
        if ((S >> s & 1u) || !(allowed >> s & 1u)) continue;
        const uint32_t S2 = S | (1u << s);
        const int sign = count(S & ((1u << s) - 1)) % 2 ? -1 : 1;
        const std::size_t to = cover.piece_of(S2);
        const FormSpace& dst = cover.pieces[to].complex.term(q);
        const Subquotient& ht = piece_h(to);
        for (std::size_t i = 0; i < hs.dim(); ++i) {
          std::vector<Rational> coef(src.dim());
          for (const auto& [k, x] : hs.representatives()[i]) coef[k] = x;
          auto c = dst.coordinates(cover.restrict(src.combination(coef), from, to));
          if (!c) throw MathError("cech_row: restriction leaves the subcomplex");
          SparseVec v;
          for (std::size_t k = 0; k < c->size(); ++k)
            if (sgn((*c)[k]) != 0) v.emplace_back(k, (*c)[k]);
          auto r = ht.reduce(v);
          for (std::size_t k = 0; k < r.size(); ++k)
            if (sgn(r[k]) != 0) M.add(offset[p + 1].at(S2) + k, off + i, sign * r[k]);
        }
      }
    }
    row.ranks.push_back(matrix_rank(M));
  }
  return row;
}

OpenCohomology open_cohomology(const TotalComplex& tc) {
  OpenCohomology r;
  const int n = tc.cover().n();
  auto b = tc.betti();
  for (int t = 0; t <= tc.top(); ++t)
    if (t > 2 * n && b[t] != 0) throw MathError("open_cohomology: cohomology above degree 2n");
  for (int t = 0; t <= 2 * n; ++t) {
    r.betti.push_back(t <= tc.top() ? b[t] : 0);
    r.generators.push_back(tc.generators(t));
  }
  for (int t = 0; t <= tc.top(); ++t) r.total_dims.push_back(tc.dim(t));
  r.ranks = tc.cohomology().ranks;
  return r;
}

Cover projective_cover(int n, const std::vector<Poly>& homogeneous, const std::vector<std::string>& names,
                       const CoverOptions& opt) {
  Atlas atlas = projective_atlas(n, names);
  std::vector<std::vector<Poly>> eq;
  for (const auto& f : homogeneous) {
    if (f.is_zero() || !f.is_homogeneous()) throw MathError("projective_cover: need nonzero homogeneous polynomials");
    if (f.nvars() != n + 1) throw MathError("projective_cover: need n+1 variables");
    std::vector<Poly> row;
    for (int j = 0; j <= n; ++j) row.push_back(dehomogenize(f, j));
    eq.push_back(std::move(row));
  }
  return build_cover(atlas, eq, opt);
}

CupTable cup_products(Cover& cover, const CoverOptions& opt) {
  const int n = cover.n();
  std::vector<std::vector<Cochain>> gens;
  {
    TotalComplex tc(cover);
    for (int t = 0; t <= 2 * n; ++t) gens.push_back(tc.generators(t));
  }
  CupTable table;
  std::vector<Cochain> flat;
  for (int t = 0; t <= 2 * n; ++t)
    for (std::size_t i = 0; i < gens[t].size(); ++i) {
      table.basis.emplace_back(t, i);
      flat.push_back(gens[t][i]);
    }
  Cochain unit;
  unit.degree = 0;
  for (std::size_t s = 0; s < cover.opens.size(); ++s) {
    const Piece& p = cover.pieces[cover.piece_of(1u << s)];
    unit.comp[1u << s] = DiffForm::function(n, p.divisor, Poly(n, Rational(1)), 0);
  }
  table.generators = flat;
  const std::size_t N = flat.size();
  std::vector<std::vector<Cochain>> prod(N, std::vector<Cochain>(N));
  std::map<std::size_t, std::vector<DiffForm>> extras;
  auto collect = [&](const Cochain& c) {
    for (auto& [k, v] : cochain_forms(cover, c)) extras[k].insert(extras[k].end(), v.begin(), v.end());
  };
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (flat[i].degree + flat[j].degree > 2 * n) continue;
      prod[i][j] = cup(cover, flat[i], flat[j]);
      collect(prod[i][j]);
    }
  saturate(cover, extras, opt);
  TotalComplex tc(cover);
  table.products.assign(N, std::vector<std::vector<Rational>>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const int t = flat[i].degree + flat[j].degree;
      if (t > 2 * n) continue;
      Cochain pr = prod[i][j];
      pr.degree = t;
      if (!tc.is_cocycle(pr)) throw MathError("cup_products: product of cocycles is not a cocycle");
      table.products[i][j] = tc.class_coordinates(pr, gens[t]);
    }
  for (std::size_t i = 0; i < N; ++i) {
    const int t = flat[i].degree;
    std::vector<Rational> e(gens[t].size());
    e[table.basis[i].second] = 1;
    Cochain l = cup(cover, unit, flat[i]), r = cup(cover, flat[i], unit);
    l.degree = r.degree = t;
    if (tc.class_coordinates(l, gens[t]) != e || tc.class_coordinates(r, gens[t]) != e) table.unit_law = false;
    for (std::size_t j = 0; j < N; ++j) {
      const int u = flat[j].degree;
      if (t + u > 2 * n) continue;
      const bool odd = (t * u) % 2;
      auto a = table.products[i][j], b = table.products[j][i];
      for (auto& x : b)
        if (odd) x = -x;
      if (a != b) table.graded_commutative = false;
    }
  }
  return table;
}

}  // namespace drc
