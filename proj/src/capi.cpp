#include "drcoh/drcoh.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "drcoh/charttable.hpp"
#include "drcoh/duality.hpp"
#include "drcoh/toricfan.hpp"

struct drcoh_options {
  drc::CoverOptions cover;
  std::string workspace;
  std::string table_dir;
};

struct drcoh_result {
  std::vector<std::size_t> dims;
  std::string report;
  std::size_t tables = 0;
};

namespace {

thread_local std::string last_error;

class ArgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
drcoh_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return DRCOH_OK;
  } catch (const drc::ParseError& e) {
    last_error = e.what();
    return DRCOH_ERR_PARSE;
  } catch (const drc::ResourceLimit& e) {
    last_error = std::string("stage ") + e.what();
    return DRCOH_ERR_LIMIT;
  } catch (const drc::MathError& e) {
    last_error = e.what();
    return DRCOH_ERR_MATH;
  } catch (const ArgError& e) {
    last_error = e.what();
    return DRCOH_ERR_ARG;
  } catch (const IoError& e) {
    last_error = e.what();
    return DRCOH_ERR_IO;
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = e.what();
    return DRCOH_ERR_IO;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DRCOH_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal error";
    return DRCOH_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw ArgError(std::string(what) + " is null");
}

std::vector<std::string> parse_vars(const char* vars) {
  need(vars, "vars");
  auto v = drc::split_names(vars);
  if (v.empty()) throw ArgError("no variables declared");
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (v[i] == v[j]) throw ArgError("variable '" + v[i] + "' declared twice");
  return v;
}

std::vector<drc::Poly> parse_polys(const char* const* polys, std::size_t count, const std::vector<std::string>& vars) {
  if (count > 0) need(polys, "polys");
  std::vector<drc::Poly> out;
  for (std::size_t i = 0; i < count; ++i) {
    need(polys[i], "poly");
    try {
      out.push_back(drc::parse_poly(polys[i], vars));
    } catch (const drc::ParseError& e) {
      throw drc::ParseError("poly " + std::to_string(i + 1) + " '" + polys[i] + "'", e);
    }
  }
  return out;
}

std::vector<long> parse_longs(const std::string& text, char sep, const std::string& what) {
  std::vector<long> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(start, end - start);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size()) throw drc::ParseError(what + ": expected an integer", start);
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string numbers(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

std::vector<std::size_t> trimmed(std::vector<std::size_t> v, std::size_t keep) {
  while (v.size() > keep && v.back() == 0) v.pop_back();
  return v;
}

// Chart coordinates like x/z are printed in parentheses inside formulas.
std::vector<std::string> atomic(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& s : names)
    out.push_back(s.find_first_of("/*^") == std::string::npos ? s : "(" + s + ")");
  return out;
}

drc::CoverOptions cover_options(const drcoh_options* o, std::unique_ptr<drc::DirectoryCache>& cache) {
  drc::CoverOptions c = o ? o->cover : drc::CoverOptions{};
  c.cache = nullptr;
  if (o && !o->workspace.empty()) {
    cache = std::make_unique<drc::DirectoryCache>(o->workspace);
    c.cache = cache.get();
  }
  return c;
}

std::size_t write_tables(const drcoh_options* o, const drc::Cover& cover) {
  if (!o || o->table_dir.empty()) return 0;
  std::filesystem::create_directories(o->table_dir);
  auto tables = drc::cover_tables(cover);
  for (std::size_t k = 0; k < tables.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "piece_%03zu.table", k);
    std::filesystem::path path = std::filesystem::path(o->table_dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << drc::serialize(tables[k]);
    if (!out) throw IoError("cannot write " + path.string());
  }
  return tables.size();
}

struct Report {
  std::ostringstream os;

  void header(const std::string& command, const std::vector<std::string>& vars) {
    os << "drcoh " << command << "\n";
    os << "vars " << join(vars, ",") << "\n";
  }
  void polys(const std::string& key, const std::vector<drc::Poly>& p, const std::vector<std::string>& vars) {
    for (const auto& f : p) os << key << " " << f.to_string(vars) << "\n";
  }
  void betti(const std::vector<std::size_t>& dims) { os << "betti " << numbers(dims) << "\n"; }

  void cochain(const drc::Cover& cover, const drc::Cochain& c) {
    for (const auto& [S, w] : c.comp) {
      if (w.is_zero()) continue;
      const std::size_t k = cover.piece_of(S);
      const drc::Piece& p = cover.pieces[k];
      os << "    " << cover.describe(S) << " chart " << cover.atlas.charts[p.chart].name << " level " << p.k1
         << ": " << w.to_string(atomic(cover.names(k))) << "\n";
    }
  }

  void degrees(const drc::Cover& cover, const std::vector<std::size_t>& dims,
               const std::vector<std::vector<drc::Cochain>>* gens) {
    for (std::size_t t = 0; t < dims.size(); ++t) {
      os << "H" << t << " dim=" << dims[t] << "\n";
      if (!gens || t >= gens->size()) continue;
      for (std::size_t i = 0; i < (*gens)[t].size(); ++i) {
        os << "  g" << t << "." << i << "\n";
        cochain(cover, (*gens)[t][i]);
      }
    }
  }

  void pieces(const drc::Cover& cover) {
    os << "pieces " << cover.pieces.size() << "\n";
    for (std::size_t k = 0; k < cover.pieces.size(); ++k) {
      const drc::Piece& p = cover.pieces[k];
      auto names = atomic(cover.names(k));
      os << "  piece " << k << " charts";
      for (std::size_t j = 0; j < cover.atlas.charts.size(); ++j)
        if (p.charts & (1u << j)) os << " " << cover.atlas.charts[j].name;
      if (p.polys) {
        os << " polys";
        for (std::size_t i = 0; i < cover.equations.size(); ++i)
          if (p.polys & (1u << i)) os << " f" << i;
      }
      os << " divisor " << p.divisor.to_string(names) << " a " << p.a << " k1 " << p.k1 << " dims "
         << numbers(p.target) << " subcomplex " << numbers(p.complex.dims()) << "\n";
    }
  }

  void ledger(const drc::DualityLedger& l) {
    for (const auto& s : l.sequences) {
      os << "sequence " << s.name << (s.exact() ? " exact" : " NOT EXACT") << "\n";
      for (std::size_t i = 0; i < s.terms.size(); ++i)
        os << "  " << s.terms[i] << " dim " << s.dims[i] << " rank " << s.ranks[i] << "\n";
    }
  }

  void flags(const std::string& key, const std::vector<bool>& v) {
    os << key;
    for (bool b : v) os << " " << (b ? 1 : 0);
    os << "\n";
  }
};

drcoh_status finish(drcoh_result** out, std::vector<std::size_t> dims, Report& r, std::size_t tables) {
  auto* res = new drcoh_result;
  res->dims = std::move(dims);
  res->report = r.os.str();
  res->tables = tables;
  *out = res;
  return DRCOH_OK;
}

}  // namespace

extern "C" {

const char* drcoh_last_error(void) { return last_error.c_str(); }

const char* drcoh_status_name(drcoh_status s) {
  switch (s) {
    case DRCOH_OK: return "ok";
    case DRCOH_ERR_PARSE: return "parse error";
    case DRCOH_ERR_MATH: return "unsupported input";
    case DRCOH_ERR_LIMIT: return "resource limit";
    case DRCOH_ERR_ARG: return "invalid argument";
    case DRCOH_ERR_IO: return "i/o error";
    case DRCOH_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

drcoh_options* drcoh_options_new(void) {
  try {
    return new drcoh_options;
  } catch (...) {
    last_error = "out of memory";
    return nullptr;
  }
}

void drcoh_options_free(drcoh_options* o) { delete o; }

drcoh_status drcoh_options_set_max_gb_steps(drcoh_options* o, long steps) {
  return guarded([&] {
    need(o, "options");
    if (steps <= 0) throw ArgError("max_gb_steps must be positive");
    o->cover.lim.max_gb_steps = steps;
  });
}

drcoh_status drcoh_options_set_max_level(drcoh_options* o, int level) {
  return guarded([&] {
    need(o, "options");
    if (level <= 0) throw ArgError("max_level must be positive");
    o->cover.max_level = level;
  });
}

drcoh_status drcoh_options_set_parallel(drcoh_options* o, int enabled) {
  return guarded([&] {
    need(o, "options");
    o->cover.parallel = enabled != 0;
  });
}

drcoh_status drcoh_options_set_workspace(drcoh_options* o, const char* dir) {
  return guarded([&] {
    need(o, "options");
    o->workspace = dir ? dir : "";
  });
}

drcoh_status drcoh_options_set_table_dir(drcoh_options* o, const char* dir) {
  return guarded([&] {
    need(o, "options");
    o->table_dir = dir ? dir : "";
  });
}

drcoh_status drcoh_affine(const drcoh_options* o, const char* vars, const char* const* polys, size_t npolys,
                          drcoh_result** out) {
  return guarded([&] {
    need(out, "out");
    auto v = parse_vars(vars);
    auto f = parse_polys(polys, npolys, v);
    if (f.empty()) throw ArgError("affine: need at least one polynomial");
    const int n = static_cast<int>(v.size());
    std::unique_ptr<drc::DirectoryCache> cache;
    auto copt = cover_options(o, cache);
    std::vector<std::vector<drc::Poly>> eq;
    for (const auto& p : f) eq.push_back({p});
    drc::Cover c = drc::build_cover(drc::affine_atlas(n, v), eq, copt);
    auto h = drc::open_cohomology(drc::TotalComplex(c));
    auto dims = trimmed(h.betti, n + 1);
    Report r;
    r.header("affine", v);
    r.polys("poly", f, v);
    r.betti(dims);
    r.degrees(c, dims, &h.generators);
    r.pieces(c);
    finish(out, dims, r, write_tables(o, c));
  });
}

drcoh_status drcoh_open(const drcoh_options* o, const char* vars, const char* const* polys, size_t npolys,
                        drcoh_result** out) {
  return guarded([&] {
    need(out, "out");
    auto v = parse_vars(vars);
    auto f = parse_polys(polys, npolys, v);
    const int n = static_cast<int>(v.size()) - 1;
    if (n < 1) throw ArgError("open: projective space needs at least two coordinates");
    std::unique_ptr<drc::DirectoryCache> cache;
    auto copt = cover_options(o, cache);
    drc::Cover c = drc::projective_cover(n, f, v, copt);
    auto h = drc::open_cohomology(drc::TotalComplex(c));
    Report r;
    r.header("open", v);
    r.polys("poly", f, v);
    r.betti(h.betti);
    r.degrees(c, h.betti, &h.generators);
    r.pieces(c);
    finish(out, h.betti, r, write_tables(o, c));
  });
}

drcoh_status drcoh_closed(const drcoh_options* o, const char* vars, const char* const* polys, size_t npolys,
                          drcoh_result** out) {
  return guarded([&] {
    need(out, "out");
    auto v = parse_vars(vars);
    auto f = parse_polys(polys, npolys, v);
    const int n = static_cast<int>(v.size()) - 1;
    if (n < 1) throw ArgError("closed: projective space needs at least two coordinates");
    std::vector<drc::Poly> nonzero;
    for (const auto& p : f)
      if (!p.is_zero()) nonzero.push_back(p);
    if (nonzero.empty()) throw drc::MathError("closed: Y is all of projective space");
    std::unique_ptr<drc::DirectoryCache> cache;
    auto copt = cover_options(o, cache);
    drc::Cover c = drc::projective_cover(n, nonzero, v, copt);
    auto u = drc::open_with_chern(c, ~uint32_t{0}, copt);
    auto y = drc::closed_from_open(u, n);
    auto dims = trimmed(y.betti, 1);
    Report r;
    r.header("closed", v);
    r.polys("poly", f, v);
    r.betti(dims);
    r.degrees(c, dims, nullptr);
    r.os << "complement " << numbers(u.betti) << "\n";
    r.flags("chern_zero", u.chern_zero);
    r.ledger(y.ledger);
    r.pieces(c);
    finish(out, dims, r, write_tables(o, c));
  });
}

drcoh_status drcoh_compact(const drcoh_options* o, const char* vars, const char* const* polys, size_t npolys,
                           drcoh_result** out) {
  return guarded([&] {
    need(out, "out");
    auto v = parse_vars(vars);
    auto f = parse_polys(polys, npolys, v);
    const int n = static_cast<int>(v.size());
    std::vector<std::vector<drc::Poly>> eq;
    for (const auto& p : f)
      if (!p.is_zero()) eq.push_back({p});
    if (eq.empty()) throw drc::MathError("compact: Y is all of affine space");
    std::unique_ptr<drc::DirectoryCache> cache;
    auto copt = cover_options(o, cache);
    drc::Cover c = drc::build_cover(drc::affine_atlas(n, v), eq, copt);
    auto h = drc::open_cohomology(drc::TotalComplex(c));
    auto y = drc::compact_from_open(h.betti, n);
    auto dims = trimmed(y.dims, 1);
    Report r;
    r.header("compact", v);
    r.polys("poly", f, v);
    r.betti(dims);
    r.degrees(c, dims, nullptr);
    r.os << "complement " << numbers(y.betti_U) << "\n";
    r.ledger(y.ledger);
    r.pieces(c);
    finish(out, dims, r, write_tables(o, c));
  });
}

drcoh_status drcoh_locally_closed(const drcoh_options* o, const char* vars, const char* f, const char* g,
                                  int smooth_certified, drcoh_result** out) {
  return guarded([&] {
    need(out, "out");
    need(f, "f");
    need(g, "g");
    auto v = parse_vars(vars);
    const char* fg[] = {f, g};
    auto p = parse_polys(fg, 2, v);
    const int n = static_cast<int>(v.size()) - 1;
    if (n < 1) throw ArgError("locally-closed: projective space needs at least two coordinates");
    if (!smooth_certified)
      throw ArgError("locally-closed: Var(f) must be smooth; certify it explicitly (--assume-smooth)");
    std::unique_ptr<drc::DirectoryCache> cache;
    auto copt = cover_options(o, cache);
    auto res = drc::locally_closed_cohomology(p[0], p[1], n, v, true, copt);
    const std::size_t top = 2 * static_cast<std::size_t>(n - 1) + 1;
    std::vector<std::size_t> dims(res.betti.begin(), res.betti.begin() + std::min(top, res.betti.size()));
    Report r;
    r.header("locally-closed", v);
    r.polys("poly", {p[0]}, v);
    r.polys("minus", {p[1]}, v);
    r.betti(dims);
    r.degrees(drc::Cover{}, dims, nullptr);
    r.os << "row H^k(P^n) " << numbers(res.ambient) << "\n";
    r.os << "row H^k(V) " << numbers(res.betti_V) << "\n";
    r.os << "row H^k(U) " << numbers(res.betti_U) << "\n";
    r.os << "row H^k_Z(P^n) " << numbers(res.local_Z) << "\n";
    r.os << "row H^k(Z) " << numbers(res.betti_Z) << "\n";
    r.os << "row H^k_Y(P^n) " << numbers(res.local_Y) << "\n";
    r.os << "row H^k(Y) " << numbers(res.betti_Y) << "\n";
    r.os << "row ker H^k(V)->H^k(U) " << numbers(res.ker_V_to_U) << "\n";
    r.os << "row im H^k(P^n)->H^k(V) " << numbers(res.im_P_to_V) << "\n";
    r.os << "row H^k(Y-Z) " << numbers(res.betti) << "\n";
    r.ledger(res.ledger);
    std::size_t tables = 0;
    if (o && !o->table_dir.empty()) tables = write_tables(o, drc::projective_cover(n, p, v, copt));
    finish(out, dims, r, tables);
  });
}

drcoh_status drcoh_cup(const drcoh_options* o, const char* vars, const char* const* polys, size_t npolys,
                       drcoh_result** out) {
  return guarded([&] {
    need(out, "out");
    auto v = parse_vars(vars);
    auto f = parse_polys(polys, npolys, v);
    const int n = static_cast<int>(v.size()) - 1;
    if (n < 1) throw ArgError("cup: projective space needs at least two coordinates");
    std::unique_ptr<drc::DirectoryCache> cache;
    auto copt = cover_options(o, cache);
    drc::Cover c = drc::projective_cover(n, f, v, copt);
    const std::size_t tables = write_tables(o, c);
    auto table = drc::cup_products(c, copt);
    std::vector<std::size_t> dims(2 * n + 1, 0);
    std::vector<std::vector<drc::Cochain>> gens(2 * n + 1);
    for (std::size_t i = 0; i < table.basis.size(); ++i) {
      ++dims[table.basis[i].first];
      gens[table.basis[i].first].push_back(table.generators[i]);
    }
    Report r;
    r.header("cup", v);
    r.polys("poly", f, v);
    r.betti(dims);
    r.degrees(c, dims, &gens);
    r.os << "products\n";
    auto label = [&](std::size_t i) {
      return "g" + std::to_string(table.basis[i].first) + "." + std::to_string(table.basis[i].second);
    };
    for (std::size_t i = 0; i < table.basis.size(); ++i)
      for (std::size_t j = 0; j < table.basis.size(); ++j) {
        const int t = table.basis[i].first + table.basis[j].first;
        if (t > 2 * n) continue;
        r.os << "  " << label(i) << " * " << label(j) << " =";
        bool any = false;
        const auto& coords = table.products[i][j];
        for (std::size_t k = 0; k < coords.size(); ++k) {
          if (sgn(coords[k]) == 0) continue;
          r.os << " " << (any && sgn(coords[k]) > 0 ? "+" : "") << coords[k].get_str() << " g" << t << "." << k;
          any = true;
        }
        if (!any) r.os << " 0";
        r.os << "\n";
      }
    r.os << "unit_law " << (table.unit_law ? "yes" : "no") << "\n";
    r.os << "graded_commutative " << (table.graded_commutative ? "yes" : "no") << "\n";
    r.pieces(c);
    finish(out, dims, r, tables);
  });
}

drcoh_status drcoh_toric(const drcoh_options* o, const char* rays, const char* ray_names, const char* torus_vars,
                         const char* laurent, const char* twist, drcoh_result** out) {
  return guarded([&] {
    need(out, "out");
    need(rays, "rays");
    drc::Fan2D fan;
    std::string rs = rays;
    std::size_t start = 0;
    while (start <= rs.size()) {
      std::size_t end = rs.find(';', start);
      if (end == std::string::npos) end = rs.size();
      auto xy = parse_longs(rs.substr(start, end - start), ',', "ray");
      if (xy.size() != 2) throw drc::ParseError("rays: each ray needs two integers", start);
      fan.rays.push_back({xy[0], xy[1]});
      start = end + 1;
    }
    const std::size_t k = fan.rays.size();
    if (ray_names && *ray_names) fan.ray_names = drc::split_names(ray_names);
    else
      for (std::size_t i = 0; i < k; ++i) fan.ray_names.push_back("r" + std::to_string(i));
    if (fan.ray_names.size() != k) throw ArgError("toric: need one name per ray");
    for (std::size_t i = 0; i < k; ++i)
      fan.cone_names.push_back(fan.ray_names[i] + fan.ray_names[(i + 1) % k]);
    drc::validate_fan(fan);

    std::vector<std::string> tv = torus_vars && *torus_vars ? parse_vars(torus_vars) : std::vector<std::string>{"u", "v"};
    if (tv.size() != 2) throw ArgError("toric: the torus has two coordinates");
    std::vector<drc::ToricDivisor> divisors;
    if (laurent && *laurent) {
      drc::ToricDivisor d;
      try {
        d.laurent = drc::parse_poly(laurent, tv);
      } catch (const drc::ParseError& e) {
        throw drc::ParseError("divisor", e);
      }
      d.twist = twist && *twist ? parse_longs(twist, ',', "twist") : std::vector<long>(k, 0);
      if (d.twist.size() != k) throw ArgError("toric: need one twist per ray");
      divisors.push_back(std::move(d));
    }
    std::unique_ptr<drc::DirectoryCache> cache;
    auto copt = cover_options(o, cache);
    drc::Cover c = drc::toric_cover(fan, divisors, copt);
    auto h = drc::open_cohomology(drc::TotalComplex(c));
    Report r;
    r.os << "drcoh toric\n";
    r.os << "rays " << rs << "\n";
    r.os << "ray_names " << join(fan.ray_names, ",") << "\n";
    for (const auto& ch : drc::fan_charts(fan))
      r.os << "chart " << ch.name << " " << join(ch.coordinate_names, ",") << "\n";
    if (!divisors.empty()) {
      r.os << "divisor " << divisors[0].laurent.to_string(tv) << " twist";
      for (long a : divisors[0].twist) r.os << " " << a;
      r.os << "\n";
      auto eq = drc::local_equations(fan, divisors[0]);
      for (std::size_t j = 0; j < k; ++j)
        r.os << "local " << fan.cone_names[j] << " " << eq[j].to_string(atomic(c.atlas.charts[j].coordinate_names))
             << "\n";
    }
    r.betti(h.betti);
    r.degrees(c, h.betti, &h.generators);
    r.pieces(c);
    finish(out, h.betti, r, write_tables(o, c));
  });
}

void drcoh_result_free(drcoh_result* r) { delete r; }

size_t drcoh_result_degree_count(const drcoh_result* r) { return r ? r->dims.size() : 0; }

size_t drcoh_result_dim(const drcoh_result* r, size_t degree) {
  return r && degree < r->dims.size() ? r->dims[degree] : 0;
}

const char* drcoh_result_report(const drcoh_result* r) { return r ? r->report.c_str() : ""; }

size_t drcoh_result_tables_written(const drcoh_result* r) { return r ? r->tables : 0; }

}  // extern "C"
