#include "drcoh/charttable.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>

namespace drc {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

template <class T>
std::string join_numbers(const std::vector<T>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(std::to_string(x));
  return join(s, " ");
}

long to_long(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("chart table: expected an integer, got '" + s + "'", line);
}

std::vector<std::size_t> to_dims(std::istringstream& in, std::size_t line) {
  std::vector<std::size_t> out;
  std::string w;
  while (in >> w) {
    long v = to_long(w, line);
    if (v < 0) throw ParseError("chart table: negative dimension", line);
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::string wedge_name(FormMask k, const std::vector<std::string>& vars) {
  if (k == 0) return "1";
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (k & (1u << i)) parts.push_back("d" + vars[i]);
  return join(parts, "^");
}

FormMask parse_wedge(const std::string& s, const std::vector<std::string>& vars) {
  if (s == "1") return 0;
  FormMask k = 0;
  int last = -1;
  for (const auto& part : split(s, '^')) {
    if (part.size() < 2 || part[0] != 'd') throw ParseError("form: bad wedge '" + s + "'", 0);
    auto it = std::find(vars.begin(), vars.end(), part.substr(1));
    if (it == vars.end()) throw ParseError("form: unknown variable in '" + part + "'", 0);
    int i = static_cast<int>(it - vars.begin());
    if (i <= last) throw ParseError("form: wedge factors must be increasing in '" + s + "'", 0);
    last = i;
    k |= 1u << i;
  }
  return k;
}

std::string matrix_text(const MonomialMap& m) {
  std::vector<std::string> rows;
  for (const auto& r : m.A) {
    std::vector<std::string> e;
    for (long x : r) e.push_back(std::to_string(x));
    rows.push_back(join(e, ","));
  }
  return join(rows, ";");
}

}  // namespace

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string divisor_hash(const Poly& divisor, const std::vector<std::string>& vars) {
  return fnv1a_hex(std::to_string(divisor.nvars()) + "|" + divisor.to_string(vars));
}

std::string form_expression(const DiffForm& w, const std::vector<std::string>& vars) {
  if (w.is_zero()) return "0 0";
  std::vector<std::string> comps;
  for (const auto& [k, g] : w.numerators()) comps.push_back(wedge_name(k, vars) + " : " + g.to_string(vars));
  return std::to_string(w.power()) + " " + join(comps, " ; ");
}

DiffForm parse_form_expression(const std::string& text, int degree, const Poly& base,
                               const std::vector<std::string>& vars) {
  const int n = static_cast<int>(vars.size());
  std::string t = trim(text);
  auto sp = t.find(' ');
  if (sp == std::string::npos) throw ParseError("form: expected '<power> <components>'", 0);
  long p = to_long(t.substr(0, sp), 0);
  DiffForm w(n, base, degree);
  std::string rest = trim(t.substr(sp + 1));
  if (rest == "0") return w;
  for (const auto& comp : split(rest, ';')) {
    auto colon = comp.find(':');
    if (colon == std::string::npos) throw ParseError("form: component without ':' in '" + comp + "'", 0);
    FormMask k = parse_wedge(trim(comp.substr(0, colon)), vars);
    if (mask_size(k) != degree) throw ParseError("form: component of the wrong degree", 0);
    w.add(k, parse_poly(trim(comp.substr(colon + 1)), vars), static_cast<int>(p));
  }
  return w;
}

std::string serialize(const ChartTable& t) {
  std::ostringstream os;
  os << "drcoh-chart-table 1\n";
  os << "hash " << t.hash << "\n";
  os << "vars " << join(t.vars, ",") << "\n";
  if (!t.coords.empty()) os << "coords " << join(t.coords, ",") << "\n";
  os << "chart " << t.chart << "\n";
  os << "divisor " << t.divisor.to_string(t.vars) << "\n";
  os << "a " << t.seed.a << "\n";
  os << "k1 " << t.seed.k1 << "\n";
  os << "dims " << join_numbers(t.seed.dims) << "\n";
  for (const auto& s : t.seed.stability) os << "stability " << join_numbers(s) << "\n";
  for (const auto& w : t.seed.forms) os << "gen " << w.degree() << " " << form_expression(w, t.vars) << "\n";
  for (const auto& tr : t.translations) os << "translate " << tr.from << " " << tr.to << " " << matrix_text(tr.map) << "\n";
  os << "end\n";
  return os.str();
}

ChartTable parse_chart_table(const std::string& text) {
  ChartTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  bool header = false, ended = false, have_divisor = false;
  std::vector<std::tuple<std::size_t, int, std::string>> gens;
  while (std::getline(in, line)) {
    ++no;
    auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    if (ended) throw ParseError("chart table: text after 'end'", no);
    if (!header) {
      if (line != "drcoh-chart-table 1") throw ParseError("chart table: missing header line", no);
      header = true;
      continue;
    }
    auto sp = line.find(' ');
    std::string key = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
    std::istringstream words(rest);
    try {
      if (key == "hash") {
        t.hash = rest;
      } else if (key == "vars") {
        t.vars = split(rest, ',');
      } else if (key == "coords") {
        t.coords = split(rest, ',');
      } else if (key == "chart") {
        t.chart = rest;
      } else if (key == "divisor") {
        t.divisor = parse_poly(rest, t.vars);
        have_divisor = true;
      } else if (key == "a") {
        t.seed.a = to_long(rest, no);
      } else if (key == "k1") {
        t.seed.k1 = to_long(rest, no);
      } else if (key == "dims") {
        t.seed.dims = to_dims(words, no);
      } else if (key == "stability") {
        t.seed.stability.push_back(to_dims(words, no));
      } else if (key == "gen") {
        auto s2 = rest.find(' ');
        if (s2 == std::string::npos) throw ParseError("chart table: 'gen' needs a degree and a form", no);
        gens.emplace_back(no, static_cast<int>(to_long(rest.substr(0, s2), no)), rest.substr(s2 + 1));
      } else if (key == "translate") {
        Translation tr;
        std::string m;
        if (!(words >> tr.from >> tr.to >> m)) throw ParseError("chart table: 'translate <from> <to> <rows>'", no);
        for (const auto& row : split(m, ';')) {
          std::vector<long> r;
          for (const auto& e : split(row, ',')) r.push_back(to_long(e, no));
          tr.map.A.push_back(std::move(r));
        }
        t.translations.push_back(std::move(tr));
      } else if (key == "end") {
        ended = true;
      } else {
        throw ParseError("chart table: unknown record '" + key + "'", no);
      }
    } catch (const ParseError& e) {
      if (key == "divisor")
        throw ParseError("chart table line " + std::to_string(no), e);
      throw;
    }
  }
  if (!ended) throw ParseError("chart table: missing 'end'", no);
  if (t.vars.empty() || !have_divisor) throw ParseError("chart table: 'vars' and 'divisor' are required", no);
  const int n = static_cast<int>(t.vars.size());
  for (const auto& [at, deg, expr] : gens) {
    if (deg < 0 || deg > n) throw ParseError("chart table: generator degree out of range", at);
    try {
      t.seed.forms.push_back(parse_form_expression(expr, deg, t.divisor, t.vars));
    } catch (const ParseError& e) {
      throw ParseError("chart table line " + std::to_string(at), e);
    }
  }

  if (t.hash != divisor_hash(t.divisor, t.vars)) throw MathError("chart table: hash does not match the divisor");
  if (t.seed.dims.size() != static_cast<std::size_t>(n + 1)) throw MathError("chart table: need dims for degrees 0..n");
  std::vector<std::size_t> count(n + 1, 0);
  FiniteSubcomplex c(n, t.divisor);
  for (const auto& w : t.seed.forms) {
    if (!de_rham_d(w).is_zero()) throw MathError("chart table: generator is not closed");
    ++count[w.degree()];
    c.add(w);
  }
  if (count != t.seed.dims || c.cohomology_dims() != t.seed.dims)
    throw MathError("chart table: generators do not span the recorded dimensions");
  for (const auto& tr : t.translations)
    if (tr.map.n() != n) throw MathError("chart table: translation of the wrong size");
  return t;
}

std::vector<ChartTable> cover_tables(const Cover& cover) {
  std::vector<ChartTable> out;
  const int n = cover.n();
  const auto vars = default_names(n, "t");
  for (std::size_t k = 0; k < cover.pieces.size(); ++k) {
    const Piece& p = cover.pieces[k];
    ChartTable t;
    t.vars = vars;
    t.coords = cover.names(k);
    std::vector<std::string> charts, polys;
    for (std::size_t j = 0; j < cover.atlas.charts.size(); ++j)
      if (p.charts & (1u << j)) charts.push_back(cover.atlas.charts[j].name);
    for (std::size_t i = 0; i < cover.equations.size(); ++i)
      if (p.polys & (1u << i)) polys.push_back("f" + std::to_string(i));
    t.chart = join(charts, ",") + (polys.empty() ? "" : "|" + join(polys, ","));
    t.divisor = p.divisor;
    t.hash = divisor_hash(p.divisor, vars);
    t.seed = {p.a, p.k1, p.target, p.stability, p.generators};
    std::set<int> from;
    for (int j = 0; j < static_cast<int>(cover.atlas.charts.size()); ++j)
      if ((p.charts & (1u << j)) && j != p.chart) from.insert(j);
    for (int j : from)
      t.translations.push_back({cover.atlas.charts[j].name, cover.atlas.charts[p.chart].name,
                                cover.atlas.transition(j, p.chart)});
    out.push_back(std::move(t));
  }
  return out;
}

DirectoryCache::DirectoryCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path DirectoryCache::path_for(const Poly& divisor) const {
  return dir_ / (divisor_hash(divisor, default_names(divisor.nvars(), "t")) + ".table");
}

std::optional<PieceSeed> DirectoryCache::load(const Poly& divisor, int n) {
  auto path = path_for(divisor);
  std::ifstream in(path);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    ChartTable t = parse_chart_table(buf.str());
    if (t.divisor == divisor && static_cast<int>(t.vars.size()) == n) {
      ++hits_;
      return t.seed;
    }
  } catch (const std::exception&) {
    // unreadable or failing the checks: recompute and overwrite
  }
  ++misses_;
  return std::nullopt;
}

void DirectoryCache::store(const Poly& divisor, int n, const PieceSeed& seed) {
  ChartTable t;
  t.vars = default_names(n, "t");
  t.chart = "affine";
  t.divisor = divisor;
  t.hash = divisor_hash(divisor, t.vars);
  t.seed = seed;
  std::filesystem::create_directories(dir_);
  static std::atomic<unsigned> counter{0};
  auto path = path_for(divisor);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary);
    out << serialize(t);
    if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace drc
