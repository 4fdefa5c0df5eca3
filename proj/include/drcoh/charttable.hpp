#pragma once

#include <filesystem>
#include <string>
#include <tuple>
#include <vector>

#include "drcoh/glue.hpp"

/// Persistent tables of affine generators, one per chart piece.
///
/// File grammar (UTF-8, one record per line, '#' starts a comment):
///
///   drcoh-chart-table 1
///   hash <16 hex digits>          FNV-1a of "<n>|<divisor>" in the vars below
///   vars <v1>,..,<vn>           names t0, t1, .. of the chart coordinates
///   coords <name>,..            optional, what the coordinates stand for
///   chart <label>
///   divisor <poly>
///   a <integer>                   generator exponent: F^-a generates R[1/F]
///   k1 <integer>
///   dims <d0> .. <dn>
///   stability <d0> .. <dn>        one line per checked truncation level
///   gen <degree> <power> <wedge> : <poly> [; <wedge> : <poly>]..
///   translate <from> <to> <row>[;<row>]..   rows of integer exponents
///   end
///
/// A generator is sum_K poly_K / divisor^power dK; <wedge> is 1 for
/// functions, else d<v>^d<w>.. in increasing variable order.
namespace drc {

struct Translation {
  std::string from;
  std::string to;
  MonomialMap map;
  bool operator==(const Translation& o) const { return from == o.from && to == o.to && map == o.map; }
};

struct ChartTable {
  std::string hash;
  std::vector<std::string> vars;
  std::vector<std::string> coords;
  std::string chart;
  Poly divisor;
  PieceSeed seed;
  std::vector<Translation> translations;
};

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& data);
std::string divisor_hash(const Poly& divisor, const std::vector<std::string>& vars);

std::string form_expression(const DiffForm& w, const std::vector<std::string>& vars);
DiffForm parse_form_expression(const std::string& text, int degree, const Poly& base,
                               const std::vector<std::string>& vars);

std::string serialize(const ChartTable& t);
/// Parses and validates: the hash matches, every generator is closed, and
/// the generators are independent with the recorded dimensions.
ChartTable parse_chart_table(const std::string& text);

/// Tables for every piece of a cover, with the chart changes from faces.
std::vector<ChartTable> cover_tables(const Cover& cover);

/// SeedCache backed by a directory of table files named by divisor hash.
/// Writes go to a temporary file that is then renamed into place.
class DirectoryCache : public SeedCache {
 public:
  explicit DirectoryCache(std::filesystem::path dir);
  std::optional<PieceSeed> load(const Poly& divisor, int n) override;
  void store(const Poly& divisor, int n, const PieceSeed& seed) override;
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::filesystem::path path_for(const Poly& divisor) const;
  std::filesystem::path dir_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace drc
