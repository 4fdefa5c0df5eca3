#include "drcoh/toricfan.hpp"

#include <cmath>
#include <numeric>

namespace drc {

namespace {

long det(const Ray& a, const Ray& b) { return a[0] * b[1] - a[1] * b[0]; }
long pair(const std::vector<long>& m, const Ray& v) { return m[0] * v[0] + m[1] * v[1]; }

// m_1, m_2 with <m_a, v_b> = delta_ab for a cone (v_1, v_2) of determinant 1.
std::vector<Ray> dual_basis(const Ray& v1, const Ray& v2) {
  return {Ray{v2[1], -v2[0]}, Ray{-v1[1], v1[0]}};
}

}  // namespace

void validate_fan(const Fan2D& fan) {
  const std::size_t k = fan.size();
  if (k < 3) throw MathError("fan: a complete fan in the plane needs at least 3 rays");
  if (fan.ray_names.size() != k || fan.cone_names.size() != k)
    throw MathError("fan: need one name per ray and per cone");
  if (!fan.coordinates.empty() && fan.coordinates.size() != k)
    throw MathError("fan: chart coordinates must be given for every cone or none");
  double turn = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Ray& a = fan.rays[i];
    const Ray& b = fan.rays[(i + 1) % k];
    if (std::gcd(a[0], a[1]) != 1) throw MathError("fan: ray " + fan.ray_names[i] + " is not primitive");
    if (det(a, b) != 1) throw MathError("fan: cone " + fan.cone_names[i] + " is not smooth or not counterclockwise");
    turn += std::atan2(static_cast<double>(det(a, b)), static_cast<double>(a[0] * b[0] + a[1] * b[1]));
    if (!fan.coordinates.empty()) {
      const auto& c = fan.coordinates[i];
      auto d = dual_basis(a, b);
      const bool ok = c.size() == 2 && ((c[0] == d[0] && c[1] == d[1]) || (c[0] == d[1] && c[1] == d[0]));
      if (!ok) throw MathError("fan: coordinates of cone " + fan.cone_names[i] + " are not the dual basis");
    }
  }
  // angles of consecutive rays lie in (0, pi); complete means one full turn
  if (std::lround(turn / (2 * M_PI)) != 1) throw MathError("fan: the cones do not cover the plane exactly once");
}

std::string character_name(const Fan2D& fan, const std::vector<long>& m) {
  std::string num, den;
  int nd = 0;
  for (std::size_t r = 0; r < fan.size(); ++r) {
    long e = pair(m, fan.rays[r]);
    if (e == 0) continue;
    std::string f = fan.ray_names[r];
    if (std::labs(e) != 1) f += "^" + std::to_string(std::labs(e));
    std::string& out = e > 0 ? num : den;
    if (!out.empty()) out += "*";
    out += f;
    if (e < 0) ++nd;
  }
  if (num.empty()) num = "1";
  if (den.empty()) return num;
  return num + "/" + (nd > 1 ? "(" + den + ")" : den);
}

std::vector<ConeChart> fan_charts(const Fan2D& fan) {
  validate_fan(fan);
  std::vector<ConeChart> out;
  const std::size_t k = fan.size();
  for (std::size_t i = 0; i < k; ++i) {
    ConeChart c;
    c.cone = static_cast<int>(i);
    c.name = fan.cone_names[i];
    auto basis = fan.coordinates.empty() ? dual_basis(fan.rays[i], fan.rays[(i + 1) % k]) : fan.coordinates[i];
    for (const auto& m : basis) {
      c.characters.push_back({m[0], m[1]});
      c.coordinate_names.push_back(character_name(fan, c.characters.back()));
    }
    out.push_back(std::move(c));
  }
  return out;
}

Atlas fan_atlas(const Fan2D& fan) {
  Atlas a;
  a.n = 2;
  for (auto& c : fan_charts(fan)) a.charts.push_back({c.name, c.characters, c.coordinate_names});
  return a;
}

std::vector<long> cone_character(const Fan2D& fan, int cone, const std::vector<long>& twist) {
  if (twist.size() != fan.size()) throw MathError("divisor: need one twist per ray");
  const std::size_t i = cone, j = (cone + 1) % fan.size();
  auto d = dual_basis(fan.rays[i], fan.rays[j]);
  return {twist[i] * d[0][0] + twist[j] * d[1][0], twist[i] * d[0][1] + twist[j] * d[1][1]};
}

std::vector<Poly> local_equations(const Fan2D& fan, const ToricDivisor& divisor) {
  if (divisor.laurent.nvars() != 2) throw MathError("divisor: the Laurent polynomial needs two variables");
  if (divisor.laurent.is_zero()) throw MathError("divisor: zero section");
  Atlas atlas = fan_atlas(fan);
  std::vector<Poly> out;
  for (std::size_t c = 0; c < fan.size(); ++c) {
    auto m = cone_character(fan, static_cast<int>(c), divisor.twist);
    Monomial mm = mono_zero();
    mm[0] = static_cast<int16_t>(m[0]);
    mm[1] = static_cast<int16_t>(m[1]);
    Poly torus = divisor.laurent * Poly::term(2, mm, Rational(1));
    MonomialMap to_chart = MonomialMap{atlas.charts[c].characters}.inverse();
    Poly local = pullback(torus, to_chart);
    for (const auto& [e, x] : local.terms())
      if (!mono_nonnegative(e, 2))
        throw MathError("divisor: not a section of the twisted bundle on cone " + fan.cone_names[c]);
    out.push_back(std::move(local));
  }
  return out;
}

Cover toric_cover(const Fan2D& fan, const std::vector<ToricDivisor>& divisors, const CoverOptions& opt) {
  Atlas atlas = fan_atlas(fan);
  std::vector<std::vector<Poly>> eq;
  for (const auto& d : divisors) eq.push_back(local_equations(fan, d));
  return build_cover(atlas, eq, opt);
}

Fan2D hirzebruch_fan(int a) {
  Fan2D f;
  f.rays = {Ray{1, 0}, Ray{0, 1}, Ray{-1, a}, Ray{0, -1}};
  f.ray_names = {"x", "y", "z", "w"};
  f.cone_names = {"A", "B", "C", "D"};
  f.coordinates = {{Ray{1, 0}, Ray{0, 1}},
                   {Ray{-1, 0}, Ray{a, 1}},
                   {Ray{-1, 0}, Ray{-a, -1}},
                   {Ray{1, 0}, Ray{0, -1}}};
  validate_fan(f);
  return f;
}

Fan2D projective_plane_fan(const std::vector<std::string>& names) {
  if (names.size() != 3) throw MathError("projective_plane_fan: need 3 names");
  Fan2D f;
  f.rays = {Ray{1, 0}, Ray{0, 1}, Ray{-1, -1}};
  f.ray_names = {names[1], names[2], names[0]};
  f.cone_names = {names[0], names[1], names[2]};
  f.coordinates = {{Ray{1, 0}, Ray{0, 1}}, {Ray{-1, 0}, Ray{-1, 1}}, {Ray{0, -1}, Ray{1, -1}}};
  validate_fan(f);
  return f;
}

}  // namespace drc
