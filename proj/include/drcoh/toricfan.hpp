#pragma once

#include <array>
#include <string>
#include <vector>

#include "drcoh/glue.hpp"

/// Smooth complete toric surfaces: charts from a 2-dimensional fan,
/// divisors given by a Laurent polynomial and a line bundle twist, and the
/// glue pipeline on the resulting atlas.
namespace drc {

using Ray = std::array<long, 2>;

struct Fan2D {
  std::vector<Ray> rays;                // counterclockwise
  std::vector<std::string> ray_names;   // homogeneous coordinate per ray
  std::vector<std::string> cone_names;  // cone i spans rays i and i+1 (cyclically)
  /// Optional chart coordinates per cone (two characters each, in any
  /// order); empty means the dual basis of (ray i, ray i+1).
  std::vector<std::vector<Ray>> coordinates;

  std::size_t size() const { return rays.size(); }
};

/// Throws MathError unless the fan is complete and every cone is smooth.
void validate_fan(const Fan2D& fan);

struct ConeChart {
  int cone = 0;
  std::string name;
  std::vector<std::vector<long>> characters;  // rows s, t
  std::vector<std::string> coordinate_names;
};

std::vector<ConeChart> fan_charts(const Fan2D& fan);
Atlas fan_atlas(const Fan2D& fan);

/// The character m as a Laurent monomial in the ray coordinates,
/// prod_rho rho^<m, v_rho>, e.g. "y*z^2/w".
std::string character_name(const Fan2D& fan, const std::vector<long>& m);

/// Section of the line bundle with twist a (one integer per ray): on cone
/// sigma the local equation is chi^{m_sigma} p with <m_sigma, v_rho> = a_rho
/// for both rays rho of sigma. p is a Laurent polynomial in the torus
/// coordinates (two variables). Throws if a local equation is not regular.
struct ToricDivisor {
  Poly laurent;
  std::vector<long> twist;
};

std::vector<long> cone_character(const Fan2D& fan, int cone, const std::vector<long>& twist);
std::vector<Poly> local_equations(const Fan2D& fan, const ToricDivisor& divisor);

/// Cover of X minus the union of the divisors.
Cover toric_cover(const Fan2D& fan, const std::vector<ToricDivisor>& divisors, const CoverOptions& opt = {});

/// Rays (1,0), (0,1), (-1,a), (0,-1) with coordinates x, y, z, w and cones
/// A, B, C, D; the charts use s = x/z or z/x and t the remaining
/// generator, as in the usual presentation of the Hirzebruch surface F_a.
Fan2D hirzebruch_fan(int a);
/// Rays e1, e2, -e1-e2 with coordinates x1, x2, x0 (from the given names
/// x0, x1, x2) so that the charts are those of the standard cover.
Fan2D projective_plane_fan(const std::vector<std::string>& names);

}  // namespace drc
