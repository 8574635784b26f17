#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "confocal/error.hpp"

namespace confocal {

/// Arbitrary-precision rational scalar for the exact verification mode.
using Rational = boost::multiprecision::cpp_rational;

/// Ellipsoid with exact rational semi-axes.
struct RationalEllipsoid {
  std::vector<Rational> axes;
  int dim() const { return static_cast<int>(axes.size()); }
};

RationalEllipsoid make_rational_ellipsoid(std::vector<Rational> axes);

/// Confocal pair with a_0i^2 - a_1i^2 = gamma exactly for every axis, built
/// from per-axis parameters t_i with t_i^2 > max(gamma, 0) > -t_i^2:
///   a_0i = (t_i + gamma/t_i)/2,  a_1i = (t_i - gamma/t_i)/2.
struct RationalConfocalPair {
  RationalEllipsoid e0;
  RationalEllipsoid e1;
  Rational gamma;
};

RationalConfocalPair make_rational_confocal_pair(const std::vector<Rational>& t,
                                                 const Rational& gamma);

/// Exact unit vector from a nonzero rational seed direction: the seed itself
/// when it is already unit, otherwise the Householder reflection of e_1 in
/// the seed, u = e_1 - (2 s_1 / |s|^2) s, which is exactly unit.
std::vector<Rational> rational_unit_vector(const std::vector<Rational>& seed);

/// Point (a_1 u_1, ..., a_d u_d) on the ellipsoid, exact membership.
std::vector<Rational> rational_point_on_ellipsoid(
    const RationalEllipsoid& e, const std::vector<Rational>& seed);

/// Exact witness sum x_i^2/a_i^2 - 1 (must be 0 for surface points).
Rational rational_witness(const RationalEllipsoid& e,
                          const std::vector<Rational>& x);

/// |dist^2(P0, A X0) - dist^2(A P0, X0)| computed exactly, where A is the
/// diagonal map with ratios a_1i/a_0i. Requires P0, X0 on e0 exactly and the
/// pair confocal exactly.
Rational chord_identity_residual_exact(const RationalConfocalPair& pair,
                               const std::vector<Rational>& P0,
                               const std::vector<Rational>& X0);

/// Deterministic pseudo-random small rationals for property tests:
/// numerator in [-range, range], denominator in [1, range], never zero
/// unless allow_zero.
Rational random_rational(std::uint64_t& state, int range = 12,
                         bool allow_zero = false);

double to_double(const Rational& r);

}  // namespace confocal
