#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "confocal/error.hpp"

namespace confocal {

/// Which sheet of a spherical ellipsoid (the surface f=0, g=1 has two,
/// exchanged by w -> -w).
enum class Sheet { North, South, Both };

enum class Region { Interior, Surface, Exterior };

/// Connected component of the complement of a two-sheet spherical ellipsoid
/// on S^3: the cap around the north pole, the equatorial band, or the cap
/// around the south pole.
enum class Cap { North, Band, South };

/// Points closer than this to a surface (by first-order distance estimate)
/// are classified as Surface.
inline constexpr double kSurfaceTol = 1e-9;

/// Ellipsoid sum x_i^2 / a_i^2 = 1 in R^d, d >= 2.
class EuclideanEllipsoid {
 public:
  explicit EuclideanEllipsoid(std::vector<double> semi_axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  const std::vector<double>& semi_axes() const { return axes_; }
  double axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }

  /// w(x) = sum x_i^2/a_i^2 - 1; negative inside, zero on the surface.
  double witness(std::span<const double> x) const;
  /// grad w = 2 x_i / a_i^2.
  std::vector<double> witness_gradient(std::span<const double> x) const;

  /// P(u) = (a_1 u_1, ..., a_d u_d) for u on S^{d-1}.
  std::vector<double> surface_point(std::span<const double> u) const;

  double volume() const;

 private:
  std::vector<double> axes_;
};

/// Spherical ellipsoid on S^3 in R^4 = {(x,y,z,w)}: intersection of
///   f = x^2/a^2 + y^2/b^2 + z^2/c^2 - w^2/h^2 = 0
/// with the unit sphere g = x^2+y^2+z^2+w^2 = 1.
class SphericalEllipsoid {
 public:
  SphericalEllipsoid(double a, double b, double c, double h,
                     Sheet sheet = Sheet::Both);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double h() const { return h_; }
  Sheet sheet() const { return sheet_; }

  double f(std::span<const double> x) const;
  std::array<double, 4> f_gradient(std::span<const double> x) const;

  /// Point on the chosen sheet for u on S^2:
  /// P(u) = r (a u_1, b u_2, c u_3, s h), r = 1/sqrt(h^2 + a^2u_1^2 + ...),
  /// s = +1 (North) or -1 (South). The overload without a sheet argument
  /// uses the record's sheet and rejects Sheet::Both (ambiguous).
  std::array<double, 4> surface_point(std::span<const double> u,
                                      Sheet sheet) const;
  std::array<double, 4> surface_point(std::span<const double> u) const;

  /// Cap assignment for a point of S^3 off the surface.
  Cap cap_of(std::span<const double> x) const;

 private:
  double a_, b_, c_, h_;
  Sheet sheet_;
};

/// Confocal shift by gamma:
///   Euclidean  a_i -> sqrt(a_i^2 + gamma), gamma > -min a_i^2;
///   spherical  (a,b,c,h) -> (sqrt(a^2+g), sqrt(b^2+g), sqrt(c^2+g),
///                            sqrt(h^2-g)), -min(a^2,b^2,c^2) < g < h^2.
EuclideanEllipsoid confocal_shift(const EuclideanEllipsoid& e, double gamma);
SphericalEllipsoid confocal_shift(const SphericalEllipsoid& e, double gamma);

/// True when e1 belongs to the confocal family of e0; returns the shift.
std::optional<double> confocal_gamma(const EuclideanEllipsoid& e0,
                                     const EuclideanEllipsoid& e1,
                                     double tol = 1e-9);
std::optional<double> confocal_gamma(const SphericalEllipsoid& e0,
                                     const SphericalEllipsoid& e1,
                                     double tol = 1e-9);

struct Classification {
  Region region = Region::Exterior;
  double witness = 0;        // value of w (Euclidean) or f (spherical)
  double distance_est = 0;   // first-order distance to the surface
  std::optional<Cap> cap;    // spherical only, off-surface points
};

Classification classify(const EuclideanEllipsoid& e, std::span<const double> x);
/// x must lie on S^3 (|g-1| <= 1e-12); poles of the confocal coordinate
/// system (x=y=z=0) classify as Cap::North/South interiors.
Classification classify(const SphericalEllipsoid& e, std::span<const double> x);

/// Confocal parameter of the family member through an exterior point:
/// the unique root lambda > 0 of sum p_i^2/(a_i^2+lambda) = 1 when p is
/// exterior to e (for interior points the root is negative; the root is
/// returned whenever it exists in (-min a_i^2, infinity)).
/// Throws Errc::no_root when no member passes through p (never happens in
/// the Euclidean case for p != 0 exterior), Errc::pole_point at the origin.
double confocal_parameter_through(const EuclideanEllipsoid& e,
                                  std::span<const double> p);

/// Spherical analogue: root gamma in (-min(a^2,b^2,c^2), h^2) of
///   x^2/(a^2+g) + y^2/(b^2+g) + z^2/(c^2+g) - w^2/(h^2-g) = 0.
/// Throws Errc::no_root for points of the focal region (no member passes
/// through), Errc::pole_point at x=y=z=0.
double confocal_parameter_through(const SphericalEllipsoid& e,
                                  std::span<const double> p);

namespace detail {
/// Newton-polished bisection for a strictly decreasing phi on (lo, hi);
/// requires phi(lo+) > 0 > phi(hi-). Throws Errc::non_convergence.
double decreasing_root(double lo, double hi,
                       const std::function<double(double)>& phi,
                       int max_iter = 80, double tol = 1e-13);
}  // namespace detail

}  // namespace confocal
