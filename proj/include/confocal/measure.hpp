#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "confocal/geometry.hpp"
#include "confocal/quadrature.hpp"

namespace confocal {

enum class SurfaceKind { Homeoid, Focaloid };

/// Focaloid: the limit mass distribution of a thin layer between confocal
/// ellipsoids, carried by the member at confocal parameter lambda of a base
/// family.
struct FocaloidSurface {
  EuclideanEllipsoid base;
  double lambda = 0;
  EuclideanEllipsoid carrier() const { return confocal_shift(base, lambda); }
};

/// A quadric surface together with a surface mass distribution of total
/// mass M. The distribution is represented as a weight in the u-parameter
/// space (the unit sphere S^{d-1} or S^2): for any integrand phi,
///   integral phi dm  =  integral_{u-sphere} phi(P(u)) * weight(u) dS(u),
/// so no area Jacobian ever appears at call sites.
class MassSurface {
 public:
  static MassSurface euclidean_homeoid(EuclideanEllipsoid e, double mass);
  static MassSurface spherical_homeoid(SphericalEllipsoid se, double mass);
  static MassSurface focaloid(EuclideanEllipsoid base, double lambda,
                              double mass);

  SurfaceKind kind() const { return kind_; }
  bool is_spherical() const;
  double mass() const { return mass_; }
  /// Ambient dimension (d for Euclidean, 4 forS^3 surfaces).
  int ambient_dim() const;
  /// Dimension of the u-parameter sphere (d-1 or 2).
  int parameter_dim() const;

  const EuclideanEllipsoid& euclidean() const;      // homeoid carrier
  const SphericalEllipsoid& spherical() const;      // homeoid carrier
  const FocaloidSurface& focaloid_surface() const;  // focaloid carrier
  /// The quadric actually carrying the mass (homeoid surface or focaloid
  /// carrier E(lambda)).
  EuclideanEllipsoid euclidean_carrier() const;
  Sheet sheet() const;

  /// Ambient point at parameter u (on the selected sheet for spherical
  /// single-sheet surfaces; sheet must be passed for Sheet::Both).
  std::vector<double> point_at(std::span<const double> u,
                               Sheet sheet = Sheet::North) const;

  /// Mass weight per unit u-sphere area at parameter u. For spherical
  /// surfaces with Sheet::Both the weight refers to one sheet at a time
  /// (the density is even in w, so both sheets share it); integrating over
  /// both sheets returns the total mass.
  double weight(std::span<const double> u) const;

 private:
  MassSurface() = default;
  SurfaceKind kind_ = SurfaceKind::Homeoid;
  double mass_ = 1;
  double norm_ = 1;  // weight normalization constant
  std::variant<EuclideanEllipsoid, SphericalEllipsoid, FocaloidSurface>
      surface_{EuclideanEllipsoid({1, 1, 1})};
};

struct MassEstimate {
  double value = 0;
  double error = 0;  // order-doubling estimate or MC standard error
};

/// Quadrature of the mass element; equals mass() within the estimate.
MassEstimate total_mass(const MassSurface& ms, const QuadratureSpec& quad);

/// Monte Carlo oracle for the Euclidean homeoid density: the mass fraction
/// of a u-region equals the volume fraction of the cone over its image with
/// apex at the center. Estimated by uniform sampling of the solid ellipsoid.
/// region takes the u-parameter (unit vector, length d).
MassEstimate cone_volume_oracle(
    const EuclideanEllipsoid& e,
    const std::function<bool(std::span<const double>)>& region,
    std::int64_t samples, std::uint64_t seed);

/// Monte Carlo oracle for the spherical homeoid density: the normalized
/// volume of {|f| < eps, |g-1| < delta} intersected with the radial cone
/// over the region, which converges to the df^dg mass fraction as
/// eps, delta -> 0. region takes the ambient 4-vector (scale-invariant
/// predicates expected). Fraction is normalized over both sheets.
MassEstimate thin_shell_oracle(
    const SphericalEllipsoid& se,
    const std::function<bool(std::span<const double>)>& region, double eps,
    double delta, std::int64_t samples, std::uint64_t seed);

/// Direct quadrature of the mass fraction of a region, matching the oracle
/// conventions: the predicate receives the u-parameter for Euclidean
/// surfaces (as cone_volume_oracle) and the ambient point for spherical
/// surfaces (as thin_shell_oracle; fraction over both sheets).
MassEstimate region_mass_fraction(
    const MassSurface& ms,
    const std::function<bool(std::span<const double>)>& region,
    const QuadratureSpec& quad);

}  // namespace confocal
