#pragma once

#include <array>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "confocal/geometry.hpp"

namespace confocal {

/// Diagonal linear correspondence between confocal quadrics: componentwise
/// scaling by target_axis / source_axis (four ratios on S^3, where the
/// fourth scales the w coordinate by h1/h0).
class DiagonalMap {
 public:
  DiagonalMap(EuclideanEllipsoid source, EuclideanEllipsoid target,
              std::vector<double> ratios);
  DiagonalMap(SphericalEllipsoid source, SphericalEllipsoid target,
              std::vector<double> ratios);

  bool spherical() const;
  int ambient_dim() const { return static_cast<int>(ratios_.size()); }
  const std::vector<double>& ratios() const { return ratios_; }

  const EuclideanEllipsoid& euclidean_source() const;
  const EuclideanEllipsoid& euclidean_target() const;
  const SphericalEllipsoid& spherical_source() const;
  const SphericalEllipsoid& spherical_target() const;

 private:
  std::vector<double> ratios_;
  std::variant<std::pair<EuclideanEllipsoid, EuclideanEllipsoid>,
               std::pair<SphericalEllipsoid, SphericalEllipsoid>>
      endpoints_;
};

/// Builds the correspondence; throws Errc::not_confocal when no admissible
/// shift relates source and target (checked to 1e-12 on squared axes).
DiagonalMap ivory_map(const EuclideanEllipsoid& source,
                      const EuclideanEllipsoid& target);
DiagonalMap ivory_map(const SphericalEllipsoid& source,
                      const SphericalEllipsoid& target);

DiagonalMap inverse(const DiagonalMap& m);

/// Componentwise image. With strict=true the input must lie on the source
/// quadric within kSurfaceTol (throws Errc::not_on_source); the image then
/// lies on the target within 1e-12.
std::vector<double> apply_map(const DiagonalMap& m, std::span<const double> p,
                              bool strict = false);

/// |dist^2(P0, A X0) - dist^2(A P0, X0)| for P0, X0 on e0, relative to the
/// magnitude of the compared quantities.
double chord_identity_residual(const EuclideanEllipsoid& e0,
                       const EuclideanEllipsoid& e1,
                       std::span<const double> P0, std::span<const double> X0);

/// Residuals of the three confocal spherical identities for Q0, X0 on se0
/// (f0 = 0, g = 1), with A the diagonal map se0 -> se1:
///   (A) both images lie on the target quadric:  f1(A Q0) = f1(A X0) = 0;
///   (B) both images stay on the unit sphere:    g(A Q0) = g(A X0) = 1;
///   (C) chord symmetry:  |A X0 - Q0|^2 = |A Q0 - X0|^2.
/// Each entry is the worst relative residual of its pair of equations.
std::array<double, 3> spherical_identity_residuals(const SphericalEllipsoid& se0,
                                       const SphericalEllipsoid& se1,
                                       std::span<const double> Q0,
                                       std::span<const double> X0);

}  // namespace confocal
