#pragma once

#include <span>
#include <vector>

#include "confocal/measure.hpp"
#include "confocal/quadrature.hpp"

namespace confocal {

/// Harmonic kernel. Euclidean: K(r) = 1/r for d=3, r^{2-d} for d>=3,
/// -ln r for d=2. Spherical S^3: K(rho) = cot(rho), cos(rho) = <q, x>.
/// Conventions: G = 1, V >= 0 near a Euclidean source, attraction is
/// +gradient of V.
struct Kernel {
  bool spherical = false;
  int dim = 3;  // ambient dimension (Euclidean); 4 on S^3
};

Kernel euclidean_kernel(int dim);
Kernel spherical_kernel();

/// K(distance between source and eval). Throws Errc::coincident at zero
/// separation and Errc::antipodal at rho = pi on the sphere.
double kernel_eval(const Kernel& k, std::span<const double> source,
                   std::span<const double> eval);

/// Potential or force with an error estimate: order-doubling difference for
/// Gauss product rules, standard error for Monte Carlo.
struct FieldValue {
  double value = 0;           // potential
  std::vector<double> force;  // empty unless a force was requested
  double error = 0;           // potential error estimate
  double force_error = 0;     // max-component force error estimate
};

/// V(p) = integral of K dm over the mass surface. Requires p at least
/// quad.min_sep away from the carrying surface (first-order distance
/// estimate), and on S^3 also from its antipodal image; spherical p must be
/// a unit 4-vector. Errors: too_close_to_surface, too_close_to_antipode,
/// not_on_sphere.
FieldValue potential_surface(const MassSurface& ms, std::span<const double> p,
                             const QuadratureSpec& quad);

/// Euclidean: F(p) = grad V = integral (d-2) (x-p)/r^d dm (d>=3), or
/// (x-p)/r^2 dm (d=2). Spherical: intrinsic gradient of the cot kernel,
/// F(q) = integral (x - <q,x> q)/sin^3(rho) dm, tangent to S^3 at q.
FieldValue force_surface(const MassSurface& ms, std::span<const double> p,
                         const QuadratureSpec& quad);

/// Potential and force in one quadrature pass.
FieldValue field_surface(const MassSurface& ms, std::span<const double> p,
                         const QuadratureSpec& quad);

/// Homogeneous solid ellipsoid of total mass M by homeoid layering:
/// V(p) = integral_0^1 V_{homeoid lambda.e}(p) d. M lambda^{d-1} dlambda,
/// Gauss-Legendre with n_layers nodes. p must be exterior by min_sep.
FieldValue potential_homogeneous_ellipsoid(const EuclideanEllipsoid& e,
                                           double mass,
                                           std::span<const double> p,
                                           const QuadratureSpec& quad,
                                           int n_layers = 32);
FieldValue force_homogeneous_ellipsoid(const EuclideanEllipsoid& e,
                                       double mass, std::span<const double> p,
                                       const QuadratureSpec& quad,
                                       int n_layers = 32);
FieldValue field_homogeneous_ellipsoid(const EuclideanEllipsoid& e,
                                       double mass, std::span<const double> p,
                                       const QuadratureSpec& quad,
                                       int n_layers = 32);

/// Uniform-density layer between two nested ellipsoids.
struct ThickLayer {
  enum class Relation { Homothetic, Confocal };
  EuclideanEllipsoid outer;
  EuclideanEllipsoid inner;
  Relation relation = Relation::Homothetic;
  double density = 1;  // uniform volume density rho

  double mass() const { return density * (outer.volume() - inner.volume()); }
};

/// outer scaled by factor lam in (0,1), carrying total mass `mass`.
ThickLayer homothetic_layer(const EuclideanEllipsoid& outer, double lam,
                            double mass);
/// Thick focaloid between E(base, lambda_outer) and E(base, lambda_inner),
/// lambda_inner < lambda_outer, carrying total mass `mass`.
ThickLayer confocal_layer(const EuclideanEllipsoid& base, double lambda_outer,
                          double lambda_inner, double mass);

/// Difference of two homogeneous potentials with the common density.
/// p must be exterior to the outer ellipsoid by min_sep.
FieldValue potential_thick_layer(const ThickLayer& layer,
                                 std::span<const double> p,
                                 const QuadratureSpec& quad,
                                 int n_layers = 32);
FieldValue force_thick_layer(const ThickLayer& layer,
                             std::span<const double> p,
                             const QuadratureSpec& quad, int n_layers = 32);
FieldValue field_thick_layer(const ThickLayer& layer,
                             std::span<const double> p,
                             const QuadratureSpec& quad, int n_layers = 32);

/// First-order estimate of the distance from p to the carrying surface of
/// ms (and on S^3 the minimum over the surface and its antipodal image).
/// Used for the min_sep refusal; exposed for tests.
double separation_estimate(const MassSurface& ms, std::span<const double> p);

}  // namespace confocal
