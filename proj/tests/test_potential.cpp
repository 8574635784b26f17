#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "confocal/potential.hpp"
#include "test_util.hpp"

using namespace confocal;
using testutil::expect_errc;

namespace {
QuadratureSpec quad(int order) {
  QuadratureSpec q;
  q.order = order;
  return q;
}
}  // namespace

TEST_CASE("kernel_eval closed forms") {
  std::vector<double> a3 = {0, 0, 0}, b3 = {3, 0, 0};
  CHECK(kernel_eval(euclidean_kernel(3), a3, b3) == doctest::Approx(1.0 / 3));
  std::vector<double> a2 = {1, 0}, b2 = {1, 2};
  CHECK(kernel_eval(euclidean_kernel(2), a2, b2) ==
        doctest::Approx(-std::log(2.0)));
  std::vector<double> a4 = {0, 0, 0, 0}, b4 = {0, 2, 0, 0};
  CHECK(kernel_eval(euclidean_kernel(4), a4, b4) == doctest::Approx(0.25));

  // Spherical kernel: cot of the angular distance.
  std::vector<double> q1 = {1, 0, 0, 0}, q2 = {0, 1, 0, 0};
  CHECK(kernel_eval(spherical_kernel(), q1, q2) ==
        doctest::Approx(0.0).epsilon(1e-14));
  std::vector<double> q3 = {std::sqrt(0.5), std::sqrt(0.5), 0, 0};
  CHECK(kernel_eval(spherical_kernel(), q1, q3) ==
        doctest::Approx(1.0).epsilon(1e-12));

  expect_errc(Errc::coincident,
              [&] { kernel_eval(euclidean_kernel(3), a3, a3); });
  std::vector<double> anti = {-1, 0, 0, 0};
  expect_errc(Errc::antipodal,
              [&] { kernel_eval(spherical_kernel(), q1, anti); });
}

TEST_CASE("unit-sphere homeoid reproduces the shell closed form") {
  EuclideanEllipsoid sphere({1, 1, 1});
  MassSurface shell = MassSurface::euclidean_homeoid(sphere, 1.0);
  for (double r : {1.5, 2.0, 4.0}) {
    std::vector<double> p = {r * 0.48, r * 0.6, r * 0.64};
    FieldValue fv = field_surface(shell, p, quad(24));
    CHECK(fv.value == doctest::Approx(1.0 / r).epsilon(1e-10));
    // Attraction is +grad V: force points at the center, magnitude M/r^2.
    for (int i = 0; i < 3; ++i)
      CHECK(fv.force[static_cast<std::size_t>(i)] ==
            doctest::Approx(-p[static_cast<std::size_t>(i)] / (r * r * r))
                .epsilon(1e-9));
  }
  // Interior: V = 1 (constant), F = 0.
  std::vector<double> inside = {0.2, -0.1, 0.3};
  FieldValue fi = field_surface(shell, inside, quad(24));
  CHECK(fi.value == doctest::Approx(1.0).epsilon(1e-11));
  for (double f : fi.force) CHECK(std::abs(f) < 1e-11);
}

TEST_CASE("planar and d=4 shells match their kernels") {
  EuclideanEllipsoid circle({1, 1});
  MassSurface ring = MassSurface::euclidean_homeoid(circle, 1.0);
  FieldValue v2 = potential_surface(ring, std::vector<double>{2.0, 0.0},
                                    quad(32));
  CHECK(v2.value == doctest::Approx(-std::log(2.0)).epsilon(1e-10));
  CHECK(potential_surface(ring, std::vector<double>{0.3, 0.2}, quad(32)).value ==
        doctest::Approx(0.0).epsilon(1e-10));

  EuclideanEllipsoid s4({1, 1, 1, 1});
  MassSurface shell4 = MassSurface::euclidean_homeoid(s4, 1.0);
  FieldValue v4 = potential_surface(shell4, std::vector<double>{0, 0, 0, 2},
                                    quad(24));
  CHECK(v4.value == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(potential_surface(shell4, std::vector<double>{0.2, 0.1, 0, 0},
                          quad(24))
            .value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("spherical equal-axes surface follows the piecewise cot law") {
  SphericalEllipsoid se(1, 1, 1, 1, Sheet::North);  // theta = pi/4
  MassSurface ms = MassSurface::spherical_homeoid(se, 1.0);
  // Cap point (near the north pole): V = M cot(theta) = 1.
  std::vector<double> cap = {0.1, 0, 0, std::sqrt(1 - 0.01)};
  CHECK(potential_surface(ms, cap, quad(32)).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  // Band point at polar angle alpha: V = M cot(alpha).
  const double alpha = 1.2;
  std::vector<double> band = {std::sin(alpha), 0, 0, std::cos(alpha)};
  CHECK(potential_surface(ms, band, quad(32)).value ==
        doctest::Approx(1.0 / std::tan(alpha)).epsilon(1e-9));
  // Antipodal cap: V = -M cot(theta).
  std::vector<double> anticap = {0.1, 0, 0, -std::sqrt(1 - 0.01)};
  CHECK(potential_surface(ms, anticap, quad(32)).value ==
        doctest::Approx(-1.0).epsilon(1e-9));

  // Both sheets with the symmetric density cancel exactly.
  SphericalEllipsoid both(1, 1, 1, 1, Sheet::Both);
  MassSurface msb = MassSurface::spherical_homeoid(both, 1.0);
  CHECK(std::abs(potential_surface(msb, band, quad(32)).value) < 1e-12);
}

TEST_CASE("homogeneous ball closed form outside; interior refused") {
  EuclideanEllipsoid ball({1, 1, 1});
  // Outside a uniform unit ball of mass 1: V = 1/r, F = -p/r^3 (G = 1).
  FieldValue outside = field_homogeneous_ellipsoid(
      ball, 1.0, std::vector<double>{0, 2.5, 0}, quad(16), 32);
  CHECK(outside.value == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(outside.force[1] == doctest::Approx(-0.16).epsilon(1e-8));
  CHECK(std::abs(outside.force[0]) < 1e-12);
  // The solid evaluator is exterior-only by contract.
  expect_errc(Errc::interior_point, [&] {
    field_homogeneous_ellipsoid(ball, 1.0, std::vector<double>{0.5, 0, 0},
                                quad(16), 32);
  });
  expect_errc(Errc::too_close_to_surface, [&] {
    field_homogeneous_ellipsoid(ball, 1.0,
                                std::vector<double>{1.0 + 1e-5, 0, 0},
                                quad(16), 32);
  });
}

TEST_CASE("thick homothetic shell matches a point mass outside") {
  EuclideanEllipsoid outer({1, 1, 1});
  ThickLayer layer = homothetic_layer(outer, 0.5, 1.0);
  CHECK(layer.inner.axis(0) == doctest::Approx(0.5));
  FieldValue out = field_thick_layer(layer, std::vector<double>{2.0, 0, 0},
                                     quad(16), 32);
  CHECK(out.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(out.force[0] == doctest::Approx(-0.25).epsilon(1e-8));
  // Points inside the cavity are interior to both bounding solids: refused.
  expect_errc(Errc::interior_point, [&] {
    field_thick_layer(layer, std::vector<double>{0.1, 0, 0}, quad(16), 32);
  });
}

TEST_CASE("confocal thick layer construction") {
  EuclideanEllipsoid base({3, 2, 1});
  ThickLayer layer = confocal_layer(base, 1.0, 0.5, 1.0);
  CHECK(layer.outer.axis(0) == doctest::Approx(std::sqrt(10.0)));
  CHECK(layer.inner.axis(0) == doctest::Approx(std::sqrt(9.5)));
  expect_errc(Errc::bad_parameter, [&] { confocal_layer(base, 0.5, 1.0, 1.0); });
  expect_errc(Errc::bad_parameter, [&] { homothetic_layer(base, 1.5, 1.0); });
}

TEST_CASE("refusals near singular sets") {
  EuclideanEllipsoid e({3, 2, 1});
  MassSurface ms = MassSurface::euclidean_homeoid(e, 1.0);
  // On the carrying surface: refused.
  expect_errc(Errc::too_close_to_surface, [&] {
    potential_surface(ms, std::vector<double>{3, 0, 0}, quad(16));
  });
  // Barely off the surface but inside min_sep: refused.
  expect_errc(Errc::too_close_to_surface, [&] {
    potential_surface(ms, std::vector<double>{3 + 1e-5, 0, 0}, quad(16));
  });

  SphericalEllipsoid se(1, 1, 1, 1, Sheet::North);
  MassSurface sms = MassSurface::spherical_homeoid(se, 1.0);
  auto on_surface = se.surface_point(std::vector<double>{1, 0, 0},
                                     Sheet::North);
  expect_errc(Errc::too_close_to_surface, [&] {
    potential_surface(sms, on_surface, quad(16));
  });
  // Antipode of a surface point: the kernel blows up there too.
  std::array<double, 4> anti = on_surface;
  for (double& x : anti) x = -x;
  expect_errc(Errc::too_close_to_antipode, [&] {
    potential_surface(sms, anti, quad(16));
  });
  expect_errc(Errc::not_on_sphere, [&] {
    potential_surface(sms, std::vector<double>{0.3, 0.3, 0.3, 0.3}, quad(16));
  });
}

TEST_CASE("separation_estimate is a sane lower-bound proxy") {
  EuclideanEllipsoid e({3, 2, 1});
  MassSurface ms = MassSurface::euclidean_homeoid(e, 1.0);
  CHECK(separation_estimate(ms, std::vector<double>{6, 0, 0}) ==
        doctest::Approx(3.0).epsilon(0.5));
  CHECK(separation_estimate(ms, std::vector<double>{3.0005, 0, 0}) <
        2e-3);
}

TEST_CASE("error estimates shrink under order doubling") {
  EuclideanEllipsoid e({3, 2, 1});
  MassSurface ms = MassSurface::euclidean_homeoid(e, 1.0);
  std::vector<double> p = {4.5, 1.0, 0.5};
  FieldValue coarse = potential_surface(ms, p, quad(8));
  FieldValue fine = potential_surface(ms, p, quad(16));
  REQUIRE(coarse.error > 0);
  REQUIRE(fine.error > 0);
  CHECK(fine.error < coarse.error);
  CHECK(std::abs(fine.value - coarse.value) < 10 * coarse.error);
}

TEST_CASE("Monte Carlo field agrees with Gauss within its own sigma") {
  EuclideanEllipsoid e({3, 2, 1});
  MassSurface ms = MassSurface::euclidean_homeoid(e, 1.0);
  std::vector<double> p = {4.5, 1.0, 0.5};
  FieldValue gauss = potential_surface(ms, p, quad(48));
  QuadratureSpec mc;
  mc.method = QuadMethod::MonteCarlo;
  mc.samples = 200000;
  mc.seed = 3;
  FieldValue est = potential_surface(ms, p, mc);
  REQUIRE(est.error > 0);
  CHECK(std::abs(est.value - gauss.value) < 4 * est.error);
}

TEST_CASE("force carries its own error estimate") {
  EuclideanEllipsoid e({3, 2, 1});
  MassSurface ms = MassSurface::euclidean_homeoid(e, 1.0);
  FieldValue fv = field_surface(ms, std::vector<double>{4.5, 1.0, 0.5},
                                quad(16));
  CHECK(fv.force.size() == 3);
  CHECK(fv.force_error >= 0);
  FieldValue v_only = potential_surface(ms, std::vector<double>{4.5, 1.0, 0.5},
                                        quad(16));
  CHECK(v_only.force.empty());
}

TEST_CASE("spherical force is tangent to the sphere") {
  SphericalEllipsoid se(2, 1, 1.5, 1, Sheet::North);
  MassSurface ms = MassSurface::spherical_homeoid(se, 1.0);
  const double alpha = 1.3;
  std::vector<double> q = {std::sin(alpha), 0, 0, std::cos(alpha)};
  FieldValue fv = field_surface(ms, q, quad(32));
  double dot = 0;
  for (int i = 0; i < 4; ++i)
    dot += fv.force[static_cast<std::size_t>(i)] *
           q[static_cast<std::size_t>(i)];
  CHECK(std::abs(dot) < 1e-12);
}
