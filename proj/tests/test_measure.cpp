#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "confocal/measure.hpp"
#include "confocal/quadrature.hpp"
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

TEST_CASE("total_mass of Euclidean surfaces") {
  EuclideanEllipsoid e({3, 2, 1});
  for (double m : {1.0, 2.5}) {
    MassSurface homeoid = MassSurface::euclidean_homeoid(e, m);
    CHECK(homeoid.mass() == m);
    MassEstimate est = total_mass(homeoid, quad(32));
    CHECK(est.value == doctest::Approx(m).epsilon(1e-12));
  }
  MassSurface foc = MassSurface::focaloid(e, 1.5, 2.0);
  MassEstimate est = total_mass(foc, quad(48));
  CHECK(est.value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(est.error < 1e-8);
}

TEST_CASE("total_mass of spherical homeoids, both sheet conventions") {
  SphericalEllipsoid both(2, 1, 1.5, 1, Sheet::Both);
  SphericalEllipsoid north(2, 1, 1.5, 1, Sheet::North);
  MassEstimate mb = total_mass(MassSurface::spherical_homeoid(both, 1.0),
                               quad(48));
  MassEstimate mn = total_mass(MassSurface::spherical_homeoid(north, 1.0),
                               quad(48));
  CHECK(mb.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mn.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("homeoid weight is uniform in the parameter sphere") {
  // The homeoid distribution is the affine image of the uniform sphere, so
  // its u-space weight is the constant M / |S^{d-1}|.
  EuclideanEllipsoid e({3, 2, 1});
  MassSurface ms = MassSurface::euclidean_homeoid(e, 2.0);
  const double expected = 2.0 / sphere_area(2);
  for (std::vector<double> u :
       {std::vector<double>{1, 0, 0}, std::vector<double>{0.6, 0.8, 0.0},
        std::vector<double>{0.48, 0.6, 0.64}}) {
    CHECK(ms.weight(u) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("focaloid weight is not uniform and point_at hits the carrier") {
  EuclideanEllipsoid base({3, 2, 1});
  MassSurface foc = MassSurface::focaloid(base, 1.0, 1.0);
  std::vector<double> u_pole = {0, 0, 1};
  std::vector<double> u_long = {1, 0, 0};
  CHECK(foc.weight(u_pole) > 0);
  CHECK(foc.weight(u_long) > 0);
  CHECK(foc.weight(u_pole) != doctest::Approx(foc.weight(u_long)));

  EuclideanEllipsoid carrier = foc.euclidean_carrier();
  CHECK(carrier.axis(0) == doctest::Approx(std::sqrt(10.0)));
  auto p = foc.point_at(std::vector<double>{0.6, 0.8, 0.0});
  CHECK(classify(carrier, p).region == Region::Surface);
}

TEST_CASE("spherical point_at lands on the selected sheet") {
  SphericalEllipsoid se(2, 1, 1.5, 1, Sheet::Both);
  MassSurface ms = MassSurface::spherical_homeoid(se, 1.0);
  auto pn = ms.point_at(std::vector<double>{0.6, 0.8, 0.0}, Sheet::North);
  auto ps = ms.point_at(std::vector<double>{0.6, 0.8, 0.0}, Sheet::South);
  CHECK(pn[3] > 0);
  CHECK(ps[3] < 0);
  CHECK(se.f(pn) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("homeoid density matches the cone-volume oracle") {
  EuclideanEllipsoid e({3, 2, 1});
  MassSurface ms = MassSurface::euclidean_homeoid(e, 1.0);
  auto region = [](std::span<const double> u) { return u[0] > 0.3; };
  // The integrand is an indicator, so the product rule is only first-order
  // accurate here; allow for that on top of the Monte Carlo band.
  MassEstimate direct = region_mass_fraction(ms, region, quad(128));
  MassEstimate mc = cone_volume_oracle(e, region, 400000, 99);
  REQUIRE(mc.error > 0);
  CHECK(std::abs(direct.value - mc.value) < 3.5 * mc.error + 5e-3);
  // The exact fraction for the cap u_x > 0.3 of the uniform sphere measure
  // is (1 - 0.3) / 2 = 0.35.
  CHECK(direct.value == doctest::Approx(0.35).epsilon(5e-3));
  CHECK(std::abs(mc.value - 0.35) < 3.5 * mc.error);
}

TEST_CASE("spherical density matches the thin-shell oracle") {
  SphericalEllipsoid se(2, 1, 1.5, 1, Sheet::Both);
  MassSurface ms = MassSurface::spherical_homeoid(se, 1.0);
  auto region = [](std::span<const double> x) { return x[0] + x[1] > 0; };
  MassEstimate direct = region_mass_fraction(ms, region, quad(128));
  MassEstimate mc = thin_shell_oracle(se, region, 5e-3, 5e-3, 400000, 7);
  REQUIRE(mc.error > 0);
  CHECK(std::abs(direct.value - mc.value) < 3.5 * mc.error + 5e-3);
  // x -> -x is a symmetry of the surface and of the density (both sheets
  // included), and it maps the region to its complement: the exact
  // fraction is 1/2.
  CHECK(direct.value == doctest::Approx(0.5).epsilon(5e-3));
}

TEST_CASE("factory validation") {
  EuclideanEllipsoid e({3, 2, 1});
  expect_errc(Errc::bad_parameter,
              [&] { MassSurface::euclidean_homeoid(e, 0.0); });
  expect_errc(Errc::bad_parameter,
              [&] { MassSurface::euclidean_homeoid(e, -1.0); });
  // The focaloid carrier must exist: lambda must stay above -min axis^2.
  expect_errc(Errc::shift_too_negative,
              [&] { MassSurface::focaloid(e, -1.5, 1.0); });
  MassSurface foc = MassSurface::focaloid(e, -0.5, 1.0);
  CHECK(foc.kind() == SurfaceKind::Focaloid);
  expect_errc(Errc::wrong_kind, [&] { foc.euclidean(); });
}

TEST_CASE("kind accessors guard against the wrong variant") {
  EuclideanEllipsoid e({3, 2, 1});
  MassSurface hom = MassSurface::euclidean_homeoid(e, 1.0);
  CHECK(hom.kind() == SurfaceKind::Homeoid);
  CHECK(!hom.is_spherical());
  CHECK(hom.ambient_dim() == 3);
  CHECK(hom.parameter_dim() == 2);
  expect_errc(Errc::wrong_kind, [&] { hom.spherical(); });
  expect_errc(Errc::wrong_kind, [&] { hom.focaloid_surface(); });

  SphericalEllipsoid se(1, 1, 1, 1);
  MassSurface sph = MassSurface::spherical_homeoid(se, 1.0);
  CHECK(sph.is_spherical());
  CHECK(sph.ambient_dim() == 4);
  CHECK(sph.parameter_dim() == 2);
  expect_errc(Errc::wrong_kind, [&] { sph.euclidean_carrier(); });
}

TEST_CASE("Monte Carlo total mass converges with a standard error") {
  EuclideanEllipsoid e({3, 2, 1});
  QuadratureSpec q;
  q.method = QuadMethod::MonteCarlo;
  q.samples = 100000;
  q.seed = 5;

  // The homeoid weight is constant in the u-parameter, so the Monte Carlo
  // estimator has zero variance: exact value, zero reported error.
  MassEstimate est = total_mass(MassSurface::euclidean_homeoid(e, 1.0), q);
  CHECK(est.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.error == doctest::Approx(0.0));

  // A focaloid weight varies over the carrier, so the error is a genuine
  // standard error and the estimate lands within a few sigma of the mass.
  MassEstimate foc = total_mass(MassSurface::focaloid(e, 1.5, 2.0), q);
  REQUIRE(foc.error > 0);
  CHECK(std::abs(foc.value - 2.0) < 4 * foc.error);
}
