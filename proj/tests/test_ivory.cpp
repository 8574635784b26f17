#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "confocal/geometry.hpp"
#include "confocal/ivory.hpp"
#include "confocal/rational.hpp"
#include "test_util.hpp"

using namespace confocal;
using testutil::expect_errc;

TEST_CASE("ivory_map ratios and inverse") {
  EuclideanEllipsoid e0({3, 2, 1});
  EuclideanEllipsoid e1 = confocal_shift(e0, 2.0);
  DiagonalMap m = ivory_map(e0, e1);
  CHECK(!m.spherical());
  CHECK(m.ambient_dim() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(m.ratios()[static_cast<std::size_t>(i)] ==
          doctest::Approx(e1.axis(i) / e0.axis(i)));
  DiagonalMap inv = inverse(m);
  std::vector<double> p = {1.1, -0.7, 0.3};
  auto round_trip = apply_map(inv, apply_map(m, p));
  for (int i = 0; i < 3; ++i)
    CHECK(round_trip[static_cast<std::size_t>(i)] ==
          doctest::Approx(p[static_cast<std::size_t>(i)]).epsilon(1e-14));
  expect_errc(Errc::not_confocal,
              [&] { ivory_map(e0, EuclideanEllipsoid({4, 3, 1})); });
}

TEST_CASE("apply_map strict mode") {
  EuclideanEllipsoid e0({3, 2, 1});
  EuclideanEllipsoid e1 = confocal_shift(e0, 1.0);
  DiagonalMap m = ivory_map(e0, e1);
  std::vector<double> u = {0.6, 0.8, 0.0};
  auto p0 = e0.surface_point(u);
  auto p1 = apply_map(m, p0, /*strict=*/true);
  CHECK(e1.witness(p1) == doctest::Approx(0.0).epsilon(1e-13));
  expect_errc(Errc::not_on_source, [&] {
    apply_map(m, std::vector<double>{5, 5, 5}, /*strict=*/true);
  });
}

TEST_CASE("chord identity in floating point on confocal pairs") {
  EuclideanEllipsoid e0({3, 2, 1});
  for (double gamma : {-0.9, -0.25, 0.5, 4.0}) {
    EuclideanEllipsoid e1 = confocal_shift(e0, gamma);
    std::vector<double> u1 = {0.48, 0.6, 0.64};
    std::vector<double> u2 = {-0.8, 0.36, 0.48};
    auto P0 = e0.surface_point(u1);
    auto X0 = e0.surface_point(u2);
    CHECK(chord_identity_residual(e0, e1, P0, X0) < 1e-13);
  }
}

TEST_CASE("spherical map identities in floating point") {
  SphericalEllipsoid s0(2, 1, 1.5, 1, Sheet::Both);
  for (double gamma : {-0.5, 0.3, 0.9}) {
    SphericalEllipsoid s1 = confocal_shift(s0, gamma);
    auto Q0 = s0.surface_point(std::vector<double>{0.6, 0.64, 0.48},
                               Sheet::North);
    auto X0 = s0.surface_point(std::vector<double>{-0.48, 0.6, 0.64},
                               Sheet::South);
    auto res = spherical_identity_residuals(s0, s1, Q0, X0);
    CHECK(res[0] < 1e-13);  // images on the target quadric
    CHECK(res[1] < 1e-13);  // images on the unit sphere
    CHECK(res[2] < 1e-13);  // chord symmetry
  }
}

TEST_CASE("spherical ivory_map endpoints") {
  SphericalEllipsoid s0(2, 1, 1.5, 1, Sheet::North);
  SphericalEllipsoid s1 = confocal_shift(s0, 0.4);
  DiagonalMap m = ivory_map(s0, s1);
  CHECK(m.spherical());
  CHECK(m.ambient_dim() == 4);
  CHECK(m.ratios()[3] == doctest::Approx(s1.h() / s0.h()));
  CHECK(m.spherical_source().a() == s0.a());
  CHECK(m.spherical_target().h() == s1.h());
  expect_errc(Errc::not_confocal,
              [&] { ivory_map(s0, SphericalEllipsoid(2, 1, 1, 1)); });
}

TEST_CASE("rational helpers are exact") {
  std::uint64_t state = 7;
  for (int i = 0; i < 50; ++i) {
    Rational r = random_rational(state, 12, false);
    CHECK(r != 0);
  }
  std::vector<Rational> seed = {Rational(3, 7), Rational(-2, 5), Rational(1)};
  auto u = rational_unit_vector(seed);
  Rational n2 = 0;
  for (const auto& v : u) n2 += v * v;
  CHECK(n2 == 1);

  RationalEllipsoid e =
      make_rational_ellipsoid({Rational(3), Rational(2), Rational(1)});
  auto p = rational_point_on_ellipsoid(e, seed);
  CHECK(rational_witness(e, p) == 0);
}

TEST_CASE("rational confocal pair is exactly confocal") {
  std::vector<Rational> t = {Rational(5, 2), Rational(3), Rational(7, 3)};
  Rational gamma(4, 3);
  RationalConfocalPair pair = make_rational_confocal_pair(t, gamma);
  CHECK(pair.gamma == gamma);
  for (int i = 0; i < 3; ++i) {
    const auto& a0 = pair.e0.axes[static_cast<std::size_t>(i)];
    const auto& a1 = pair.e1.axes[static_cast<std::size_t>(i)];
    CHECK(a0 * a0 - a1 * a1 == gamma);
    CHECK(a0 > 0);
    CHECK(a1 > 0);
  }
}

TEST_CASE("exact chord identity vanishes on random configurations") {
  // Property test over exact rational confocal pairs: the chord-identity
  // residual is identically zero, not merely small.
  std::uint64_t state = 20240817;
  for (int i = 0; i < 250; ++i) {
    Rational gamma = random_rational(state, 9, false);
    if (gamma < 0) gamma = -gamma;
    gamma += Rational(1, 3);
    std::vector<Rational> t(3);
    for (auto& ti : t) {
      Rational r = random_rational(state, 9, false);
      if (r < 0) r = -r;
      ti = gamma + 1 + r;
    }
    RationalConfocalPair pair = make_rational_confocal_pair(t, gamma);
    std::vector<Rational> s1(3), s2(3);
    for (auto& v : s1) v = random_rational(state, 9, true);
    for (auto& v : s2) v = random_rational(state, 9, true);
    bool z1 = true, z2 = true;
    for (const auto& v : s1) z1 = z1 && v == 0;
    for (const auto& v : s2) z2 = z2 && v == 0;
    if (z1) s1[0] = 1;
    if (z2) s2[1] = 1;
    auto P0 = rational_point_on_ellipsoid(pair.e0, s1);
    auto X0 = rational_point_on_ellipsoid(pair.e0, s2);
    CHECK(chord_identity_residual_exact(pair, P0, X0) == 0);
  }
}

TEST_CASE("to_double") {
  CHECK(to_double(Rational(1, 4)) == 0.25);
  CHECK(to_double(Rational(-7, 2)) == -3.5);
}
