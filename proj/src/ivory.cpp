#include "confocal/ivory.hpp"

#include <cmath>

namespace confocal {

namespace {

constexpr double kConfocalTol = 1e-12;

std::vector<double> ratios_of(const EuclideanEllipsoid& s,
                              const EuclideanEllipsoid& t) {
  std::vector<double> r(static_cast<std::size_t>(s.dim()));
  for (int i = 0; i < s.dim(); ++i)
    r[static_cast<std::size_t>(i)] = t.axis(i) / s.axis(i);
  return r;
}

std::vector<double> ratios_of(const SphericalEllipsoid& s,
                              const SphericalEllipsoid& t) {
  return {t.a() / s.a(), t.b() / s.b(), t.c() / s.c(), t.h() / s.h()};
}

}  // namespace

DiagonalMap::DiagonalMap(EuclideanEllipsoid source, EuclideanEllipsoid target,
                         std::vector<double> ratios)
    : ratios_(std::move(ratios)),
      endpoints_(std::make_pair(std::move(source), std::move(target))) {}

DiagonalMap::DiagonalMap(SphericalEllipsoid source, SphericalEllipsoid target,
                         std::vector<double> ratios)
    : ratios_(std::move(ratios)),
      endpoints_(std::make_pair(std::move(source), std::move(target))) {}

bool DiagonalMap::spherical() const { return endpoints_.index() == 1; }

const EuclideanEllipsoid& DiagonalMap::euclidean_source() const {
  return std::get<0>(endpoints_).first;
}
const EuclideanEllipsoid& DiagonalMap::euclidean_target() const {
  return std::get<0>(endpoints_).second;
}
const SphericalEllipsoid& DiagonalMap::spherical_source() const {
  return std::get<1>(endpoints_).first;
}
const SphericalEllipsoid& DiagonalMap::spherical_target() const {
  return std::get<1>(endpoints_).second;
}

DiagonalMap ivory_map(const EuclideanEllipsoid& source,
                      const EuclideanEllipsoid& target) {
  if (!confocal_gamma(source, target, kConfocalTol))
    fail(Errc::not_confocal, "no common squared-axis shift relates the quadrics");
  return DiagonalMap(source, target, ratios_of(source, target));
}

DiagonalMap ivory_map(const SphericalEllipsoid& source,
                      const SphericalEllipsoid& target) {
  if (!confocal_gamma(source, target, kConfocalTol))
    fail(Errc::not_confocal, "no common parameter shift relates the quadrics");
  return DiagonalMap(source, target, ratios_of(source, target));
}

DiagonalMap inverse(const DiagonalMap& m) {
  if (m.spherical()) return ivory_map(m.spherical_target(), m.spherical_source());
  return ivory_map(m.euclidean_target(), m.euclidean_source());
}

std::vector<double> apply_map(const DiagonalMap& m, std::span<const double> p,
                              bool strict) {
  if (static_cast<int>(p.size()) != m.ambient_dim())
    fail(Errc::bad_parameter, "point dimension mismatch");
  if (strict) {
    const double w = m.spherical() ? m.spherical_source().f(p)
                                   : m.euclidean_source().witness(p);
    if (std::abs(w) > kSurfaceTol)
      fail(Errc::not_on_source, "point does not lie on the source quadric");
  }
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = m.ratios()[i] * p[i];
  return q;
}

double chord_identity_residual(const EuclideanEllipsoid& e0,
                       const EuclideanEllipsoid& e1,
                       std::span<const double> P0,
                       std::span<const double> X0) {
  DiagonalMap m = ivory_map(e0, e1);
  if (std::abs(e0.witness(P0)) > kSurfaceTol ||
      std::abs(e0.witness(X0)) > kSurfaceTol)
    fail(Errc::not_on_source, "both points must lie on the source quadric");
  double lhs = 0, rhs = 0;
  for (int i = 0; i < e0.dim(); ++i) {
    std::size_t k = static_cast<std::size_t>(i);
    double d1 = P0[k] - m.ratios()[k] * X0[k];
    double d2 = m.ratios()[k] * P0[k] - X0[k];
    lhs += d1 * d1;
    rhs += d2 * d2;
  }
  return std::abs(lhs - rhs) / std::max({lhs, rhs, 1e-300});
}

std::array<double, 3> spherical_identity_residuals(const SphericalEllipsoid& se0,
                                       const SphericalEllipsoid& se1,
                                       std::span<const double> Q0,
                                       std::span<const double> X0) {
  DiagonalMap m = ivory_map(se0, se1);
  for (auto* pt : {&Q0, &X0}) {
    double g = 0;
    for (double v : *pt) g += v * v;
    if (std::abs(g - 1) > 1e-12) fail(Errc::not_on_sphere, "input not on S^3");
    if (std::abs(se0.f(*pt)) > 1e-12)
      fail(Errc::not_on_source, "input not on the source quadric");
  }
  auto Q1 = apply_map(m, Q0);
  auto X1 = apply_map(m, X0);
  double resA = std::max(std::abs(se1.f(Q1)), std::abs(se1.f(X1)));
  double gQ = 0, gX = 0;
  for (int i = 0; i < 4; ++i) {
    std::size_t k = static_cast<std::size_t>(i);
    gQ += Q1[k] * Q1[k];
    gX += X1[k] * X1[k];
  }
  double resB = std::max(std::abs(gQ - 1), std::abs(gX - 1));
  double lhs = 0, rhs = 0;
  for (int i = 0; i < 4; ++i) {
    std::size_t k = static_cast<std::size_t>(i);
    double d1 = X1[k] - Q0[k];
    double d2 = Q1[k] - X0[k];
    lhs += d1 * d1;
    rhs += d2 * d2;
  }
  double resC = std::abs(lhs - rhs) / std::max({lhs, rhs, 1e-300});
  return {resA, resB, resC};
}

}  // namespace confocal
