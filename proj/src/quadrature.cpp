#include "confocal/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace confocal {

void validate_quadrature_spec(const QuadratureSpec& spec) {
  if (spec.method == QuadMethod::GaussProduct) {
    if (spec.order < 4 || spec.order % 2 != 0)
      fail(Errc::bad_parameter, "quadrature order must be even and >= 4");
  } else {
    if (spec.samples < 1000)
      fail(Errc::bad_parameter, "Monte Carlo sample count must be >= 1000");
  }
  if (!(spec.min_sep > 0)) fail(Errc::bad_parameter, "min_sep must be > 0");
  if (spec.refine < 2 || spec.refine > 8)
    fail(Errc::bad_parameter, "refinement factor must lie in [2, 8]");
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
  if (n < 1 || n > 4096) fail(Errc::bad_parameter, "Gauss-Legendre order out of range");
  static std::mutex mu;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi-style initial guess, then Newton on P_n.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = 0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    double wi = 2.0 / ((1 - z * z) * pp * pp);
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
  if (n % 2 == 1) x[static_cast<std::size_t>(n / 2)] = 0;
  auto [pos, inserted] = cache.emplace(n, std::make_pair(std::move(x), std::move(w)));
  return pos->second;
}

double sphere_area(int sphere_dim) {
  if (sphere_dim < 0) fail(Errc::bad_parameter, "negative sphere dimension");
  const double k = sphere_dim;
  return 2.0 * std::pow(M_PI, (k + 1) / 2.0) / std::tgamma((k + 1) / 2.0);
}

double ball_volume(int dim) {
  if (dim < 1) fail(Errc::bad_parameter, "ball dimension must be >= 1");
  return std::pow(M_PI, dim / 2.0) / std::tgamma(dim / 2.0 + 1);
}

namespace {

SphereRule build_circle_rule(int order) {
  SphereRule rule;
  rule.sphere_dim = 1;
  const int m = 2 * order;
  rule.nodes.reserve(static_cast<std::size_t>(2 * m));
  rule.weights.assign(static_cast<std::size_t>(m), 2.0 * M_PI / m);
  for (int l = 0; l < m; ++l) {
    double phi = 2.0 * M_PI * (l + 0.5) / m;
    rule.nodes.push_back(std::cos(phi));
    rule.nodes.push_back(std::sin(phi));
  }
  return rule;
}

SphereRule build_s2_rule(int order) {
  SphereRule rule;
  rule.sphere_dim = 2;
  const auto& [gx, gw] = gauss_legendre(order);
  const int m = 2 * order;
  rule.nodes.reserve(static_cast<std::size_t>(3 * order * m));
  rule.weights.reserve(static_cast<std::size_t>(order * m));
  for (int j = 0; j < order; ++j) {
    const double c = gx[static_cast<std::size_t>(j)];
    const double s = std::sqrt(std::max(0.0, 1 - c * c));
    const double wj = gw[static_cast<std::size_t>(j)] * M_PI / order;
    for (int l = 0; l < m; ++l) {
      double phi = 2.0 * M_PI * (l + 0.5) / m;
      rule.nodes.push_back(s * std::cos(phi));
      rule.nodes.push_back(s * std::sin(phi));
      rule.nodes.push_back(c);
      rule.weights.push_back(wj);
    }
  }
  return rule;
}

SphereRule build_s3_rule(int order) {
  SphereRule rule;
  rule.sphere_dim = 3;
  const auto& [gx, gw] = gauss_legendre(order);
  const int m = 2 * order;
  rule.nodes.reserve(static_cast<std::size_t>(4 * order * order * m));
  rule.weights.reserve(static_cast<std::size_t>(order * order * m));
  for (int i = 0; i < order; ++i) {
    // theta1 in (0, pi): u = (sin t1 * S2 direction, cos t1),
    // area element sin^2(t1) dt1 dS2.
    const double t1 = M_PI * (gx[static_cast<std::size_t>(i)] + 1) / 2;
    const double s1 = std::sin(t1);
    const double w1 = gw[static_cast<std::size_t>(i)] * (M_PI / 2) * s1 * s1;
    for (int j = 0; j < order; ++j) {
      const double c2 = gx[static_cast<std::size_t>(j)];
      const double s2 = std::sqrt(std::max(0.0, 1 - c2 * c2));
      const double w2 = gw[static_cast<std::size_t>(j)];
      for (int l = 0; l < m; ++l) {
        double phi = 2.0 * M_PI * (l + 0.5) / m;
        rule.nodes.push_back(s1 * s2 * std::cos(phi));
        rule.nodes.push_back(s1 * s2 * std::sin(phi));
        rule.nodes.push_back(s1 * c2);
        rule.nodes.push_back(std::cos(t1));
        rule.weights.push_back(w1 * w2 * M_PI / order);
      }
    }
  }
  return rule;
}

}  // namespace

const SphereRule& sphere_rule(int sphere_dim, int order) {
  if (order < 4 || order > 512) fail(Errc::bad_parameter, "sphere rule order out of range");
  if (sphere_dim < 1 || sphere_dim > 3)
    fail(Errc::bad_parameter,
         "product sphere rules cover S^1, S^2, S^3; use Monte Carlo beyond");
  static std::mutex mu;
  static std::map<std::pair<int, int>, SphereRule> cache;
  std::scoped_lock lock(mu);
  auto key = std::make_pair(sphere_dim, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  SphereRule rule;
  switch (sphere_dim) {
    case 1: rule = build_circle_rule(order); break;
    case 2: rule = build_s2_rule(order); break;
    default: rule = build_s3_rule(order); break;
  }
  auto [pos, inserted] = cache.emplace(key, std::move(rule));
  return pos->second;
}

}  // namespace confocal
