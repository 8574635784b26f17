#include "confocal/measure.hpp"

#include <algorithm>
#include <cmath>

#include "confocal/rng.hpp"

namespace confocal {

namespace {

/// Unnormalized surface mass density of the level-set pair {f=0, g=1} in the
/// u-parametrization: the Riemannian area scale of u -> P(u) times the
/// coarea (Gelfand-Leray) factor 1 / sqrt(|grad f|^2 |grad g|^2 - (grad f .
/// grad g)^2) at P(u). Even in the sheet sign, so the north sheet stands in
/// for either.
double spherical_density_raw(const SphericalEllipsoid& se,
                             std::span<const double> u) {
  const double a = se.a(), b = se.b(), c = se.c(), h = se.h();
  const double d1 = a * u[0], d2 = b * u[1], d3 = c * u[2];
  const double r2inv = h * h + a * d1 * u[0] + b * d2 * u[1] + c * d3 * u[2];
  const double r = 1.0 / std::sqrt(r2inv);
  const std::array<double, 4> P = {r * d1, r * d2, r * d3, r * h};

  // Jacobian of the (smoothly extended) map u -> P(u), columns d/du_j.
  // dr/du_j = -r^3 * axis_j^2 * u_j.
  const std::array<double, 3> axes = {a, b, c};
  std::array<std::array<double, 3>, 4> J{};  // J[i][j] = dP_i/du_j
  for (int j = 0; j < 3; ++j) {
    const std::size_t ju = static_cast<std::size_t>(j);
    const double drdu = -r * r * r * axes[ju] * axes[ju] * u[ju];
    for (int i = 0; i < 3; ++i) {
      const std::size_t iu = static_cast<std::size_t>(i);
      J[iu][ju] = drdu * axes[iu] * u[iu];
      if (i == j) J[iu][ju] += r * axes[iu];
    }
    J[3][ju] = drdu * h;
  }

  // Orthonormal tangent basis of S^2 at u via the axis least aligned with u.
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(u[static_cast<std::size_t>(i)]) <
        std::abs(u[static_cast<std::size_t>(k)]))
      k = i;
  std::array<double, 3> v1{}, v2{};
  v1[static_cast<std::size_t>(k)] = 1;
  double dot = u[static_cast<std::size_t>(k)];
  double n1 = 0;
  for (int i = 0; i < 3; ++i) {
    std::size_t iu = static_cast<std::size_t>(i);
    v1[iu] -= dot * u[iu];
    n1 += v1[iu] * v1[iu];
  }
  n1 = std::sqrt(n1);
  for (double& x : v1) x /= n1;
  v2 = {u[1] * v1[2] - u[2] * v1[1], u[2] * v1[0] - u[0] * v1[2],
        u[0] * v1[1] - u[1] * v1[0]};

  std::array<double, 4> t1{}, t2{};
  for (int i = 0; i < 4; ++i) {
    std::size_t iu = static_cast<std::size_t>(i);
    for (int j = 0; j < 3; ++j) {
      std::size_t ju = static_cast<std::size_t>(j);
      t1[iu] += J[iu][ju] * v1[ju];
      t2[iu] += J[iu][ju] * v2[ju];
    }
  }
  const double g11 = t1[0] * t1[0] + t1[1] * t1[1] + t1[2] * t1[2] + t1[3] * t1[3];
  const double g22 = t2[0] * t2[0] + t2[1] * t2[1] + t2[2] * t2[2] + t2[3] * t2[3];
  const double g12 = t1[0] * t2[0] + t1[1] * t2[1] + t1[2] * t2[2] + t1[3] * t2[3];
  const double area_scale = std::sqrt(std::max(0.0, g11 * g22 - g12 * g12));

  const auto gf = se.f_gradient(P);
  const std::array<double, 4> gg = {2 * P[0], 2 * P[1], 2 * P[2], 2 * P[3]};
  double ff = 0, gg2 = 0, fg = 0;
  for (int i = 0; i < 4; ++i) {
    std::size_t iu = static_cast<std::size_t>(i);
    ff += gf[iu] * gf[iu];
    gg2 += gg[iu] * gg[iu];
    fg += gf[iu] * gg[iu];
  }
  const double gram = ff * gg2 - fg * fg;
  return area_scale / std::sqrt(std::max(gram, 1e-300));
}

struct ParamIntegral {
  double value = 0;
  double error = 0;
};

/// Integral over the u-parameter sphere S^k with the configured method;
/// error from order doubling (refine factor) or the Monte Carlo standard
/// error.
ParamIntegral integrate_param_sphere(
    int sphere_dim, const QuadratureSpec& quad,
    const std::function<double(std::span<const double>)>& fn) {
  validate_quadrature_spec(quad);
  if (quad.method == QuadMethod::GaussProduct) {
    if (sphere_dim > 3)
      fail(Errc::quadrature_failure,
           "product rules cover parameter spheres up to S^3; use Monte Carlo");
    auto run = [&](int order) {
      const SphereRule& rule = sphere_rule(sphere_dim, order);
      KahanSum sum;
      for (std::size_t i = 0; i < rule.count(); ++i)
        sum.add(rule.weights[i] * fn(rule.node(i)));
      return sum.value();
    };
    const double coarse = run(quad.order);
    const double fine = run(quad.order * quad.refine);
    return {fine, std::abs(fine - coarse)};
  }
  CounterRng rng(quad.seed, /*stream=*/0x5bd1e995u);
  const std::int64_t n = quad.samples;
  const double area = sphere_area(sphere_dim);
  std::vector<double> u(static_cast<std::size_t>(sphere_dim + 1));
  KahanSum sum, sum2;
  for (std::int64_t i = 0; i < n; ++i) {
    rng.unit_vector(static_cast<std::uint64_t>(i), u);
    const double v = fn(u);
    sum.add(v);
    sum2.add(v * v);
  }
  const double mean = sum.value() / static_cast<double>(n);
  const double var =
      std::max(0.0, sum2.value() / static_cast<double>(n) - mean * mean);
  return {area * mean,
          area * std::sqrt(var / static_cast<double>(std::max<std::int64_t>(n - 1, 1)))};
}

}  // namespace

MassSurface MassSurface::euclidean_homeoid(EuclideanEllipsoid e, double mass) {
  if (!(mass > 0)) fail(Errc::bad_parameter, "total mass must be > 0");
  MassSurface ms;
  ms.kind_ = SurfaceKind::Homeoid;
  ms.mass_ = mass;
  ms.norm_ = mass / sphere_area(e.dim() - 1);
  ms.surface_ = std::move(e);
  return ms;
}

MassSurface MassSurface::spherical_homeoid(SphericalEllipsoid se, double mass) {
  if (!(mass > 0)) fail(Errc::bad_parameter, "total mass must be > 0");
  MassSurface ms;
  ms.kind_ = SurfaceKind::Homeoid;
  ms.mass_ = mass;
  // Normalization constant from a fixed high-order quadrature of the raw
  // density over one sheet (the density is even in the sheet sign).
  const SphereRule& rule = sphere_rule(2, 96);
  KahanSum sum;
  for (std::size_t i = 0; i < rule.count(); ++i)
    sum.add(rule.weights[i] * spherical_density_raw(se, rule.node(i)));
  const double per_sheet = sum.value();
  const double covered = (se.sheet() == Sheet::Both) ? 2 * per_sheet : per_sheet;
  ms.norm_ = mass / covered;
  ms.surface_ = std::move(se);
  return ms;
}

MassSurface MassSurface::focaloid(EuclideanEllipsoid base, double lambda,
                                  double mass) {
  if (!(mass > 0)) fail(Errc::bad_parameter, "total mass must be > 0");
  FocaloidSurface fs{std::move(base), lambda};
  EuclideanEllipsoid carrier = fs.carrier();  // validates the shift
  // weight(u) = norm * sum_i u_i^2/alpha_i^2, and the exact integral of
  // sum u_i^2/alpha_i^2 over S^{d-1} is area/d * sum 1/alpha_i^2.
  double inv2 = 0;
  for (int i = 0; i < carrier.dim(); ++i)
    inv2 += 1.0 / (carrier.axis(i) * carrier.axis(i));
  MassSurface ms;
  ms.kind_ = SurfaceKind::Focaloid;
  ms.mass_ = mass;
  ms.norm_ = mass * carrier.dim() / (sphere_area(carrier.dim() - 1) * inv2);
  ms.surface_ = fs;
  return ms;
}

bool MassSurface::is_spherical() const {
  return std::holds_alternative<SphericalEllipsoid>(surface_);
}

int MassSurface::ambient_dim() const {
  if (is_spherical()) return 4;
  return euclidean_carrier().dim();
}

int MassSurface::parameter_dim() const {
  return is_spherical() ? 2 : euclidean_carrier().dim() - 1;
}

const EuclideanEllipsoid& MassSurface::euclidean() const {
  if (!std::holds_alternative<EuclideanEllipsoid>(surface_))
    fail(Errc::wrong_kind, "not a Euclidean homeoid");
  return std::get<EuclideanEllipsoid>(surface_);
}

const SphericalEllipsoid& MassSurface::spherical() const {
  if (!std::holds_alternative<SphericalEllipsoid>(surface_))
    fail(Errc::wrong_kind, "not a spherical homeoid");
  return std::get<SphericalEllipsoid>(surface_);
}

const FocaloidSurface& MassSurface::focaloid_surface() const {
  if (!std::holds_alternative<FocaloidSurface>(surface_))
    fail(Errc::wrong_kind, "not a focaloid");
  return std::get<FocaloidSurface>(surface_);
}

EuclideanEllipsoid MassSurface::euclidean_carrier() const {
  if (std::holds_alternative<EuclideanEllipsoid>(surface_))
    return std::get<EuclideanEllipsoid>(surface_);
  if (std::holds_alternative<FocaloidSurface>(surface_))
    return std::get<FocaloidSurface>(surface_).carrier();
  fail(Errc::wrong_kind, "spherical surfaces have no Euclidean carrier");
}

Sheet MassSurface::sheet() const {
  return is_spherical() ? std::get<SphericalEllipsoid>(surface_).sheet()
                     : Sheet::Both;
}

std::vector<double> MassSurface::point_at(std::span<const double> u,
                                          Sheet sheet) const {
  if (is_spherical()) {
    const auto& se = std::get<SphericalEllipsoid>(surface_);
    const Sheet s = (se.sheet() == Sheet::Both) ? sheet : se.sheet();
    auto p = se.surface_point(u, s);
    return {p.begin(), p.end()};
  }
  return euclidean_carrier().surface_point(u);
}

double MassSurface::weight(std::span<const double> u) const {
  if (is_spherical())
    return norm_ * spherical_density_raw(std::get<SphericalEllipsoid>(surface_), u);
  if (kind_ == SurfaceKind::Homeoid) return norm_;
  EuclideanEllipsoid carrier = euclidean_carrier();
  double s = 0;
  for (int i = 0; i < carrier.dim(); ++i) {
    std::size_t k = static_cast<std::size_t>(i);
    s += u[k] * u[k] / (carrier.axis(i) * carrier.axis(i));
  }
  return norm_ * s;
}

MassEstimate total_mass(const MassSurface& ms, const QuadratureSpec& quad) {
  auto r = integrate_param_sphere(
      ms.parameter_dim(), quad,
      [&](std::span<const double> u) { return ms.weight(u); });
  const double factor = (ms.is_spherical() && ms.sheet() == Sheet::Both) ? 2.0 : 1.0;
  return {factor * r.value, factor * r.error};
}

MassEstimate cone_volume_oracle(
    const EuclideanEllipsoid& e,
    const std::function<bool(std::span<const double>)>& region,
    std::int64_t samples, std::uint64_t seed) {
  if (samples < 1000) fail(Errc::bad_parameter, "need at least 1000 samples");
  const int d = e.dim();
  CounterRng rng(seed, /*stream=*/0xc0e1u);
  std::vector<double> b(static_cast<std::size_t>(d));
  std::vector<double> u(static_cast<std::size_t>(d));
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    // Uniform point of the unit ball by rejection from the cube; its
    // direction is the cone parameter (the affine map to the ellipsoid
    // preserves volume fractions and radial cones in parameter space).
    double n2 = 0;
    std::uint64_t attempt = 0;
    do {
      n2 = 0;
      for (int k = 0; k < d; ++k) {
        std::size_t idx = static_cast<std::size_t>(k);
        b[idx] = 2 * rng.uniform(static_cast<std::uint64_t>(i) * 4096 +
                                 attempt * static_cast<std::uint64_t>(d) +
                                 static_cast<std::uint64_t>(k)) -
                 1;
        n2 += b[idx] * b[idx];
      }
      ++attempt;
    } while ((n2 > 1.0 || n2 == 0.0) && attempt < 1024);
    const double inv = 1.0 / std::sqrt(n2);
    for (int k = 0; k < d; ++k) {
      std::size_t idx = static_cast<std::size_t>(k);
      u[idx] = b[idx] * inv;
    }
    if (region(u)) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p, std::sqrt(std::max(p * (1 - p), 1.0 / static_cast<double>(samples)) /
                       static_cast<double>(samples))};
}

MassEstimate thin_shell_oracle(
    const SphericalEllipsoid& se,
    const std::function<bool(std::span<const double>)>& region, double eps,
    double delta, std::int64_t samples, std::uint64_t seed) {
  if (!(eps > 0) || !(delta > 0) || delta >= 1)
    fail(Errc::bad_parameter, "thin-shell thicknesses must lie in (0,1)");
  if (samples < 1000) fail(Errc::bad_parameter, "need at least 1000 samples");
  CounterRng rng(seed, /*stream=*/0x7511e11u);
  // Uniform samples of the annulus {|g-1| < delta} in R^4: uniform direction
  // times radius with density r^3 (so r^4 uniform over the allowed band).
  const double r4lo = (1 - delta) * (1 - delta);
  const double r4hi = (1 + delta) * (1 + delta);
  std::vector<double> w(4);
  std::array<double, 4> x{};
  std::int64_t in_shell = 0, in_region = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    rng.unit_vector(static_cast<std::uint64_t>(i) * 2 + 1, w);
    const double t = rng.uniform(static_cast<std::uint64_t>(i) * 2);
    const double r = std::pow(r4lo + t * (r4hi - r4lo), 0.25);
    for (int k = 0; k < 4; ++k) {
      std::size_t idx = static_cast<std::size_t>(k);
      x[idx] = r * w[idx];
    }
    if (std::abs(se.f(x)) >= eps) continue;
    ++in_shell;
    if (region(x)) ++in_region;
  }
  if (in_shell < 32)
    fail(Errc::quadrature_failure, "thin-shell acceptance too low; widen eps/delta");
  const double p = static_cast<double>(in_region) / static_cast<double>(in_shell);
  return {p, std::sqrt(std::max(p * (1 - p), 1.0 / static_cast<double>(in_shell)) /
                       static_cast<double>(in_shell))};
}

MassEstimate region_mass_fraction(
    const MassSurface& ms,
    const std::function<bool(std::span<const double>)>& region,
    const QuadratureSpec& quad) {
  if (!ms.is_spherical()) {
    auto r = integrate_param_sphere(
        ms.parameter_dim(), quad, [&](std::span<const double> u) {
          return region(u) ? ms.weight(u) : 0.0;
        });
    return {r.value / ms.mass(), r.error / ms.mass()};
  }
  // Spherical: fraction over both sheets, predicate on the ambient point.
  const auto& se = ms.spherical();
  auto r = integrate_param_sphere(2, quad, [&](std::span<const double> u) {
    const double w = ms.weight(u);
    double s = 0;
    for (Sheet sh : {Sheet::North, Sheet::South}) {
      auto p = se.surface_point(u, sh);
      if (region(p)) s += w;
    }
    return s;
  });
  // Normalize against the both-sheet total regardless of ms's own sheet.
  const double total = (ms.sheet() == Sheet::Both) ? ms.mass() : 2 * ms.mass();
  return {r.value / total, r.error / total};
}

}  // namespace confocal
