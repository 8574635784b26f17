#include "confocal/potential.hpp"

#include <algorithm>
#include <cmath>

#include "confocal/rng.hpp"

namespace confocal {

namespace {

double norm2(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
}

struct NodeField {
  double V = 0;
  std::array<double, 4> F{};  // first `dim` entries used
};

/// Kernel contribution (potential and, if wanted, force) of a unit mass at
/// source x felt at p.
NodeField kernel_node(bool spherical, int dim, std::span<const double> x,
                      std::span<const double> p, bool want_force) {
  NodeField out;
  if (spherical) {
    double c = 0;
    for (int i = 0; i < 4; ++i)
      c += x[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
    c = std::clamp(c, -1.0, 1.0);
    const double s2 = std::max(1.0 - c * c, 1e-300);
    const double s = std::sqrt(s2);
    out.V = c / s;
    if (want_force) {
      const double inv3 = 1.0 / (s2 * s);
      for (int i = 0; i < 4; ++i) {
        std::size_t k = static_cast<std::size_t>(i);
        out.F[k] = (x[k] - c * p[k]) * inv3;
      }
    }
    return out;
  }
  double r2 = 0;
  for (int i = 0; i < dim; ++i) {
    std::size_t k = static_cast<std::size_t>(i);
    const double d = x[k] - p[k];
    r2 += d * d;
  }
  const double r = std::sqrt(r2);
  double fscale = 0;
  if (dim == 2) {
    out.V = -std::log(r);
    fscale = 1.0 / r2;  // F = (x - p)/r^2
  } else if (dim == 3) {
    out.V = 1.0 / r;
    fscale = 1.0 / (r2 * r);
  } else {
    out.V = std::pow(r, 2 - dim);
    fscale = (dim - 2) * std::pow(r, -dim);
  }
  if (want_force)
    for (int i = 0; i < dim; ++i) {
      std::size_t k = static_cast<std::size_t>(i);
      out.F[k] = (x[k] - p[k]) * fscale;
    }
  return out;
}

struct PassResult {
  double V = 0;
  std::array<double, 4> F{};
};

/// One quadrature pass over the mass surface at a fixed rule order.
PassResult surface_pass(const MassSurface& ms, std::span<const double> p,
                        int order, bool want_force) {
  const bool sph = ms.is_spherical();
  const int dim = ms.ambient_dim();
  const SphereRule& rule = sphere_rule(ms.parameter_dim(), order);
  KahanSum V;
  std::array<KahanSum, 4> F;
  const bool both = sph && ms.sheet() == Sheet::Both;
  const Sheet first = sph ? (ms.sheet() == Sheet::Both ? Sheet::North : ms.sheet())
                          : Sheet::North;
  for (std::size_t i = 0; i < rule.count(); ++i) {
    auto u = rule.node(i);
    const double w = rule.weights[i] * ms.weight(u);
    auto x = ms.point_at(u, first);
    NodeField nf = kernel_node(sph, dim, x, p, want_force);
    V.add(w * nf.V);
    if (want_force)
      for (int k = 0; k < dim; ++k)
        F[static_cast<std::size_t>(k)].add(w * nf.F[static_cast<std::size_t>(k)]);
    if (both) {
      auto xs = ms.point_at(u, Sheet::South);
      NodeField ns = kernel_node(sph, dim, xs, p, want_force);
      V.add(w * ns.V);
      if (want_force)
        for (int k = 0; k < dim; ++k)
          F[static_cast<std::size_t>(k)].add(w * ns.F[static_cast<std::size_t>(k)]);
    }
  }
  PassResult out;
  out.V = V.value();
  for (int k = 0; k < dim; ++k)
    out.F[static_cast<std::size_t>(k)] = F[static_cast<std::size_t>(k)].value();
  return out;
}

PassResult surface_pass_mc(const MassSurface& ms, std::span<const double> p,
                           const QuadratureSpec& quad, bool want_force,
                           double* V_err, double* F_err) {
  const bool sph = ms.is_spherical();
  const int dim = ms.ambient_dim();
  const int pdim = ms.parameter_dim();
  const double area = sphere_area(pdim);
  CounterRng rng(quad.seed, /*stream=*/0xf1e1du);
  std::vector<double> u(static_cast<std::size_t>(pdim + 1));
  const bool both = sph && ms.sheet() == Sheet::Both;
  const Sheet first = sph ? (ms.sheet() == Sheet::Both ? Sheet::North : ms.sheet())
                          : Sheet::North;
  KahanSum V, V2;
  std::array<KahanSum, 4> F, F2;
  const std::int64_t n = quad.samples;
  for (std::int64_t i = 0; i < n; ++i) {
    rng.unit_vector(static_cast<std::uint64_t>(i), u);
    const double w = ms.weight(u);
    auto x = ms.point_at(u, first);
    NodeField nf = kernel_node(sph, dim, x, p, want_force);
    double v = w * nf.V;
    std::array<double, 4> f{};
    for (int k = 0; k < dim; ++k)
      f[static_cast<std::size_t>(k)] = w * nf.F[static_cast<std::size_t>(k)];
    if (both) {
      auto xs = ms.point_at(u, Sheet::South);
      NodeField ns = kernel_node(sph, dim, xs, p, want_force);
      v += w * ns.V;
      for (int k = 0; k < dim; ++k)
        f[static_cast<std::size_t>(k)] += w * ns.F[static_cast<std::size_t>(k)];
    }
    V.add(v);
    V2.add(v * v);
    if (want_force)
      for (int k = 0; k < dim; ++k) {
        std::size_t ks = static_cast<std::size_t>(k);
        F[ks].add(f[ks]);
        F2[ks].add(f[ks] * f[ks]);
      }
  }
  auto mc_stats = [&](const KahanSum& s, const KahanSum& s2, double* mean,
                      double* se) {
    const double m = s.value() / static_cast<double>(n);
    const double var =
        std::max(0.0, s2.value() / static_cast<double>(n) - m * m);
    *mean = area * m;
    *se = area * std::sqrt(var / static_cast<double>(std::max<std::int64_t>(n - 1, 1)));
  };
  PassResult out;
  double se = 0;
  mc_stats(V, V2, &out.V, &se);
  if (V_err) *V_err = se;
  double worst_f = 0;
  for (int k = 0; k < dim; ++k) {
    std::size_t ks = static_cast<std::size_t>(k);
    double m = 0, s = 0;
    mc_stats(F[ks], F2[ks], &m, &s);
    out.F[ks] = m;
    worst_f = std::max(worst_f, s);
  }
  if (F_err) *F_err = worst_f;
  return out;
}

void check_separation(const MassSurface& ms, std::span<const double> p,
                      const QuadratureSpec& quad) {
  if (static_cast<int>(p.size()) != ms.ambient_dim())
    fail(Errc::bad_parameter, "evaluation point dimension mismatch");
  if (ms.is_spherical()) {
    if (std::abs(norm2(p) - 1) > 1e-12)
      fail(Errc::not_on_sphere, "evaluation point must lie on the unit S^3");
    Classification cl = classify(ms.spherical(), p);
    if (cl.distance_est < quad.min_sep) {
      // The {f=0, g=1} set is antipodally symmetric sheet-to-sheet: the
      // antipodal image of the north sheet is the south sheet. For a
      // single-sheet source, proximity to the opposite sheet means
      // proximity to the antipodal image of the source.
      const Sheet near_sheet = p[3] >= 0 ? Sheet::North : Sheet::South;
      if (ms.sheet() == Sheet::Both || near_sheet == ms.sheet())
        fail(Errc::too_close_to_surface,
             "evaluation point is within min_sep of the mass surface");
      fail(Errc::too_close_to_antipode,
           "evaluation point is within min_sep of the antipodal surface");
    }
    return;
  }
  Classification cl = classify(ms.euclidean_carrier(), p);
  if (cl.distance_est < quad.min_sep)
    fail(Errc::too_close_to_surface,
         "evaluation point is within min_sep of the mass surface");
}

FieldValue eval_surface(const MassSurface& ms, std::span<const double> p,
                        const QuadratureSpec& quad, bool want_V, bool want_F) {
  validate_quadrature_spec(quad);
  check_separation(ms, p, quad);
  const int dim = ms.ambient_dim();
  FieldValue fv;
  if (quad.method == QuadMethod::MonteCarlo) {
    double verr = 0, ferr = 0;
    PassResult r = surface_pass_mc(ms, p, quad, want_F, &verr, &ferr);
    fv.value = r.V;
    fv.error = verr;
    if (want_F) {
      fv.force.assign(r.F.begin(), r.F.begin() + dim);
      fv.force_error = ferr;
    }
    return fv;
  }
  PassResult coarse = surface_pass(ms, p, quad.order, want_F);
  PassResult fine = surface_pass(ms, p, quad.order * quad.refine, want_F);
  fv.value = fine.V;
  fv.error = std::abs(fine.V - coarse.V);
  if (want_F) {
    fv.force.assign(fine.F.begin(), fine.F.begin() + dim);
    double fe = 0;
    for (int k = 0; k < dim; ++k) {
      std::size_t ks = static_cast<std::size_t>(k);
      fe = std::max(fe, std::abs(fine.F[ks] - coarse.F[ks]));
    }
    fv.force_error = fe;
  }
  (void)want_V;
  return fv;
}

}  // namespace

Kernel euclidean_kernel(int dim) {
  if (dim < 2) fail(Errc::dimension_too_small, "kernel dimension must be >= 2");
  return Kernel{false, dim};
}

Kernel spherical_kernel() { return Kernel{true, 4}; }

double kernel_eval(const Kernel& k, std::span<const double> source,
                   std::span<const double> eval) {
  if (source.size() != eval.size() ||
      static_cast<int>(source.size()) != k.dim)
    fail(Errc::bad_parameter, "kernel point dimension mismatch");
  if (k.spherical) {
    if (std::abs(norm2(source) - 1) > 1e-12 || std::abs(norm2(eval) - 1) > 1e-12)
      fail(Errc::not_on_sphere, "kernel points must lie on the unit S^3");
    double c = 0;
    for (int i = 0; i < 4; ++i)
      c += source[static_cast<std::size_t>(i)] * eval[static_cast<std::size_t>(i)];
    if (c >= 1.0 - 1e-15) fail(Errc::coincident, "zero angular separation");
    if (c <= -1.0 + 1e-15) fail(Errc::antipodal, "antipodal evaluation point");
    return c / std::sqrt(1 - c * c);
  }
  double r2 = 0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const double d = source[i] - eval[i];
    r2 += d * d;
  }
  if (r2 <= 0) fail(Errc::coincident, "zero separation");
  const double r = std::sqrt(r2);
  if (k.dim == 2) return -std::log(r);
  if (k.dim == 3) return 1.0 / r;
  return std::pow(r, 2 - k.dim);
}

FieldValue potential_surface(const MassSurface& ms, std::span<const double> p,
                             const QuadratureSpec& quad) {
  return eval_surface(ms, p, quad, true, false);
}

FieldValue force_surface(const MassSurface& ms, std::span<const double> p,
                         const QuadratureSpec& quad) {
  return eval_surface(ms, p, quad, false, true);
}

FieldValue field_surface(const MassSurface& ms, std::span<const double> p,
                         const QuadratureSpec& quad) {
  return eval_surface(ms, p, quad, true, true);
}

namespace {

FieldValue eval_homogeneous(const EuclideanEllipsoid& e, double mass,
                            std::span<const double> p,
                            const QuadratureSpec& quad, int n_layers,
                            bool want_F) {
  validate_quadrature_spec(quad);
  if (n_layers < 4) fail(Errc::bad_parameter, "need at least 4 layers");
  Classification cl = classify(e, p);
  if (cl.region != Region::Exterior)
    fail(Errc::interior_point, "evaluation point must be exterior to the solid");
  if (cl.distance_est < quad.min_sep)
    fail(Errc::too_close_to_surface,
         "evaluation point is within min_sep of the outer surface");
  const int d = e.dim();
  // Solid of mass M as homeoid layers lam * e with mass element
  // M d lam^{d-1} dlam over lam in (0,1); each layer is evaluated with a
  // single fixed-order pass and the whole composite is Richardson-checked.
  auto run = [&](int order, int layers) {
    const auto& [gx, gw] = gauss_legendre(layers);
    KahanSum V;
    std::array<KahanSum, 4> F;
    for (int li = 0; li < layers; ++li) {
      std::size_t lk = static_cast<std::size_t>(li);
      const double lam = 0.5 * (gx[lk] + 1);
      const double wl = 0.5 * gw[lk] * mass * d * std::pow(lam, d - 1);
      std::vector<double> axes(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i)
        axes[static_cast<std::size_t>(i)] = lam * e.axis(i);
      MassSurface layer =
          MassSurface::euclidean_homeoid(EuclideanEllipsoid(axes), 1.0);
      PassResult r = surface_pass(layer, p, order, want_F);
      V.add(wl * r.V);
      if (want_F)
        for (int k = 0; k < d; ++k)
          F[static_cast<std::size_t>(k)].add(wl * r.F[static_cast<std::size_t>(k)]);
    }
    PassResult out;
    out.V = V.value();
    for (int k = 0; k < d; ++k)
      out.F[static_cast<std::size_t>(k)] = F[static_cast<std::size_t>(k)].value();
    return out;
  };
  PassResult coarse = run(quad.order, n_layers);
  PassResult fine = run(quad.order * quad.refine, n_layers + (n_layers + 1) / 2);
  FieldValue fv;
  fv.value = fine.V;
  fv.error = std::abs(fine.V - coarse.V);
  if (want_F) {
    fv.force.assign(fine.F.begin(), fine.F.begin() + d);
    double fe = 0;
    for (int k = 0; k < d; ++k) {
      std::size_t ks = static_cast<std::size_t>(k);
      fe = std::max(fe, std::abs(fine.F[ks] - coarse.F[ks]));
    }
    fv.force_error = fe;
  }
  return fv;
}

}  // namespace

FieldValue potential_homogeneous_ellipsoid(const EuclideanEllipsoid& e,
                                           double mass,
                                           std::span<const double> p,
                                           const QuadratureSpec& quad,
                                           int n_layers) {
  return eval_homogeneous(e, mass, p, quad, n_layers, false);
}

FieldValue force_homogeneous_ellipsoid(const EuclideanEllipsoid& e,
                                       double mass, std::span<const double> p,
                                       const QuadratureSpec& quad,
                                       int n_layers) {
  return eval_homogeneous(e, mass, p, quad, n_layers, true);
}

FieldValue field_homogeneous_ellipsoid(const EuclideanEllipsoid& e,
                                       double mass, std::span<const double> p,
                                       const QuadratureSpec& quad,
                                       int n_layers) {
  return eval_homogeneous(e, mass, p, quad, n_layers, true);
}

ThickLayer homothetic_layer(const EuclideanEllipsoid& outer, double lam,
                            double mass) {
  if (!(lam > 0) || !(lam < 1))
    fail(Errc::bad_parameter, "homothety factor must lie in (0,1)");
  if (!(mass > 0)) fail(Errc::bad_parameter, "layer mass must be > 0");
  std::vector<double> axes(static_cast<std::size_t>(outer.dim()));
  for (int i = 0; i < outer.dim(); ++i)
    axes[static_cast<std::size_t>(i)] = lam * outer.axis(i);
  EuclideanEllipsoid inner(axes);
  const double shell_vol = outer.volume() - inner.volume();
  return ThickLayer{outer, inner, ThickLayer::Relation::Homothetic,
                    mass / shell_vol};
}

ThickLayer confocal_layer(const EuclideanEllipsoid& base, double lambda_outer,
                          double lambda_inner, double mass) {
  if (!(lambda_inner < lambda_outer))
    fail(Errc::bad_parameter, "inner shift must be below the outer shift");
  if (!(mass > 0)) fail(Errc::bad_parameter, "layer mass must be > 0");
  EuclideanEllipsoid outer = confocal_shift(base, lambda_outer);
  EuclideanEllipsoid inner = confocal_shift(base, lambda_inner);
  const double shell_vol = outer.volume() - inner.volume();
  return ThickLayer{std::move(outer), std::move(inner),
                    ThickLayer::Relation::Confocal, mass / shell_vol};
}

namespace {

FieldValue eval_thick(const ThickLayer& layer, std::span<const double> p,
                      const QuadratureSpec& quad, int n_layers, bool want_F) {
  if (!(layer.density > 0)) fail(Errc::bad_parameter, "layer density must be > 0");
  const double m_out = layer.density * layer.outer.volume();
  const double m_in = layer.density * layer.inner.volume();
  FieldValue a = eval_homogeneous(layer.outer, m_out, p, quad, n_layers, want_F);
  FieldValue b = eval_homogeneous(layer.inner, m_in, p, quad, n_layers, want_F);
  FieldValue fv;
  fv.value = a.value - b.value;
  fv.error = a.error + b.error;
  if (want_F) {
    fv.force.resize(a.force.size());
    for (std::size_t i = 0; i < a.force.size(); ++i)
      fv.force[i] = a.force[i] - b.force[i];
    fv.force_error = a.force_error + b.force_error;
  }
  return fv;
}

}  // namespace

FieldValue potential_thick_layer(const ThickLayer& layer,
                                 std::span<const double> p,
                                 const QuadratureSpec& quad, int n_layers) {
  return eval_thick(layer, p, quad, n_layers, false);
}

FieldValue force_thick_layer(const ThickLayer& layer, std::span<const double> p,
                             const QuadratureSpec& quad, int n_layers) {
  return eval_thick(layer, p, quad, n_layers, true);
}

FieldValue field_thick_layer(const ThickLayer& layer, std::span<const double> p,
                             const QuadratureSpec& quad, int n_layers) {
  return eval_thick(layer, p, quad, n_layers, true);
}

double separation_estimate(const MassSurface& ms, std::span<const double> p) {
  if (ms.is_spherical()) return classify(ms.spherical(), p).distance_est;
  return classify(ms.euclidean_carrier(), p).distance_est;
}

}  // namespace confocal
