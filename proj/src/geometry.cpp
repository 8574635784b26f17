#include "confocal/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "confocal/quadrature.hpp"

namespace confocal {

namespace {

double norm2(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
}

void require_unit(std::span<const double> u, double tol, Errc code,
                  const char* what) {
  if (std::abs(norm2(u) - 1.0) > tol) fail(code, what);
}

}  // namespace

EuclideanEllipsoid::EuclideanEllipsoid(std::vector<double> semi_axes)
    : axes_(std::move(semi_axes)) {
  if (axes_.size() < 2) fail(Errc::dimension_too_small, "need dimension >= 2");
  for (double a : axes_) {
    if (!(a > 0) || !std::isfinite(a))
      fail(Errc::non_positive_axis, "semi-axes must be finite and > 0");
  }
}

double EuclideanEllipsoid::witness(std::span<const double> x) const {
  if (x.size() != axes_.size()) fail(Errc::bad_parameter, "point dimension mismatch");
  double s = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    double t = x[i] / axes_[i];
    s += t * t;
  }
  return s - 1.0;
}

std::vector<double> EuclideanEllipsoid::witness_gradient(
    std::span<const double> x) const {
  if (x.size() != axes_.size()) fail(Errc::bad_parameter, "point dimension mismatch");
  std::vector<double> g(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i)
    g[i] = 2.0 * x[i] / (axes_[i] * axes_[i]);
  return g;
}

std::vector<double> EuclideanEllipsoid::surface_point(
    std::span<const double> u) const {
  if (u.size() != axes_.size()) fail(Errc::bad_parameter, "parameter dimension mismatch");
  require_unit(u, 1e-9, Errc::bad_parameter, "parameter must be a unit vector");
  std::vector<double> p(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) p[i] = axes_[i] * u[i];
  return p;
}

double EuclideanEllipsoid::volume() const {
  double v = ball_volume(dim());
  for (double a : axes_) v *= a;
  return v;
}

SphericalEllipsoid::SphericalEllipsoid(double a, double b, double c, double h,
                                       Sheet sheet)
    : a_(a), b_(b), c_(c), h_(h), sheet_(sheet) {
  for (double v : {a, b, c, h}) {
    if (!(v > 0) || !std::isfinite(v))
      fail(Errc::non_positive_param, "parameters must be finite and > 0");
  }
}

double SphericalEllipsoid::f(std::span<const double> x) const {
  if (x.size() != 4) fail(Errc::bad_parameter, "expected a 4-vector");
  return x[0] * x[0] / (a_ * a_) + x[1] * x[1] / (b_ * b_) +
         x[2] * x[2] / (c_ * c_) - x[3] * x[3] / (h_ * h_);
}

std::array<double, 4> SphericalEllipsoid::f_gradient(
    std::span<const double> x) const {
  if (x.size() != 4) fail(Errc::bad_parameter, "expected a 4-vector");
  return {2 * x[0] / (a_ * a_), 2 * x[1] / (b_ * b_), 2 * x[2] / (c_ * c_),
          -2 * x[3] / (h_ * h_)};
}

std::array<double, 4> SphericalEllipsoid::surface_point(
    std::span<const double> u, Sheet sheet) const {
  if (u.size() != 3) fail(Errc::bad_parameter, "parameter must lie on S^2");
  if (sheet == Sheet::Both)
    fail(Errc::bad_parameter, "surface_point needs a single sheet");
  require_unit(u, 1e-9, Errc::bad_parameter, "parameter must be a unit vector");
  const double s = (sheet == Sheet::North) ? 1.0 : -1.0;
  const double r = 1.0 / std::sqrt(h_ * h_ + a_ * a_ * u[0] * u[0] +
                                   b_ * b_ * u[1] * u[1] + c_ * c_ * u[2] * u[2]);
  return {r * a_ * u[0], r * b_ * u[1], r * c_ * u[2], s * r * h_};
}

std::array<double, 4> SphericalEllipsoid::surface_point(
    std::span<const double> u) const {
  return surface_point(u, sheet_);
}

Cap SphericalEllipsoid::cap_of(std::span<const double> x) const {
  if (f(x) > 0) return Cap::Band;
  return x[3] >= 0 ? Cap::North : Cap::South;
}

EuclideanEllipsoid confocal_shift(const EuclideanEllipsoid& e, double gamma) {
  std::vector<double> axes(static_cast<std::size_t>(e.dim()));
  for (int i = 0; i < e.dim(); ++i) {
    double a2 = e.axis(i) * e.axis(i) + gamma;
    if (!(a2 > 0))
      fail(Errc::shift_too_negative, "shift makes a squared axis non-positive");
    axes[static_cast<std::size_t>(i)] = std::sqrt(a2);
  }
  return EuclideanEllipsoid(std::move(axes));
}

SphericalEllipsoid confocal_shift(const SphericalEllipsoid& e, double gamma) {
  const double a2 = e.a() * e.a() + gamma;
  const double b2 = e.b() * e.b() + gamma;
  const double c2 = e.c() * e.c() + gamma;
  const double h2 = e.h() * e.h() - gamma;
  if (!(a2 > 0) || !(b2 > 0) || !(c2 > 0) || !(h2 > 0))
    fail(Errc::shift_out_of_range, "shift leaves the admissible interval");
  return SphericalEllipsoid(std::sqrt(a2), std::sqrt(b2), std::sqrt(c2),
                            std::sqrt(h2), e.sheet());
}

std::optional<double> confocal_gamma(const EuclideanEllipsoid& e0,
                                     const EuclideanEllipsoid& e1, double tol) {
  if (e0.dim() != e1.dim()) return std::nullopt;
  double gamma = e1.axis(0) * e1.axis(0) - e0.axis(0) * e0.axis(0);
  for (int i = 1; i < e0.dim(); ++i) {
    double gi = e1.axis(i) * e1.axis(i) - e0.axis(i) * e0.axis(i);
    if (std::abs(gi - gamma) > tol) return std::nullopt;
  }
  return gamma;
}

std::optional<double> confocal_gamma(const SphericalEllipsoid& e0,
                                     const SphericalEllipsoid& e1, double tol) {
  const double ga = e1.a() * e1.a() - e0.a() * e0.a();
  const double gb = e1.b() * e1.b() - e0.b() * e0.b();
  const double gc = e1.c() * e1.c() - e0.c() * e0.c();
  const double gh = e0.h() * e0.h() - e1.h() * e1.h();
  if (std::abs(gb - ga) > tol || std::abs(gc - ga) > tol ||
      std::abs(gh - ga) > tol)
    return std::nullopt;
  return ga;
}

Classification classify(const EuclideanEllipsoid& e, std::span<const double> x) {
  Classification cl;
  cl.witness = e.witness(x);
  auto grad = e.witness_gradient(x);
  double gn = std::sqrt(norm2(grad));
  double amin = *std::min_element(e.semi_axes().begin(), e.semi_axes().end());
  cl.distance_est = gn > 0 ? std::abs(cl.witness) / gn : amin;
  if (cl.witness < -kSurfaceTol)
    cl.region = Region::Interior;
  else if (cl.witness > kSurfaceTol)
    cl.region = Region::Exterior;
  else
    cl.region = Region::Surface;
  return cl;
}

Classification classify(const SphericalEllipsoid& e, std::span<const double> x) {
  require_unit(x, 1e-12, Errc::not_on_sphere, "point must lie on the unit S^3");
  Classification cl;
  cl.witness = e.f(x);
  auto grad = e.f_gradient(x);
  double gq = 0;  // component of grad f along x
  for (int i = 0; i < 4; ++i) gq += grad[static_cast<std::size_t>(i)] * x[i];
  double tang2 = 0;
  for (int i = 0; i < 4; ++i) {
    double t = grad[static_cast<std::size_t>(i)] - gq * x[i];
    tang2 += t * t;
  }
  double gn = std::sqrt(tang2);
  cl.distance_est =
      gn > 1e-300 ? std::min(std::abs(cl.witness) / gn, M_PI / 2) : M_PI / 2;
  if (cl.witness < -kSurfaceTol)
    cl.region = Region::Interior;
  else if (cl.witness > kSurfaceTol)
    cl.region = Region::Exterior;
  else
    cl.region = Region::Surface;
  if (cl.region != Region::Surface) cl.cap = e.cap_of(x);
  return cl;
}

namespace detail {

double decreasing_root(double lo, double hi,
                       const std::function<double(double)>& phi, int max_iter,
                       double tol) {
  double flo = phi(lo);
  double fhi = phi(hi);
  if (!(flo > 0) || !(fhi < 0))
    fail(Errc::no_root, "bracket does not straddle a root");
  double mid = 0.5 * (lo + hi);
  int used = 0;
  // Bisection until the bracket is tight, then secant polishing.
  while (used < max_iter) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at double resolution
    double fm = phi(mid);
    ++used;
    if (fm == 0) return mid;
    if (fm > 0)
      lo = mid, flo = fm;
    else
      hi = mid, fhi = fm;
    if (hi - lo < 1e-12 * (std::abs(lo) + std::abs(hi) + 1)) break;
  }
  double x0 = lo, f0 = flo, x1 = hi, f1 = fhi;
  for (int i = 0; i < 8 && used < max_iter; ++i, ++used) {
    if (f1 == f0) break;
    double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!(x2 > lo) || !(x2 < hi)) break;
    double f2 = phi(x2);
    x0 = x1, f0 = f1, x1 = x2, f1 = f2;
    if (std::abs(f2) < tol) return x2;
  }
  double best = std::abs(f0) < std::abs(f1) ? x0 : x1;
  if (std::abs(phi(best)) > std::max(tol, 1e-11))
    fail(Errc::non_convergence, "root solver exhausted its budget");
  return best;
}

}  // namespace detail

double confocal_parameter_through(const EuclideanEllipsoid& e,
                                  std::span<const double> p) {
  if (static_cast<int>(p.size()) != e.dim())
    fail(Errc::bad_parameter, "point dimension mismatch");
  const double p2 = norm2(p);
  if (p2 == 0) fail(Errc::no_root, "no confocal member passes through the origin");
  double amin2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < e.dim(); ++i)
    amin2 = std::min(amin2, e.axis(i) * e.axis(i));
  auto phi = [&](double lam) {
    double s = 0;
    for (int i = 0; i < e.dim(); ++i) {
      std::size_t k = static_cast<std::size_t>(i);
      s += p[k] * p[k] / (e.axis(i) * e.axis(i) + lam);
    }
    return s - 1.0;
  };
  const double hi = p2;  // phi(|p|^2) < 0 always
  // Find a positive-side bracket endpoint above the pole at -amin2.
  double span = hi + amin2;
  double lo = -amin2 + span * 1e-3;
  while (!(phi(lo) > 0)) {
    span *= 1e-3;
    if (span < 1e-250)
      fail(Errc::no_root, "point lies in the focal region of the family");
    lo = -amin2 + span;
  }
  return detail::decreasing_root(lo, hi, phi, 80, 1e-13);
}

double confocal_parameter_through(const SphericalEllipsoid& e,
                                  std::span<const double> p) {
  require_unit(p, 1e-12, Errc::not_on_sphere, "point must lie on the unit S^3");
  const double x2 = p[0] * p[0], y2 = p[1] * p[1], z2 = p[2] * p[2],
               w2 = p[3] * p[3];
  if (x2 + y2 + z2 < 1e-28)
    fail(Errc::pole_point, "no confocal member passes through the poles");
  const double m2 = std::min({e.a() * e.a(), e.b() * e.b(), e.c() * e.c()});
  const double h2 = e.h() * e.h();
  auto psi = [&](double g) {
    return x2 / (e.a() * e.a() + g) + y2 / (e.b() * e.b() + g) +
           z2 / (e.c() * e.c() + g) - w2 / (h2 - g);
  };
  // psi decreases from +inf (or a finite limit) to -inf (or a finite limit)
  // over (-m2, h2); shrink toward the endpoints until signs straddle.
  const double width = h2 + m2;
  double lo = -m2 + width * 1e-3;
  double step = width * 1e-3;
  while (!(psi(lo) > 0)) {
    step *= 1e-3;
    if (step < 1e-250)
      fail(Errc::no_root, "point lies in the focal region of the family");
    lo = -m2 + step;
  }
  double hi = h2 - width * 1e-3;
  step = width * 1e-3;
  while (!(psi(hi) < 0)) {
    step *= 1e-3;
    if (step < 1e-250)
      fail(Errc::no_root, "point lies in the focal region of the family");
    hi = h2 - step;
  }
  return detail::decreasing_root(lo, hi, psi, 80, 1e-13);
}

}  // namespace confocal
