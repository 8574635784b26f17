#include "confocal/rational.hpp"

#include "confocal/rng.hpp"

namespace confocal {

RationalEllipsoid make_rational_ellipsoid(std::vector<Rational> axes) {
  if (axes.size() < 2) fail(Errc::dimension_too_small, "need dimension >= 2");
  for (const Rational& a : axes)
    if (a <= 0) fail(Errc::non_positive_axis, "semi-axes must be > 0");
  return RationalEllipsoid{std::move(axes)};
}

RationalConfocalPair make_rational_confocal_pair(const std::vector<Rational>& t,
                                                 const Rational& gamma) {
  std::vector<Rational> a0(t.size()), a1(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= 0) fail(Errc::bad_parameter, "axis parameters must be > 0");
    Rational q = gamma / t[i];
    a0[i] = (t[i] + q) / 2;
    a1[i] = (t[i] - q) / 2;
    if (a0[i] <= 0 || a1[i] <= 0)
      fail(Errc::bad_parameter, "axis parameter too small for this shift");
  }
  return {make_rational_ellipsoid(std::move(a0)),
          make_rational_ellipsoid(std::move(a1)), gamma};
}

std::vector<Rational> rational_unit_vector(const std::vector<Rational>& seed) {
  Rational n2 = 0;
  for (const Rational& s : seed) n2 += s * s;
  if (n2 == 0) fail(Errc::zero_seed, "seed direction must be nonzero");
  if (n2 == 1) return seed;
  // Householder reflection of e_1 in the seed: exactly unit for any seed.
  std::vector<Rational> u(seed.size(), Rational(0));
  Rational coef = 2 * seed[0] / n2;
  u[0] = 1;
  for (std::size_t i = 0; i < seed.size(); ++i) u[i] -= coef * seed[i];
  return u;
}

std::vector<Rational> rational_point_on_ellipsoid(
    const RationalEllipsoid& e, const std::vector<Rational>& seed) {
  if (seed.size() != e.axes.size())
    fail(Errc::bad_parameter, "seed dimension mismatch");
  std::vector<Rational> u = rational_unit_vector(seed);
  std::vector<Rational> p(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) p[i] = e.axes[i] * u[i];
  return p;
}

Rational rational_witness(const RationalEllipsoid& e,
                          const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] * x[i]) / (e.axes[i] * e.axes[i]);
  return s - 1;
}

Rational chord_identity_residual_exact(const RationalConfocalPair& pair,
                               const std::vector<Rational>& P0,
                               const std::vector<Rational>& X0) {
  const auto& e0 = pair.e0;
  const auto& e1 = pair.e1;
  if (rational_witness(e0, P0) != 0 || rational_witness(e0, X0) != 0)
    fail(Errc::not_on_source, "both points must lie on the source exactly");
  Rational lhs = 0, rhs = 0;
  for (std::size_t i = 0; i < P0.size(); ++i) {
    Rational ratio = e1.axes[i] / e0.axes[i];
    Rational d1 = P0[i] - ratio * X0[i];  // P0 - A X0
    Rational d2 = ratio * P0[i] - X0[i];  // A P0 - X0
    lhs += d1 * d1;
    rhs += d2 * d2;
  }
  Rational diff = lhs - rhs;
  return diff < 0 ? Rational(-diff) : diff;
}

Rational random_rational(std::uint64_t& state, int range, bool allow_zero) {
  if (range < 1) fail(Errc::bad_parameter, "range must be >= 1");
  const std::uint64_t r = static_cast<std::uint64_t>(range);
  for (;;) {
    std::uint64_t bits = splitmix64(state);
    long long num = static_cast<long long>(bits % (2 * r + 1)) - range;
    std::uint64_t den = 1 + (splitmix64(state) % r);
    if (num == 0 && !allow_zero) continue;
    return Rational(num, static_cast<long long>(den));
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace confocal
