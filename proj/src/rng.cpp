#include "confocal/rng.hpp"

#include <cmath>

#include "confocal/error.hpp"

namespace confocal {

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(Errc::bad_parameter, "probability must lie in (0,1)");
  // Acklam's rational approximation with one Halley refinement step.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - plow) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  // Halley refinement against the erfc-based CDF.
  double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  x = x - u / (1 + x * u / 2);
  return x;
}

double halton(std::uint64_t index, std::uint32_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

namespace {
constexpr std::uint32_t kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                     23, 29, 31, 37, 41, 43, 47, 53};
}

SpherePointSequence::SpherePointSequence(int dim, std::uint64_t seed) : dim_(dim) {
  if (dim < 2 || dim > 16) fail(Errc::bad_parameter, "sphere dimension out of range");
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
  shift_.resize(static_cast<std::size_t>(dim));
  for (double& s : shift_) {
    s = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
  }
  index_ = 1;  // skip the degenerate all-zero Halton point
}

std::vector<double> SpherePointSequence::next() {
  std::vector<double> out(static_cast<std::size_t>(dim_));
  double norm2 = 0;
  int guard = 0;
  do {
    for (int i = 0; i < dim_; ++i) {
      double t = halton(index_, kPrimes[i]) + shift_[static_cast<std::size_t>(i)];
      t -= std::floor(t);  // Cranley-Patterson rotation
      t = std::min(std::max(t, 0x1.0p-53), 1.0 - 0x1.0p-53);
      out[static_cast<std::size_t>(i)] = inverse_normal_cdf(t);
    }
    ++index_;
    norm2 = 0;
    for (double v : out) norm2 += v * v;
  } while (norm2 < 1e-12 && ++guard < 8);
  double inv = 1.0 / std::sqrt(norm2);
  for (double& v : out) v *= inv;
  return out;
}

}  // namespace confocal
