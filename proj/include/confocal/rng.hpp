#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace confocal {

/// SplitMix64 step; also used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: every draw depends only on (seed, counter), so
/// results are independent of evaluation order and of any parallel split.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed ^ (0x6a09e667f3bcc909ULL * (stream + 1))) {}

  /// Uniform in [0, 1).
  double uniform(std::uint64_t counter) {
    std::uint64_t s = seed_ + 0x9e3779b97f4a7c15ULL * (counter + 1);
    std::uint64_t bits = splitmix64(s);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  /// Pair of independent standard normals (Box-Muller).
  std::array<double, 2> normal_pair(std::uint64_t counter) {
    double u1 = uniform(2 * counter);
    double u2 = uniform(2 * counter + 1);
    if (u1 <= 0) u1 = 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }

  /// Uniform direction on S^{dim-1} in R^dim; one counter per point.
  void unit_vector(std::uint64_t counter, std::span<double> out) {
    const std::uint64_t base = counter * (out.size() + 2);
    double norm2 = 0;
    for (std::size_t i = 0; i < out.size(); i += 2) {
      auto np = normal_pair(base + i / 2 + 1);
      out[i] = np[0];
      if (i + 1 < out.size()) out[i + 1] = np[1];
    }
    for (double v : out) norm2 += v * v;
    if (norm2 == 0) {
      out[0] = 1;  // measure-zero fallback
      norm2 = 1;
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (double& v : out) v *= inv;
  }

 private:
  std::uint64_t seed_;
};

/// Inverse of the standard normal CDF (Acklam's rational approximation,
/// relative error below 1.2e-9; ample for sample placement).
double inverse_normal_cdf(double p);

/// Halton radical-inverse in the given base.
double halton(std::uint64_t index, std::uint32_t base);

/// Deterministic well-spread points on S^{dim-1}: Halton points pushed
/// through the inverse normal CDF and normalized, with a seed-derived
/// Cranley-Patterson shift.
class SpherePointSequence {
 public:
  SpherePointSequence(int dim, std::uint64_t seed);

  std::vector<double> next();

 private:
  int dim_;
  std::uint64_t index_ = 0;
  std::vector<double> shift_;
};

}  // namespace confocal
