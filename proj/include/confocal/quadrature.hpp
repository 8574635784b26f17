#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "confocal/error.hpp"

namespace confocal {

enum class QuadMethod { GaussProduct, MonteCarlo };

/// Integration configuration shared by all field evaluations.
struct QuadratureSpec {
  QuadMethod method = QuadMethod::GaussProduct;
  int order = 64;                     // Gauss-Legendre order n per polar angle
  std::int64_t samples = 1'000'000;   // Monte Carlo sample count
  std::uint64_t seed = 0;             // Monte Carlo stream seed
  int refine = 2;                     // order multiplier for error estimation
  double min_sep = 1e-3;              // refusal distance from singular surfaces
};

void validate_quadrature_spec(const QuadratureSpec& spec);

/// Gauss-Legendre nodes in (-1,1) and weights summing to 2. Cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

/// Nodes and weights on the unit sphere S^k in R^{k+1}; weights sum to the
/// sphere area (exactly for k=1,2, to quadrature accuracy for k>=3).
/// Product construction: Gauss-Legendre in each polar angle, uniform
/// trapezoid with 2n points in the periodic azimuth.
struct SphereRule {
  int sphere_dim = 2;                // k, nodes live in R^{k+1}
  std::vector<double> nodes;         // flat, (k+1) * count
  std::vector<double> weights;       // count
  std::size_t count() const { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes.data() + i * (sphere_dim + 1), static_cast<std::size_t>(sphere_dim + 1)};
  }
};

const SphereRule& sphere_rule(int sphere_dim, int order);

/// Surface area of S^k (k-sphere in R^{k+1}).
double sphere_area(int sphere_dim);

/// Volume of the unit ball in R^d.
double ball_volume(int dim);

/// Fixed-order Kahan accumulator; reductions are deterministic for a fixed
/// rule regardless of the values' magnitudes.
class KahanSum {
 public:
  void add(double x) {
    double y = x - carry_;
    double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0, carry_ = 0;
};

}  // namespace confocal
