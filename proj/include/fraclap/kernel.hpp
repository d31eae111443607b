#pragma once

#include <span>
#include <vector>

#include "fraclap/point.hpp"

namespace fraclap {

/// Fractional order alpha in (0, 2) with the normalizer 1/|Gamma(-alpha/2)|.
class AlphaParam {
 public:
  /// Throws std::domain_error unless 0 < alpha < 2.
  explicit AlphaParam(double alpha);

  double value() const noexcept { return alpha_; }
  double half() const noexcept { return 0.5 * alpha_; }
  /// 1/|Gamma(-alpha/2)| = alpha / (2 Gamma(1 - alpha/2)).
  double inv_gamma() const noexcept { return inv_gamma_; }

  friend bool operator==(const AlphaParam&, const AlphaParam&) = default;

 private:
  double alpha_;
  double inv_gamma_;
};

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int fourier_grid_per_dim = 512;
  /// Separates the near-zero and tail pieces of the time integral.
  double time_split = 1.0;

  /// Defaults: 4096 grid points per dimension for d = 1, 512 for d = 2,
  /// 128 for d = 3 and 32 beyond.
  static QuadratureSpec for_dimension(int dim);

  /// Throws std::domain_error if any field is out of range.
  void validate() const;
};

/// Lattice symbol sum_i (2 - 2 cos z_i); every coordinate must lie in [-pi, pi].
double phi_symbol(std::span<const double> z);

/// Result of a quadrature with its error estimate.
struct QuadratureValue {
  double value = 0.0;
  double error = 0.0;
};

/// Q_alpha at a nonzero offset from the heat-semigroup time integral
///   (1/|Gamma(-alpha/2)|) int_0^inf t^{-1-alpha/2} p(t, 0, offset) dt.
/// Throws std::domain_error for a zero offset and ConvergenceError when the
/// tolerance cannot be met.
QuadratureValue q_alpha_time_integral(std::span<const int> offset, const AlphaParam& alpha,
                                      const QuadratureSpec& quad);

/// Trapezoid-rule Fourier coefficients of Phi^{alpha/2} on a uniform periodic
/// grid of `grid` points per dimension, for every v in [0, max_abs]^d
/// (row-major, last coordinate fastest). Entry v approximates S_alpha for v = 0
/// and -Q_alpha(v) otherwise; the aliasing error decays like grid^{-(d+alpha)}.
std::vector<double> symbol_trapezoid_coefficients(int dim, const AlphaParam& alpha, int grid,
                                                  int max_abs);

/// Fourier coefficients of Phi^{alpha/2} for all v in [0, max_abs]^d,
/// Richardson-extrapolated from grids N, 2N and 4N (one symbol evaluation on
/// the finest grid). N is the configured grid, raised to at least 8 max_abs.
struct FourierBlock {
  int dim = 0;
  int max_abs = 0;
  int base_grid = 0;
  std::vector<double> coefficient;
  std::vector<double> error;

  std::size_t index(std::span<const int> offset) const;
  /// Q_alpha(offset) for a nonzero offset with |offset|_inf <= max_abs.
  double kernel(std::span<const int> offset) const { return -coefficient[index(offset)]; }
  double total_mass() const { return coefficient[0]; }
};

FourierBlock fourier_coefficient_block(int dim, const AlphaParam& alpha,
                                       const QuadratureSpec& quad, int max_abs);

/// Q_alpha at a nonzero offset as the negated Fourier coefficient of Phi^{alpha/2}.
QuadratureValue q_alpha_fourier(std::span<const int> offset, const AlphaParam& alpha,
                                const QuadratureSpec& quad);

/// S_alpha = sum_{y != x} Q_alpha(x, y), the cube average of Phi^{alpha/2}.
/// Throws ConvergenceError if the extrapolation error exceeds the tolerance.
QuadratureValue total_mass(int dim, const AlphaParam& alpha, const QuadratureSpec& quad);

}  // namespace fraclap
