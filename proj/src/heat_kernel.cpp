#include "fraclap/heat_kernel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "fraclap/special_functions.hpp"

namespace fraclap {

double heat_kernel_1d(double t, int m) {
  if (!(t >= 0.0)) throw std::domain_error("heat_kernel_1d: t must be non-negative");
  return special::scaled_bessel_i(std::abs(m), 2.0 * t);
}

double heat_kernel_1d_reduced(double t, int m) {
  if (!(t >= 0.0)) throw std::domain_error("heat_kernel_1d_reduced: t must be non-negative");
  m = std::abs(m);
  if (t < 1.0) {
    // e^{-2t} sum_k t^{2k} / (k! (m+k)!)
    double inv_fact = 1.0;
    for (int k = 2; k <= m; ++k) inv_fact /= k;
    const double q = t * t;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 100; ++k) {
      term *= q / (static_cast<double>(k) * (m + k));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return std::exp(-2.0 * t) * inv_fact * sum;
  }
  return heat_kernel_1d(t, m) / std::pow(t, m);
}

double heat_kernel(double t, std::span<const int> x, std::span<const int> y) {
  if (x.size() != y.size()) throw std::domain_error("heat_kernel: dimension mismatch");
  if (!(t >= 0.0)) throw std::domain_error("heat_kernel: t must be non-negative");
  double value = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) value *= heat_kernel_1d(t, x[i] - y[i]);
  return value;
}

int heat_mass_cutoff(double t, int dim, double eps) {
  if (!(t >= 0.0) || dim < 1 || !(eps > 0.0)) {
    throw std::domain_error("heat_mass_cutoff: invalid arguments");
  }
  if (t == 0.0) return 0;
  // Union over coordinates and both signs.
  const double per_tail = eps / (2.0 * dim);
  for (int m = 1;; ++m) {
    const double s = std::asinh(m / (2.0 * t));
    const double log_bound = t * (2.0 * std::cosh(s) - 2.0) - s * m;
    if (log_bound <= std::log(per_tail)) return m - 1;
  }
}

}  // namespace fraclap
