#pragma once

#include <span>

namespace fraclap {

/// Heat kernel of the path graph Z: e^{-2t} I_{|m|}(2t). Value in [0, 1].
double heat_kernel_1d(double t, int m);

/// heat_kernel_1d(t, m) / t^{|m|}, accurate as t -> 0 where it tends to 1/|m|!.
double heat_kernel_1d_reduced(double t, int m);

/// Heat kernel p(t, x, y) on Z^d as the product of one-dimensional kernels.
double heat_kernel(double t, std::span<const int> x, std::span<const int> y);

/// Smallest M with sum_{|y - x|_inf > M} p(t, x, y) <= eps, from the Chernoff
/// bound P(X_t >= M) <= exp(t (2 cosh s - 2) - s M) per coordinate.
int heat_mass_cutoff(double t, int dim, double eps);

/// Constant c with e^{-2t} I_0(2t) <= c / sqrt(t) for all t > 0.
inline constexpr double kHeatDecayConstant = 0.34;

}  // namespace fraclap
