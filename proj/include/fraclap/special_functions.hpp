#pragma once

namespace fraclap::special {

/// Gamma function for x > 0 via the Lanczos approximation (g = 7, nine terms).
/// Relative error is below 1e-13 on (0, 2].
double lanczos_gamma(double x);

/// Exponentially scaled modified Bessel function e^{-z} I_m(z), m >= 0, z >= 0.
///
/// Power series for z < 1, Hankel asymptotic expansion once z >= max(40, 2 m^2),
/// and Miller's backward recurrence normalized by e^z = I_0 + 2 sum_k I_k in
/// between. The result always lies in [0, 1].
double scaled_bessel_i(int m, double z);

/// Volume of the unit ball in R^d.
double unit_ball_volume(int dim);

}  // namespace fraclap::special
