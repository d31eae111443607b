#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

#include "fraclap/dirichlet_operator.hpp"
#include "fraclap/domain.hpp"
#include "fraclap/kernel.hpp"

namespace fraclap {

/// <u, h_z> = sum_{x in Omega} u(x) e^{-i <x, z>}.
std::complex<double> pairing(const Domain& domain, const Eigen::VectorXcd& u, std::span<const double> z);

/// h_z(x) = e^{i <x, z>} restricted to Omega.
Eigen::VectorXcd plane_wave(const Domain& domain, std::span<const double> z);

/// Points per dimension of the exact Plancherel grid: 2 extent_i + 3.
std::vector<int> plancherel_grid(const Domain& domain);

/// |(2 pi)^{-d} int |<u, h_z>|^2 dz - <u, u>| / <u, u>, the integral taken by
/// the periodic trapezoid rule on plancherel_grid(), which is exact here.
/// Throws std::domain_error for u = 0.
double plancherel_check(const Domain& domain, const Eigen::VectorXcd& u);

struct FormCheck {
  /// (2 pi)^{-d} int Phi^{alpha/2} |<u, h_z>|^2 dz.
  double quadrature = 0.0;
  /// <u, L u> from the matrix.
  double form = 0.0;
  double rel_error = 0.0;
  /// Propagated error estimate of the quadrature.
  double quadrature_error = 0.0;
};

/// Expands |<u, h_z>|^2 = sum_{x,y} u(x) conj(u(y)) e^{-i <x - y, z>} so the
/// cube integral becomes sum_{x,y} u(x) conj(u(y)) c(x - y) with c the Fourier
/// coefficients of Phi^{alpha/2} from the extrapolated uniform grids of
/// fourier_coefficient_block. Throws ConvergenceError if those coefficients
/// miss the quadrature tolerance.
FormCheck form_check(const OperatorMatrix& op, const Eigen::VectorXcd& u, const QuadratureSpec& quad);
FormCheck form_check(const OperatorMatrix& op, const Eigen::VectorXcd& u);

/// Same comparison with the plain trapezoid rule on `grid` points per
/// dimension and no extrapolation; used to observe the grid convergence.
FormCheck form_check_at_grid(const OperatorMatrix& op, const Eigen::VectorXcd& u, int grid);

struct HzBound {
  /// |<h_z, L h_z>|.
  double lhs = 0.0;
  /// Phi(z)^{alpha/2} |Omega| + |d Omega|.
  double rhs = 0.0;
  double slack = 0.0;
};

HzBound hz_bound_check(const OperatorMatrix& op, const BoundaryMeasure& boundary, std::span<const double> z);

}  // namespace fraclap
