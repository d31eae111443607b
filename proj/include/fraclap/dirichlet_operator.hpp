#pragma once

#include <complex>

#include <Eigen/Dense>

#include "fraclap/domain.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/kernel_table.hpp"

namespace fraclap {

/// Dense matrix of the Dirichlet fractional Laplacian on Omega:
/// S_alpha on the diagonal and -Q_alpha(x_i, x_j) off it.
struct OperatorMatrix {
  Domain domain;
  AlphaParam alpha;
  Eigen::MatrixXd entries;
  double total_mass = 0.0;
  /// Sum of the quadrature error estimates of all entries.
  double entry_error = 0.0;

  Eigen::Index size() const noexcept { return entries.rows(); }
};

enum class BoundaryMethod { identity, truncated_direct };

struct BoundaryMeasure {
  double value = 0.0;
  BoundaryMethod method = BoundaryMethod::identity;
  double error_bound = 0.0;
};

/// Fills `table` with every offset occurring in Omega (Fourier block or one
/// time integral per canonical offset) and assembles the matrix from it.
OperatorMatrix assemble(const Domain& domain, KernelTable& table,
                        KernelMethod method = KernelMethod::fourier);
OperatorMatrix assemble(const Domain& domain, const AlphaParam& alpha, const QuadratureSpec& quad,
                        KernelMethod method = KernelMethod::fourier);
OperatorMatrix assemble(const Domain& domain, const AlphaParam& alpha);

/// |d^alpha Omega| = |Omega| S_alpha - sum_{x != y in Omega} Q_alpha(x, y), i.e.
/// the sum of all matrix entries.
BoundaryMeasure boundary_term(const OperatorMatrix& op);
BoundaryMeasure boundary_term(const Domain& domain, const AlphaParam& alpha,
                              const QuadratureSpec& quad);

/// Literal sum of Q_alpha(x, y) over x in Omega and y outside Omega with
/// |y|_inf <= shell. error_bound covers the neglected y through
/// sum_{|v|_inf > K} Q_d(v) <= d sum_{|n| > K} Q_1(n).
/// Requires shell >= max |x|_inf over Omega.
BoundaryMeasure boundary_term_direct(const Domain& domain, const AlphaParam& alpha,
                                     const QuadratureSpec& quad, int shell);

Eigen::VectorXd apply(const OperatorMatrix& op, const Eigen::VectorXd& u);
Eigen::VectorXcd apply(const OperatorMatrix& op, const Eigen::VectorXcd& u);

/// <L u, v> = sum_x (L u)(x) conj(v(x)); linear in u, conjugate-linear in v.
std::complex<double> quadratic_form(const OperatorMatrix& op, const Eigen::VectorXcd& u,
                                    const Eigen::VectorXcd& v);

/// The same form as
///   1/2 sum_{x != y in Omega} Q(x,y) (u(x)-u(y)) conj(v(x)-v(y))
///   + sum_x r(x) u(x) conj(v(x)),
/// with r(x) = sum_{y outside Omega} Q(x, y), the row sum of the matrix.
std::complex<double> quadratic_form_double_sum(const OperatorMatrix& op, const Eigen::VectorXcd& u,
                                               const Eigen::VectorXcd& v);

/// Unique u with L u = f via Cholesky plus one refinement step. Throws
/// NumericError when ||L u - f|| > 1e-10 ||f||.
Eigen::VectorXd solve_poisson(const OperatorMatrix& op, const Eigen::VectorXd& f);

}  // namespace fraclap
