#pragma once

#include <Eigen/Dense>

#include "fraclap/checks.hpp"
#include "fraclap/dirichlet_operator.hpp"

namespace fraclap {

/// Ascending eigenvalues with orthonormal eigenvectors in matching columns.
/// Each eigenvector is signed so that its first entry above 1e-8 of its
/// largest magnitude is positive.
struct SpectrumResult {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  /// max_j ||A phi_j - lambda_j phi_j||_2.
  double residual_norm = 0.0;
  /// Off-diagonal Frobenius norm at termination.
  double off_diagonal = 0.0;
  int sweeps = 0;

  Eigen::Index size() const noexcept { return eigenvalues.size(); }
};

/// Cyclic Jacobi on a symmetric matrix. Stops once the off-diagonal
/// Frobenius norm is <= 1e-13 ||A||_F; throws NumericError carrying that norm
/// if the sweep cap is reached first. Equal eigenvalues keep the order of
/// their diagonal positions.
SpectrumResult jacobi_eigen(const Eigen::MatrixXd& a);

SpectrumResult eigen_decompose(const OperatorMatrix& op);

/// max_{i,j} |<phi_i, phi_j> - delta_ij|.
double orthonormality_error(const SpectrumResult& spec);

/// Checks lambda_1 > 0, lambda_2 - lambda_1 > 1e-9 lambda_1, phi_1 > 1e-12 max|phi_1|
/// entrywise (after signing its first entry positive), the eigen-residual and
/// orthonormality. With skip_ground_state the simplicity and positivity items
/// are reported as skipped.
CheckReport validate_spectrum(const SpectrumResult& spec, bool skip_ground_state = false);

}  // namespace fraclap
