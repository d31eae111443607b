#include "fraclap/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fraclap/errors.hpp"

namespace fraclap {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kStopRatio = 1e-13;

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

// Zeroes a(p, q) by a plane rotation applied on both sides; accumulates into v.
void rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = a(p, k) = c * akp - s * akq;
    a(k, q) = a(q, k) = s * akp + c * akq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

void normalize_sign(Eigen::Ref<Eigen::VectorXd> v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-8 * peak) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

SpectrumResult jacobi_eigen(const Eigen::MatrixXd& input) {
  const Eigen::Index n = input.rows();
  if (n == 0 || input.cols() != n) throw std::domain_error("jacobi_eigen: need a nonempty square matrix");
  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double target = kStopRatio * input.norm();

  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > target) {
    if (sweep == kMaxSweeps) {
      throw NumericError("jacobi_eigen: no convergence within " + std::to_string(kMaxSweeps) + " sweeps",
                         off);
    }
    const double threshold = sweep < 3 ? 0.2 * off / static_cast<double>(n) : 0.0;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        // Late sweeps: drop entries already negligible against both diagonals.
        const double g = 100.0 * apq;
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        if (apq <= threshold) continue;
        rotate(a, v, p, q);
      }
    }
    ++sweep;
    off = off_diagonal_norm(a);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SpectrumResult r;
  r.eigenvalues.resize(n);
  r.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    r.eigenvalues[j] = a(order[j], order[j]);
    r.eigenvectors.col(j) = v.col(order[j]);
    normalize_sign(r.eigenvectors.col(j));
  }
  const Eigen::MatrixXd resid = input * r.eigenvectors - r.eigenvectors * r.eigenvalues.asDiagonal();
  r.residual_norm = resid.colwise().norm().maxCoeff();
  r.off_diagonal = off;
  r.sweeps = sweep;
  return r;
}

SpectrumResult eigen_decompose(const OperatorMatrix& op) { return jacobi_eigen(op.entries); }

double orthonormality_error(const SpectrumResult& spec) {
  const Eigen::Index n = spec.size();
  const Eigen::MatrixXd gram = spec.eigenvectors.transpose() * spec.eigenvectors;
  return (gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

CheckReport validate_spectrum(const SpectrumResult& spec, bool skip_ground_state) {
  CheckReport report;
  const Eigen::Index n = spec.size();
  const double l1 = spec.eigenvalues[0];
  report.add({"lambda1_positive", l1 > 0.0, l1, 0.0, false, ""});

  if (skip_ground_state) {
    report.add({"lambda1_simple", true, 0.0, 0.0, true, "skipped on request"});
    report.add({"ground_state_positive", true, 0.0, 0.0, true, "skipped on request"});
  } else {
    if (n == 1) {
      report.add({"lambda1_simple", true, 0.0, 0.0, false, "single eigenvalue"});
    } else {
      const double gap = spec.eigenvalues[1] - l1;
      const double tol = 1e-9 * l1;
      report.add({"lambda1_simple", gap > tol, gap, tol, false, ""});
    }
    Eigen::VectorXd phi = spec.eigenvectors.col(0);
    if (phi[0] < 0.0) phi = -phi;
    const double ratio = phi.minCoeff() / phi.cwiseAbs().maxCoeff();
    report.add({"ground_state_positive", ratio > 1e-12, ratio, 1e-12, false,
                "min(phi_1) / max|phi_1|"});
  }

  const double scale = std::max(1.0, spec.eigenvalues[n - 1]);
  const double res_tol = 1e-9 * scale;
  report.add({"eigen_residual", spec.residual_norm <= res_tol, spec.residual_norm, res_tol, false, ""});
  const double orth = orthonormality_error(spec);
  report.add({"orthonormality", orth <= 1e-10, orth, 1e-10, false, ""});
  return report;
}

}  // namespace fraclap
