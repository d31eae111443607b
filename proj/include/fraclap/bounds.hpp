#pragma once

#include <span>
#include <vector>

#include "fraclap/dirichlet_operator.hpp"
#include "fraclap/domain.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/spectrum.hpp"

namespace fraclap {

/// Largest admissible k for each of the three eigenvalue-sum bounds.
struct Eligibility {
  int upper_avg = 0;
  int upper_next = 0;
  int lower = 0;
};

/// floor(min{1, V_d/2^d} n), floor(min{1, V_d/2^{d+1}} n) and
/// floor(min{1, (a/(2 pi))^d V_d} n) with a = sqrt(3) 2^{1-1/alpha}.
Eligibility eligibility(int dim, const AlphaParam& alpha, int omega_size);

/// Weyl-type leading term (2 pi)^alpha d/(d+alpha) (k/(V_d n))^{alpha/d}.
double leading_term(int k, int dim, const AlphaParam& alpha, int omega_size);

/// Bound on (1/k) sum_{i<=k} lambda_i: leading term + |d Omega|/n.
/// Throws std::out_of_range for k outside [1, eligibility().upper_avg].
double upper_avg_bound(int k, int dim, const AlphaParam& alpha, int omega_size,
                       const BoundaryMeasure& boundary);

/// Bound on lambda_{k+1}: 2^{(d+alpha)/d} times the leading term + 2 |d Omega|/n.
double upper_next_bound(int k, int dim, const AlphaParam& alpha, int omega_size,
                        const BoundaryMeasure& boundary);

/// Lower bound on the average: leading term minus
/// (2 pi)^{2 alpha} 12^{-alpha/2} d/(d+2 alpha) (k/(V_d n))^{2 alpha/d}.
double lower_avg_bound(int k, int dim, const AlphaParam& alpha, int omega_size);

/// Radial cut of phi_minorant, sqrt(3) 2^{1-1/alpha}.
double minorant_radius(const AlphaParam& alpha);

/// |z|^alpha - 12^{-alpha/2} |z|^{2 alpha} for |z| <= minorant_radius, and the
/// maximum of that profile, 12^{alpha/2}/4, beyond. Bounded by phi_symbol^{alpha/2}
/// on the cube.
double phi_minorant(std::span<const double> z, const AlphaParam& alpha);

struct BoundRow {
  int k = 0;
  double avg = 0.0;
  double lambda_k = 0.0;
  /// lambda_{k+1}; 0 when k = n.
  double lambda_next = 0.0;
  bool eligible_upper_avg = false;
  bool eligible_upper_next = false;
  bool eligible_lower = false;
  /// NaN where not eligible.
  double upper_avg = 0.0;
  double upper_next = 0.0;
  double lower_avg = 0.0;
  /// Signed so that >= 0 means the inequality holds; NaN where not eligible.
  double margin_upper_avg = 0.0;
  double margin_upper_next = 0.0;
  double margin_lower = 0.0;
  /// lambda_k - avg_k.
  double margin_chain = 0.0;
};

struct BoundReport {
  int dim = 0;
  double alpha = 0.0;
  int omega_size = 0;
  double boundary = 0.0;
  Eligibility limits;
  std::vector<BoundRow> rows;
  /// True when no k is eligible for the lower bound (it then passes vacuously).
  bool lower_vacuous = false;
  bool passed = true;
  int violations = 0;
};

/// Inequality slack 1e-8 max(1, |bound|).
double bound_slack(double bound);

BoundReport verify_bounds(const Domain& domain, const AlphaParam& alpha, const SpectrumResult& spectrum,
                          const BoundaryMeasure& boundary);

/// Integral of Phi^{alpha/2} over the ball |z| <= R (R <= pi) by radial
/// shells, with d V_d R^{d+alpha}/(d+alpha) as the analytic majorant.
/// Supported for d <= 3.
struct BallIntegral {
  double value = 0.0;
  double majorant = 0.0;
};
BallIntegral ball_symbol_integral(int dim, const AlphaParam& alpha, double radius);

struct Lemma5Result {
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs.
  double slack = 0.0;
  /// Largest magnitude among the terms of both sides.
  double scale = 0.0;
  BallIntegral ball;
};

/// Both sides of
///   lambda_{k+1}(n |B| - (2 pi)^d k) <= n int_B Phi^{alpha/2} - (2 pi)^d sum_{j<=k} lambda_j + |B| |d Omega|
/// for the ball B of radius R, with lambda_{n+1} = 0.
/// Throws std::domain_error for R outside (0, pi] or k outside [1, n].
Lemma5Result lemma5_check(const Domain& domain, const AlphaParam& alpha, const SpectrumResult& spectrum,
                          const BoundaryMeasure& boundary, int k, double radius);

}  // namespace fraclap
