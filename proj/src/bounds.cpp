#include "fraclap/bounds.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fraclap/special_functions.hpp"

namespace fraclap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Ratio k / (V_d n) raised to 1/d.
double weyl_radius_factor(int k, int dim, int omega_size) {
  return std::pow(k / (special::unit_ball_volume(dim) * omega_size), 1.0 / dim);
}

void require_eligible(int k, int limit, const char* name) {
  if (k < 1 || k > limit) {
    throw std::out_of_range(std::string(name) + ": k = " + std::to_string(k) +
                            " outside the admissible range 1.." + std::to_string(limit));
  }
}

// Thresholds that are integers in exact arithmetic must not lose a unit to
// rounding in the last bits.
int clamp_floor(double x, int omega_size) {
  return std::clamp(static_cast<int>(std::floor(x * (1.0 + 1e-12))), 0, omega_size);
}

// Phi^{alpha/2} at a point given by 4 sin^2(z_i / 2) summands.
double symbol_power(std::span<const double> z, double half_alpha) {
  double phi = 0.0;
  for (double c : z) {
    const double s = std::sin(0.5 * c);
    phi += 4.0 * s * s;
  }
  return std::pow(phi, half_alpha);
}

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
using Legendre = boost::math::quadrature::gauss<double, 64>;
constexpr int kAngles = 256;

// Average of Phi^{alpha/2} over the circle of radius r (d = 2).
double circle_mean(double r, double half_alpha) {
  double s = 0.0;
  for (int j = 0; j < kAngles; ++j) {
    const double th = 2.0 * kPi * j / kAngles;
    const double z[2] = {r * std::cos(th), r * std::sin(th)};
    s += symbol_power(z, half_alpha);
  }
  return s / kAngles;
}

// Integral of Phi^{alpha/2} over the unit-sphere directions at radius r (d = 3),
// Gauss-Legendre in u = cos(polar angle), trapezoid in azimuth.
double sphere_integral(double r, double half_alpha) {
  auto ring = [&](double u) {
    const double rho = r * std::sqrt(std::max(0.0, 1.0 - u * u));
    double s = 0.0;
    for (int j = 0; j < kAngles / 2; ++j) {
      const double th = 2.0 * kPi * j / (kAngles / 2);
      const double z[3] = {rho * std::cos(th), rho * std::sin(th), r * u};
      s += symbol_power(z, half_alpha);
    }
    return 2.0 * kPi * s / (kAngles / 2);
  };
  return Legendre::integrate(ring, -1.0, 1.0);
}

}  // namespace

Eligibility eligibility(int dim, const AlphaParam& alpha, int omega_size) {
  if (dim < 1) throw std::domain_error("eligibility: dimension must be >= 1");
  if (omega_size < 1) throw std::domain_error("eligibility: |Omega| must be >= 1");
  const double vd = special::unit_ball_volume(dim);
  const double two_d = std::ldexp(1.0, dim);
  const double lower_c = std::pow(minorant_radius(alpha) / (2.0 * kPi), dim) * vd;
  Eligibility e;
  e.upper_avg = clamp_floor(std::min(1.0, vd / two_d) * omega_size, omega_size);
  e.upper_next = clamp_floor(std::min(1.0, vd / (2.0 * two_d)) * omega_size, omega_size);
  e.lower = clamp_floor(std::min(1.0, lower_c) * omega_size, omega_size);
  return e;
}

double leading_term(int k, int dim, const AlphaParam& alpha, int omega_size) {
  const double a = alpha.value();
  return std::pow(2.0 * kPi, a) * dim / (dim + a) *
         std::pow(weyl_radius_factor(k, dim, omega_size), a);
}

double upper_avg_bound(int k, int dim, const AlphaParam& alpha, int omega_size,
                       const BoundaryMeasure& boundary) {
  require_eligible(k, eligibility(dim, alpha, omega_size).upper_avg, "upper_avg_bound");
  return leading_term(k, dim, alpha, omega_size) + boundary.value / omega_size;
}

double upper_next_bound(int k, int dim, const AlphaParam& alpha, int omega_size,
                        const BoundaryMeasure& boundary) {
  require_eligible(k, eligibility(dim, alpha, omega_size).upper_next, "upper_next_bound");
  const double a = alpha.value();
  return std::pow(2.0, (dim + a) / dim) * leading_term(k, dim, alpha, omega_size) +
         2.0 * boundary.value / omega_size;
}

double lower_avg_bound(int k, int dim, const AlphaParam& alpha, int omega_size) {
  require_eligible(k, eligibility(dim, alpha, omega_size).lower, "lower_avg_bound");
  const double a = alpha.value();
  const double rho = weyl_radius_factor(k, dim, omega_size);
  const double second = std::pow(2.0 * kPi, 2.0 * a) * std::pow(12.0, -0.5 * a) * dim /
                        (dim + 2.0 * a) * std::pow(rho, 2.0 * a);
  return leading_term(k, dim, alpha, omega_size) - second;
}

double minorant_radius(const AlphaParam& alpha) {
  return std::sqrt(3.0) * std::pow(2.0, 1.0 - 1.0 / alpha.value());
}

double phi_minorant(std::span<const double> z, const AlphaParam& alpha) {
  double r2 = 0.0;
  for (double c : z) r2 += c * c;
  const double a = alpha.value();
  if (std::sqrt(r2) > minorant_radius(alpha)) return 0.25 * std::pow(12.0, 0.5 * a);
  const double ra = std::pow(r2, 0.5 * a);
  return ra - std::pow(12.0, -0.5 * a) * ra * ra;
}

double bound_slack(double bound) { return 1e-8 * std::max(1.0, std::abs(bound)); }

BoundReport verify_bounds(const Domain& domain, const AlphaParam& alpha, const SpectrumResult& spectrum,
                          const BoundaryMeasure& boundary) {
  const int n = static_cast<int>(domain.size());
  if (spectrum.size() != n) throw std::domain_error("verify_bounds: spectrum size does not match |Omega|");
  const int d = domain.dim();

  BoundReport rep;
  rep.dim = d;
  rep.alpha = alpha.value();
  rep.omega_size = n;
  rep.boundary = boundary.value;
  rep.limits = eligibility(d, alpha, n);
  rep.lower_vacuous = rep.limits.lower == 0;

  auto record = [&rep](double margin, double bound) {
    if (margin < -bound_slack(bound)) {
      rep.passed = false;
      ++rep.violations;
    }
  };

  double partial = 0.0;
  for (int k = 1; k <= n; ++k) {
    BoundRow row;
    row.k = k;
    row.lambda_k = spectrum.eigenvalues[k - 1];
    partial += row.lambda_k;
    row.avg = partial / k;
    row.lambda_next = k < n ? spectrum.eigenvalues[k] : 0.0;
    row.eligible_upper_avg = k <= rep.limits.upper_avg;
    row.eligible_upper_next = k <= rep.limits.upper_next;
    row.eligible_lower = k <= rep.limits.lower;

    row.upper_avg = row.upper_next = row.lower_avg = kNaN;
    row.margin_upper_avg = row.margin_upper_next = row.margin_lower = kNaN;
    if (row.eligible_upper_avg) {
      row.upper_avg = upper_avg_bound(k, d, alpha, n, boundary);
      row.margin_upper_avg = row.upper_avg - row.avg;
      record(row.margin_upper_avg, row.upper_avg);
    }
    if (row.eligible_upper_next) {
      row.upper_next = upper_next_bound(k, d, alpha, n, boundary);
      row.margin_upper_next = row.upper_next - row.lambda_next;
      record(row.margin_upper_next, row.upper_next);
    }
    if (row.eligible_lower) {
      row.lower_avg = lower_avg_bound(k, d, alpha, n);
      row.margin_lower = row.avg - row.lower_avg;
      record(row.margin_lower, row.lower_avg);
    }
    row.margin_chain = row.lambda_k - row.avg;
    record(row.margin_chain, row.avg);
    rep.rows.push_back(row);
  }
  return rep;
}

BallIntegral ball_symbol_integral(int dim, const AlphaParam& alpha, double radius) {
  if (!(radius > 0.0 && radius <= kPi)) {
    throw std::domain_error("ball_symbol_integral: radius must lie in (0, pi]");
  }
  if (dim < 1 || dim > 3) throw std::domain_error("ball_symbol_integral: supported for d = 1, 2, 3");
  const double h = alpha.half();
  const double a = alpha.value();
  constexpr double tol = 1e-13;
  constexpr unsigned depth = 30;

  BallIntegral out;
  out.majorant = dim * special::unit_ball_volume(dim) * std::pow(radius, dim + a) / (dim + a);
  // Radial profile r^{d-1} times the directional integral of Phi^{alpha/2}.
  auto shell = [&](double r) {
    switch (dim) {
      case 1: return 2.0 * std::pow(2.0 * std::sin(0.5 * r), a);
      case 2: return 2.0 * kPi * r * circle_mean(r, h);
      default: return r * r * sphere_integral(r, h);
    }
  };
  // r = R s^q with q = 2/(d+alpha) turns the r^{d-1+alpha} behaviour at the
  // origin into s^1.
  const double q = 2.0 / (dim + a);
  out.value = Kronrod::integrate(
      [&](double s) {
        if (s <= 0.0) return 0.0;
        const double r = radius * std::pow(s, q);
        return shell(r) * radius * q * r / (radius * s);
      },
      0.0, 1.0, depth, tol);
  return out;
}

Lemma5Result lemma5_check(const Domain& domain, const AlphaParam& alpha, const SpectrumResult& spectrum,
                          const BoundaryMeasure& boundary, int k, double radius) {
  const int n = static_cast<int>(domain.size());
  if (spectrum.size() != n) throw std::domain_error("lemma5_check: spectrum size does not match |Omega|");
  if (k < 1 || k > n) throw std::domain_error("lemma5_check: k must lie in [1, |Omega|]");
  const int d = domain.dim();

  Lemma5Result res;
  res.ball = ball_symbol_integral(d, alpha, radius);
  const double ball_volume = special::unit_ball_volume(d) * std::pow(radius, d);
  const double cube = std::pow(2.0 * kPi, d);
  const double next = k < n ? spectrum.eigenvalues[k] : 0.0;
  const double sum_k = spectrum.eigenvalues.head(k).sum();

  const double lhs_a = next * n * ball_volume;
  const double lhs_b = next * cube * k;
  const double rhs_a = n * res.ball.value;
  const double rhs_b = cube * sum_k;
  const double rhs_c = ball_volume * boundary.value;
  res.lhs = lhs_a - lhs_b;
  res.rhs = rhs_a - rhs_b + rhs_c;
  res.slack = res.rhs - res.lhs;
  res.scale = std::max({std::abs(lhs_a), std::abs(lhs_b), std::abs(rhs_a), std::abs(rhs_b), std::abs(rhs_c)});
  return res;
}

}  // namespace fraclap
