#include "fraclap/kernel.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fraclap/errors.hpp"
#include "fraclap/heat_kernel.hpp"
#include "fraclap/special_functions.hpp"

namespace fraclap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr unsigned kMaxDepth = 15;

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

std::string offset_string(std::span<const int> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

bool is_zero(std::span<const int> v) {
  return std::all_of(v.begin(), v.end(), [](int c) { return c == 0; });
}

// Truncation time T for the tail integral so that the neglected mass is below
// `budget`, using p <= 1 and p <= (c / sqrt t)^d.
double tail_cutoff(int dim, const AlphaParam& alpha, double budget) {
  const double a = alpha.value();
  const double scale = alpha.inv_gamma() / budget;
  const double t_trivial = std::pow(2.0 / a * scale, 2.0 / a);
  const double t_decay =
      std::pow(std::pow(kHeatDecayConstant, dim) * 2.0 / (a + dim) * scale, 2.0 / (a + dim));
  return std::min(t_trivial, t_decay);
}

}  // namespace

AlphaParam::AlphaParam(double alpha) : alpha_(alpha), inv_gamma_(0.0) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::domain_error("alpha must lie in the open interval (0, 2)");
  }
  inv_gamma_ = alpha / (2.0 * special::lanczos_gamma(1.0 - 0.5 * alpha));
}

QuadratureSpec QuadratureSpec::for_dimension(int dim) {
  QuadratureSpec q;
  switch (dim) {
    case 1: q.fourier_grid_per_dim = 4096; break;
    case 2: q.fourier_grid_per_dim = 512; break;
    case 3: q.fourier_grid_per_dim = 128; break;
    default: q.fourier_grid_per_dim = 32; break;
  }
  return q;
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw std::domain_error("rel_tol must lie in (0, 1e-2]");
  if (!(abs_tol > 0.0 && abs_tol <= 1e-2)) throw std::domain_error("abs_tol must lie in (0, 1e-2]");
  if (fourier_grid_per_dim < 16 || fourier_grid_per_dim % 2 != 0) {
    throw std::domain_error("fourier_grid_per_dim must be even and >= 16");
  }
  if (!(time_split > 0.0)) throw std::domain_error("time_split must be positive");
}

double phi_symbol(std::span<const double> z) {
  double sum = 0.0;
  for (double zi : z) {
    if (!(zi >= -kPi && zi <= kPi)) throw std::domain_error("phi_symbol: coordinate outside [-pi, pi]");
    const double s = std::sin(0.5 * zi);
    sum += 4.0 * s * s;
  }
  return sum;
}

QuadratureValue q_alpha_time_integral(std::span<const int> offset, const AlphaParam& alpha,
                                      const QuadratureSpec& quad) {
  quad.validate();
  if (offset.empty() || is_zero(offset)) {
    throw std::domain_error("q_alpha_time_integral: offset must be nonzero");
  }
  const int dim = static_cast<int>(offset.size());
  const int n = l1_norm(offset);
  const double h = alpha.half();
  const double split = quad.time_split;
  const double log_split = std::log(split);

  // (0, split]: t = split * u^beta turns t^{n-1-alpha/2} dt into a factor u du.
  const double beta = 2.0 / (n - h);
  auto near = [&](double u) -> double {
    if (u <= 0.0) return 0.0;
    const double t = split * std::pow(u, beta);
    double prod = 1.0;
    for (int c : offset) {
      const int m = std::abs(c);
      // (split/t)^m p(t, m) = split^m * p(t, m) / t^m
      double g;
      if (t < 1.0) {
        const double r = heat_kernel_1d_reduced(t, m);
        g = r == 0.0 ? 0.0 : std::exp(std::log(r) + m * log_split);
      } else {
        g = heat_kernel_1d(t, m) * std::pow(split / t, m);
      }
      prod *= g;
      if (prod == 0.0) return 0.0;
    }
    return u * prod;
  };
  double err_near = 0.0;
  const double near_value = Kronrod::integrate(near, 0.0, 1.0, kMaxDepth, quad.rel_tol, &err_near);
  const double near_scale = std::pow(split, -h) * beta;

  // [split, T] in s = log t: integrand e^{-s alpha/2} p(e^s).
  auto far = [&](double s) -> double {
    const double t = std::exp(s);
    double prod = std::exp(-h * s);
    for (int c : offset) {
      prod *= heat_kernel_1d(t, c);
      if (prod == 0.0) return 0.0;
    }
    return prod;
  };
  const double norm = alpha.inv_gamma();
  // The neglected tail beyond T is nearly the same for every offset, so a
  // budget tied to abs_tol alone swamps small kernel values; it is tightened
  // to a quarter of the relative target once the value is known.
  QuadratureValue out;
  double budget = 0.5 * quad.abs_tol;
  for (int pass = 0; pass < 2; ++pass) {
    const double t_end = std::max(tail_cutoff(dim, alpha, budget), split * std::exp(1.0));
    double err_far = 0.0;
    const double far_value =
        Kronrod::integrate(far, log_split, std::log(t_end), kMaxDepth, quad.rel_tol, &err_far);
    out.value = norm * (near_scale * near_value + far_value);
    out.error = norm * (near_scale * err_near + err_far) + budget;
    const double relative_budget = 0.25 * quad.rel_tol * std::abs(out.value);
    if (!(budget > relative_budget) || !(relative_budget > 0.0)) break;
    budget = relative_budget;
  }
  const double target = quad.rel_tol * std::abs(out.value) + quad.abs_tol;
  if (!(out.error <= target) || !(out.value > 0.0)) {
    throw ConvergenceError("q_alpha_time_integral: tolerance not reached at offset " +
                               offset_string(offset),
                           out.error);
  }
  return out;
}


namespace {

// Trapezoid coefficients for grids fine/stride over all v in [0, max_abs]^d,
// evaluating Phi^{alpha/2} once on the finest grid (folded to the half cube).
std::vector<std::vector<double>> trapezoid_levels(int dim, double half_alpha, int fine,
                                                  std::span<const int> strides, int max_abs) {
  if (dim < 1) throw std::domain_error("dimension must be >= 1");
  const int H = fine / 2 + 1;
  const int K1 = max_abs + 1;
  std::size_t block = 1;
  for (int i = 0; i < dim; ++i) block *= static_cast<std::size_t>(K1);
  std::size_t outer_block = block / static_cast<std::size_t>(K1);

  std::vector<double> cos_table(static_cast<std::size_t>(fine));
  for (int r = 0; r < fine; ++r) cos_table[r] = std::cos(2.0 * kPi * r / fine);
  std::vector<double> sin2(static_cast<std::size_t>(H));
  for (int j = 0; j < H; ++j) {
    const double s = std::sin(kPi * j / fine);
    sin2[j] = 4.0 * s * s;
  }
  auto cosv = [&](int v, int j) {
    return cos_table[static_cast<std::size_t>((static_cast<std::int64_t>(v) * j) % fine)];
  };
  auto weight = [&](int j) { return (j == 0 || j == H - 1) ? 1.0 : 2.0; };

  const std::size_t levels = strides.size();
  std::vector<std::vector<double>> result(levels, std::vector<double>(block, 0.0));
  std::vector<double> line(static_cast<std::size_t>(H));
  std::vector<double> contracted(static_cast<std::size_t>(K1));
  std::vector<double> outer_cos(outer_block);
  std::vector<int> jo(static_cast<std::size_t>(dim - 1), 0);

  while (true) {
    double base = 0.0;
    for (int j : jo) base += sin2[j];
    for (int j = 0; j < H; ++j) line[j] = std::pow(base + sin2[j], half_alpha);

    for (std::size_t l = 0; l < levels; ++l) {
      const int s = strides[l];
      if (!std::all_of(jo.begin(), jo.end(), [s](int j) { return j % s == 0; })) continue;
      double wo = 1.0;
      for (int j : jo) wo *= weight(j);
      for (int v = 0; v < K1; ++v) {
        double acc = 0.0;
        for (int j = 0; j < H; j += s) acc += weight(j) * line[j] * cosv(v, j);
        contracted[v] = acc;
      }
      // Outer cosine products over v_outer in [0, max_abs]^{d-1}.
      for (std::size_t idx = 0; idx < outer_block; ++idx) {
        double prod = wo;
        std::size_t rem = idx;
        for (int i = dim - 2; i >= 0; --i) {
          const int v = static_cast<int>(rem % K1);
          rem /= K1;
          prod *= cosv(v, jo[i]);
        }
        outer_cos[idx] = prod;
      }
      auto& out = result[l];
      for (std::size_t idx = 0; idx < outer_block; ++idx) {
        const double c = outer_cos[idx];
        double* row = out.data() + idx * K1;
        for (int v = 0; v < K1; ++v) row[v] += c * contracted[v];
      }
    }

    int i = dim - 2;
    for (; i >= 0; --i) {
      if (++jo[i] < H) break;
      jo[i] = 0;
    }
    if (i < 0) break;
  }

  for (std::size_t l = 0; l < levels; ++l) {
    const double n = static_cast<double>(fine / strides[l]);
    const double norm = std::pow(n, -dim);
    for (double& x : result[l]) x *= norm;
  }
  return result;
}

}  // namespace

std::vector<double> symbol_trapezoid_coefficients(int dim, const AlphaParam& alpha, int grid,
                                                  int max_abs) {
  if (grid < 2 || grid % 2 != 0) throw std::domain_error("grid must be even");
  if (max_abs < 0) throw std::domain_error("max_abs must be non-negative");
  const int stride[] = {1};
  return std::move(trapezoid_levels(dim, alpha.half(), grid, stride, max_abs)[0]);
}

std::size_t FourierBlock::index(std::span<const int> offset) const {
  if (static_cast<int>(offset.size()) != dim) throw std::domain_error("FourierBlock: dimension mismatch");
  std::size_t idx = 0;
  for (int c : offset) {
    const int a = std::abs(c);
    if (a > max_abs) throw std::out_of_range("FourierBlock: offset outside the computed block");
    idx = idx * static_cast<std::size_t>(max_abs + 1) + static_cast<std::size_t>(a);
  }
  return idx;
}

FourierBlock fourier_coefficient_block(int dim, const AlphaParam& alpha,
                                       const QuadratureSpec& quad, int max_abs) {
  quad.validate();
  if (dim < 1) throw std::domain_error("dimension must be >= 1");
  if (max_abs < 0) throw std::domain_error("max_abs must be non-negative");
  int base = std::max(quad.fourier_grid_per_dim, 8 * max_abs);
  base += base % 2;
  const int strides[] = {4, 2, 1};
  auto levels = trapezoid_levels(dim, alpha.half(), 4 * base, strides, max_abs);

  const double p = dim + alpha.value();
  const double r1 = std::pow(2.0, p);
  const double r2 = std::pow(2.0, p + 2.0);

  FourierBlock out;
  out.dim = dim;
  out.max_abs = max_abs;
  out.base_grid = base;
  out.coefficient.resize(levels[0].size());
  out.error.resize(levels[0].size());
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(levels[2][0]);
  for (std::size_t i = 0; i < levels[0].size(); ++i) {
    const double t1 = levels[0][i], t2 = levels[1][i], t4 = levels[2][i];
    const double e1 = (r1 * t2 - t1) / (r1 - 1.0);
    const double e2 = (r1 * t4 - t2) / (r1 - 1.0);
    const double e = (r2 * e2 - e1) / (r2 - 1.0);
    out.coefficient[i] = e;
    out.error[i] = std::abs(e - e2) + floor;
  }
  return out;
}

QuadratureValue q_alpha_fourier(std::span<const int> offset, const AlphaParam& alpha,
                                const QuadratureSpec& quad) {
  if (offset.empty() || is_zero(offset)) {
    throw std::domain_error("q_alpha_fourier: offset must be nonzero");
  }
  const int dim = static_cast<int>(offset.size());
  const auto block = fourier_coefficient_block(dim, alpha, quad, linf_norm(offset));
  const std::size_t i = block.index(offset);
  return {-block.coefficient[i], block.error[i]};
}

QuadratureValue total_mass(int dim, const AlphaParam& alpha, const QuadratureSpec& quad) {
  const auto block = fourier_coefficient_block(dim, alpha, quad, 0);
  QuadratureValue out{block.coefficient[0], block.error[0]};
  if (!(out.error <= quad.rel_tol * out.value + quad.abs_tol)) {
    throw ConvergenceError("total_mass: extrapolation error above tolerance", out.error);
  }
  return out;
}

}  // namespace fraclap
