#include "fraclap/fourier_verify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fraclap/errors.hpp"

namespace fraclap {

namespace {

constexpr double kPi = std::numbers::pi;

void require_size(const Domain& domain, const Eigen::VectorXcd& u, const char* what) {
  if (u.size() != static_cast<Eigen::Index>(domain.size())) {
    throw std::domain_error(std::string(what) + ": vector length does not match |Omega|");
  }
}

void require_cube(std::span<const double> z, int dim, const char* what) {
  if (static_cast<int>(z.size()) != dim) throw std::domain_error(std::string(what) + ": dimension mismatch");
  for (double c : z) {
    if (!(std::abs(c) <= kPi)) throw std::domain_error(std::string(what) + ": z outside [-pi, pi]^d");
  }
}

double dot(const Point& x, std::span<const double> z) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * z[i];
  return s;
}

// sum_{x,y} u(x) conj(u(y)) c(x - y), with c looked up by absolute offset.
template <class Coef, class Err>
FormCheck contract(const OperatorMatrix& op, const Eigen::VectorXcd& u, Coef coef, Err err) {
  const Domain& domain = op.domain;
  require_size(domain, u, "form_check");
  if (u.squaredNorm() == 0.0) throw std::domain_error("form_check: u must be nonzero");
  const auto& verts = domain.vertices();
  const std::size_t n = verts.size();
  std::complex<double> acc = 0.0;
  double bound = 0.0;
  Point diff(static_cast<std::size_t>(domain.dim()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = std::abs(verts[i][c] - verts[j][c]);
      const std::complex<double> w = u[i] * std::conj(u[j]);
      acc += w * coef(diff);
      bound += std::abs(w) * err(diff);
    }
  }
  FormCheck out;
  out.quadrature = acc.real();
  out.form = quadratic_form(op, u, u).real();
  out.rel_error = std::abs(out.quadrature - out.form) / std::abs(out.form);
  out.quadrature_error = bound;
  return out;
}

}  // namespace

std::complex<double> pairing(const Domain& domain, const Eigen::VectorXcd& u, std::span<const double> z) {
  require_size(domain, u, "pairing");
  require_cube(z, domain.dim(), "pairing");
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    s += u[static_cast<Eigen::Index>(i)] * std::polar(1.0, -dot(domain[i], z));
  }
  return s;
}

Eigen::VectorXcd plane_wave(const Domain& domain, std::span<const double> z) {
  require_cube(z, domain.dim(), "plane_wave");
  Eigen::VectorXcd h(static_cast<Eigen::Index>(domain.size()));
  for (std::size_t i = 0; i < domain.size(); ++i) h[static_cast<Eigen::Index>(i)] = std::polar(1.0, dot(domain[i], z));
  return h;
}

std::vector<int> plancherel_grid(const Domain& domain) {
  auto m = domain.extent();
  for (int& e : m) e = 2 * e + 3;
  return m;
}

double plancherel_check(const Domain& domain, const Eigen::VectorXcd& u) {
  require_size(domain, u, "plancherel_check");
  const double norm2 = u.squaredNorm();
  if (norm2 == 0.0) throw std::domain_error("plancherel_check: u must be nonzero");
  const int d = domain.dim();
  const auto m = plancherel_grid(domain);
  std::size_t total = 1;
  for (int k : m) total *= static_cast<std::size_t>(k);

  // Grid points z_i = 2 pi j_i / m_i - pi; the sum of |<u, h_z>|^2 over the
  // grid divided by its size is the cube average.
  std::vector<int> j(static_cast<std::size_t>(d), 0);
  std::vector<double> z(static_cast<std::size_t>(d));
  double sum = 0.0;
  for (std::size_t c = 0; c < total; ++c) {
    for (int i = 0; i < d; ++i) z[i] = 2.0 * kPi * j[i] / m[i] - kPi;
    sum += std::norm(pairing(domain, u, z));
    for (int i = d - 1; i >= 0; --i) {
      if (++j[i] < m[i]) break;
      j[i] = 0;
    }
  }
  return std::abs(sum / static_cast<double>(total) - norm2) / norm2;
}

FormCheck form_check(const OperatorMatrix& op, const Eigen::VectorXcd& u, const QuadratureSpec& quad) {
  const auto block = fourier_coefficient_block(op.domain.dim(), op.alpha, quad, op.domain.max_offset());
  auto out = contract(
      op, u, [&](const Point& v) { return block.coefficient[block.index(v)]; },
      [&](const Point& v) { return block.error[block.index(v)]; });
  if (out.quadrature_error > 1e-6 * std::abs(out.quadrature) + quad.abs_tol) {
    throw ConvergenceError("form_check: Fourier coefficients missed the tolerance", out.quadrature_error);
  }
  return out;
}

FormCheck form_check(const OperatorMatrix& op, const Eigen::VectorXcd& u) {
  return form_check(op, u, QuadratureSpec::for_dimension(op.domain.dim()));
}

FormCheck form_check_at_grid(const OperatorMatrix& op, const Eigen::VectorXcd& u, int grid) {
  const int d = op.domain.dim();
  const int k1 = op.domain.max_offset() + 1;
  const auto coef = symbol_trapezoid_coefficients(d, op.alpha, grid, k1 - 1);
  auto index = [&](const Point& v) {
    std::size_t idx = 0;
    for (int c : v) idx = idx * static_cast<std::size_t>(k1) + static_cast<std::size_t>(c);
    return idx;
  };
  return contract(
      op, u, [&](const Point& v) { return coef[index(v)]; }, [](const Point&) { return 0.0; });
}

HzBound hz_bound_check(const OperatorMatrix& op, const BoundaryMeasure& boundary, std::span<const double> z) {
  const auto h = plane_wave(op.domain, z);
  HzBound out;
  out.lhs = std::abs(quadratic_form(op, h, h));
  out.rhs = std::pow(phi_symbol(z), op.alpha.half()) * static_cast<double>(op.domain.size()) + boundary.value;
  out.slack = out.rhs - out.lhs;
  return out;
}

}  // namespace fraclap
