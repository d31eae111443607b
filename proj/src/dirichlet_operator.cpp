#include "fraclap/dirichlet_operator.hpp"

#include <cmath>
#include <stdexcept>

#include "fraclap/errors.hpp"

namespace fraclap {

namespace {

// Dense lookup over absolute offsets in [0, K]^d, filled from the table.
class OffsetGrid {
 public:
  OffsetGrid(const KernelTable& table, int max_abs)
      : dim_(table.dim()), k1_(max_abs + 1) {
    std::size_t n = 1;
    for (int i = 0; i < dim_; ++i) n *= static_cast<std::size_t>(k1_);
    value_.assign(n, 0.0);
    error_.assign(n, 0.0);
    Point v(static_cast<std::size_t>(dim_), 0);
    for (std::size_t idx = 0; idx < n; ++idx) {
      std::size_t rem = idx;
      for (int i = dim_ - 1; i >= 0; --i) {
        v[i] = static_cast<int>(rem % k1_);
        rem /= k1_;
      }
      if (idx == 0) continue;
      if (auto e = table.find(v)) {
        value_[idx] = e->value;
        error_[idx] = e->error;
      } else {
        value_[idx] = std::nan("");
      }
    }
  }

  std::size_t index(const Point& x, const Point& y) const {
    std::size_t idx = 0;
    for (int i = 0; i < dim_; ++i) idx = idx * k1_ + static_cast<std::size_t>(std::abs(x[i] - y[i]));
    return idx;
  }
  double value(std::size_t idx) const { return value_[idx]; }
  double error(std::size_t idx) const { return error_[idx]; }

 private:
  int dim_;
  std::size_t k1_;
  std::vector<double> value_;
  std::vector<double> error_;
};

void require_length(const OperatorMatrix& op, Eigen::Index n, const char* what) {
  if (n != op.size()) throw std::domain_error(std::string(what) + ": vector length does not match |Omega|");
}

}  // namespace

OperatorMatrix assemble(const Domain& domain, KernelTable& table, KernelMethod method) {
  if (table.dim() != domain.dim()) throw std::domain_error("assemble: kernel table dimension mismatch");
  const int K = domain.max_offset();
  const auto& verts = domain.vertices();
  const std::size_t n = domain.size();

  if (method == KernelMethod::fourier) {
    table.fill_fourier(K);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Point diff(verts[i].size());
        for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = verts[i][c] - verts[j][c];
        table.ensure(diff, KernelMethod::time_integral);
      }
    }
  }
  const double mass = table.total_mass();
  const OffsetGrid grid(table, K);

  OperatorMatrix op{domain, table.alpha(), Eigen::MatrixXd(n, n), mass, 0.0};
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    op.entries(i, i) = mass;
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t idx = grid.index(verts[i], verts[j]);
      const double q = grid.value(idx);
      if (!(q > 0.0)) throw std::logic_error("assemble: kernel value missing or non-positive");
      op.entries(i, j) = -q;
      op.entries(j, i) = -q;
      err += 2.0 * grid.error(idx);
    }
  }
  op.entry_error = err;
  return op;
}

OperatorMatrix assemble(const Domain& domain, const AlphaParam& alpha, const QuadratureSpec& quad,
                        KernelMethod method) {
  KernelTable table(domain.dim(), alpha, quad);
  return assemble(domain, table, method);
}

OperatorMatrix assemble(const Domain& domain, const AlphaParam& alpha) {
  return assemble(domain, alpha, QuadratureSpec::for_dimension(domain.dim()));
}

BoundaryMeasure boundary_term(const OperatorMatrix& op) {
  BoundaryMeasure b;
  b.value = op.entries.sum();
  b.method = BoundaryMethod::identity;
  b.error_bound = op.entry_error + 1e-15 * static_cast<double>(op.size()) * op.total_mass;
  return b;
}

BoundaryMeasure boundary_term(const Domain& domain, const AlphaParam& alpha,
                              const QuadratureSpec& quad) {
  return boundary_term(assemble(domain, alpha, quad));
}

BoundaryMeasure boundary_term_direct(const Domain& domain, const AlphaParam& alpha,
                                     const QuadratureSpec& quad, int shell) {
  const int dim = domain.dim();
  const int reach = domain.max_abs_coordinate();
  if (shell < reach) throw std::domain_error("boundary_term_direct: shell must contain Omega");

  KernelTable table(dim, alpha, quad);
  table.fill_fourier(shell + reach);
  const OffsetGrid grid(table, shell + reach);

  double value = 0.0;
  double err = 0.0;
  Point y(static_cast<std::size_t>(dim), -shell);
  while (true) {
    if (!domain.contains(y)) {
      for (const auto& x : domain.vertices()) {
        const std::size_t idx = grid.index(x, y);
        value += grid.value(idx);
        err += grid.error(idx);
      }
    }
    int i = dim - 1;
    for (; i >= 0; --i) {
      if (++y[i] <= shell) break;
      y[i] = -shell;
    }
    if (i < 0) break;
  }

  // One-dimensional tails: tail(K) = S_1 - 2 sum_{m=1..K} Q_1(m).
  const auto block1 = fourier_coefficient_block(1, alpha, QuadratureSpec::for_dimension(1), shell);
  std::vector<double> tail(static_cast<std::size_t>(shell + 1));
  double acc = block1.total_mass();
  double acc_err = block1.error[0];
  tail[0] = acc;
  for (int m = 1; m <= shell; ++m) {
    acc += 2.0 * block1.coefficient[m];
    acc_err += 2.0 * block1.error[m];
    tail[m] = acc;
  }
  double truncation = 0.0;
  for (const auto& x : domain.vertices()) {
    truncation += dim * (std::max(tail[shell - linf_norm(x)], 0.0) + acc_err);
  }

  return {value, BoundaryMethod::truncated_direct, truncation + err};
}

Eigen::VectorXd apply(const OperatorMatrix& op, const Eigen::VectorXd& u) {
  require_length(op, u.size(), "apply");
  return op.entries * u;
}

Eigen::VectorXcd apply(const OperatorMatrix& op, const Eigen::VectorXcd& u) {
  require_length(op, u.size(), "apply");
  return op.entries.cast<std::complex<double>>() * u;
}

std::complex<double> quadratic_form(const OperatorMatrix& op, const Eigen::VectorXcd& u,
                                    const Eigen::VectorXcd& v) {
  require_length(op, u.size(), "quadratic_form");
  require_length(op, v.size(), "quadratic_form");
  // Eigen's dot conjugates its first argument.
  return v.dot(apply(op, u));
}

std::complex<double> quadratic_form_double_sum(const OperatorMatrix& op, const Eigen::VectorXcd& u,
                                               const Eigen::VectorXcd& v) {
  require_length(op, u.size(), "quadratic_form_double_sum");
  require_length(op, v.size(), "quadratic_form_double_sum");
  const Eigen::Index n = op.size();
  std::complex<double> pair_sum = 0.0;
  std::complex<double> residual_sum = 0.0;
  for (Eigen::Index x = 0; x < n; ++x) {
    double row = 0.0;
    for (Eigen::Index y = 0; y < n; ++y) {
      row += op.entries(x, y);
      if (y == x) continue;
      const double q = -op.entries(x, y);
      pair_sum += q * (u[x] - u[y]) * std::conj(v[x] - v[y]);
    }
    residual_sum += row * u[x] * std::conj(v[x]);
  }
  return 0.5 * pair_sum + residual_sum;
}

Eigen::VectorXd solve_poisson(const OperatorMatrix& op, const Eigen::VectorXd& f) {
  require_length(op, f.size(), "solve_poisson");
  const double fnorm = f.norm();
  if (fnorm == 0.0) return Eigen::VectorXd::Zero(f.size());
  const Eigen::LLT<Eigen::MatrixXd> llt(op.entries);
  if (llt.info() != Eigen::Success) {
    throw NumericError("solve_poisson: Cholesky factorization failed", std::nan(""));
  }
  Eigen::VectorXd u = llt.solve(f);
  u += llt.solve(f - op.entries * u);
  const double residual = (op.entries * u - f).norm();
  if (!(residual <= 1e-10 * fnorm)) {
    throw NumericError("solve_poisson: residual above 1e-10 ||f||", residual / fnorm);
  }
  return u;
}

}  // namespace fraclap
