#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "fraclap/dirichlet_operator.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/spectrum.hpp"
#include "test_support.hpp"

using namespace fraclap;
using fraclap::testing::kPi;
using fraclap::testing::q1_closed;

namespace {

// Determinant by the Leibniz permutation sum; only for n <= 7.
double leibniz_det(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double det = 0.0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
    det += (inversions % 2 ? -1.0 : 1.0) * prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

double char_poly(const Eigen::MatrixXd& a, double lambda) {
  return leibniz_det(a - lambda * Eigen::MatrixXd::Identity(a.rows(), a.cols()));
}

const Check* check_named(const CheckReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}
}  // namespace

TEST_CASE("one and two vertices") {
  const AlphaParam alpha(1.0);
  const auto s1 = eigen_decompose(assemble(make_path(1), alpha));
  REQUIRE(s1.size() == 1);
  CHECK(s1.eigenvalues[0] == doctest::Approx(4.0 / kPi).epsilon(1e-12));
  CHECK(std::abs(s1.eigenvectors(0, 0)) == doctest::Approx(1.0));

  const auto s2 = eigen_decompose(assemble(make_path(2), alpha));
  CHECK(std::abs(s2.eigenvalues[0] - (4.0 / kPi - q1_closed(1))) <= 1e-10);
  CHECK(std::abs(s2.eigenvalues[1] - (4.0 / kPi + q1_closed(1))) <= 1e-10);
  CHECK(s2.eigenvalues[0] == doctest::Approx(8.0 / (3.0 * kPi)).epsilon(1e-10));
  CHECK(s2.eigenvalues[1] == doctest::Approx(16.0 / (3.0 * kPi)).epsilon(1e-10));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(s2.eigenvectors(0, 0) == doctest::Approx(r).epsilon(1e-12));
  CHECK(s2.eigenvectors(1, 0) == doctest::Approx(r).epsilon(1e-12));
  CHECK(s2.eigenvectors(0, 1) == doctest::Approx(r).epsilon(1e-12));
  CHECK(s2.eigenvectors(1, 1) == doctest::Approx(-r).epsilon(1e-12));
}

TEST_CASE("alpha near 2 approaches the discrete Dirichlet Laplacian") {
  const auto spec = eigen_decompose(assemble(make_path(10), AlphaParam(1.999)));
  for (int j = 1; j <= 10; ++j) {
    const double expect = 4.0 * std::pow(std::sin(j * kPi / 22.0), 2);
    INFO("j=" << j);
    CHECK(std::abs(spec.eigenvalues[j - 1] - expect) <= 0.02);
  }
}

TEST_CASE("Jacobi agrees with a library eigensolver") {
  for (const auto& [name, domain] : fraclap::testing::standard_suite()) {
    for (double a : fraclap::testing::standard_alphas()) {
      const auto op = assemble(domain, AlphaParam(a));
      const auto spec = eigen_decompose(op);
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(op.entries);
      INFO(name << " alpha=" << a);
      const double scale = std::max(1.0, ref.eigenvalues().cwiseAbs().maxCoeff());
      CHECK((spec.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-10 * scale);
      CHECK(std::is_sorted(spec.eigenvalues.data(), spec.eigenvalues.data() + spec.size()));
      CHECK(spec.residual_norm <= 1e-9 * scale);
      CHECK(orthonormality_error(spec) <= 1e-10);
      // Independent residual from the stored pairs.
      const Eigen::MatrixXd r = op.entries * spec.eigenvectors - spec.eigenvectors * spec.eigenvalues.asDiagonal();
      CHECK(r.colwise().norm().maxCoeff() <= 1e-9 * scale);
    }
  }
}

TEST_CASE("eigenvalues are roots of the characteristic polynomial") {
  // Irregular sets without reflection symmetry, so the spectrum is simple.
  const std::vector<Domain> sets = {Domain(1, {{0}, {1}, {3}, {7}}), Domain(2, {{0, 0}, {1, 0}, {1, 1}, {3, 1}, {3, 2}}),
                                    Domain(2, {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {0, 2}, {4, 3}}),
                                    Domain(3, {{0, 0, 0}, {1, 0, 0}, {1, 2, 0}, {0, 1, 3}, {2, 2, 2}})};
  for (const auto& domain : sets) {
    for (double a : {0.5, 1.0, 1.5}) {
      const auto op = assemble(domain, AlphaParam(a));
      const auto spec = eigen_decompose(op);
      for (Eigen::Index j = 0; j < spec.size(); ++j) {
        const double lam = spec.eigenvalues[j];
        const double h = 1e-5 * std::max(1.0, lam);
        const double p = char_poly(op.entries, lam);
        const double dp = (char_poly(op.entries, lam + h) - char_poly(op.entries, lam - h)) / (2.0 * h);
        INFO("n=" << domain.size() << " alpha=" << a << " j=" << j);
        REQUIRE(dp != 0.0);
        // One Newton step measures the distance to the nearest root.
        CHECK(std::abs(p / dp) <= 1e-9 * std::max(1.0, lam));
      }
      // Product of eigenvalues is the determinant.
      CHECK(std::abs(spec.eigenvalues.prod() - leibniz_det(op.entries)) <= 1e-10 * std::abs(leibniz_det(op.entries)));
    }
  }
}

TEST_CASE("trace identity") {
  for (const auto& [name, domain] : fraclap::testing::standard_suite()) {
    const auto op = assemble(domain, AlphaParam(1.5));
    const auto spec = eigen_decompose(op);
    INFO(name);
    CHECK(std::abs(spec.eigenvalues.sum() - domain.size() * op.total_mass) <= 1e-10 * spec.eigenvalues.sum());
  }
}

TEST_CASE("small alpha stays positive definite") {
  const int sq[] = {5, 5};
  const auto spec = eigen_decompose(assemble(make_box(2, sq), AlphaParam(0.01)));
  CHECK(spec.eigenvalues[0] > 0.0);
  CHECK(validate_spectrum(spec).passed());
}

TEST_CASE("ground state of the standard suite") {
  for (const auto& [name, domain] : fraclap::testing::standard_suite()) {
    for (double a : fraclap::testing::standard_alphas()) {
      const auto spec = eigen_decompose(assemble(domain, AlphaParam(a)));
      const auto report = validate_spectrum(spec);
      INFO(name << " alpha=" << a);
      CHECK(report.passed());
      CHECK(spec.eigenvectors.col(0).minCoeff() > 0.0);
      CHECK(spec.eigenvalues[1] - spec.eigenvalues[0] > 1e-9 * spec.eigenvalues[0]);
    }
  }
}

TEST_CASE("eigenvector sign convention") {
  const auto spec = eigen_decompose(assemble(make_l_shape(3), AlphaParam(1.0)));
  for (Eigen::Index j = 0; j < spec.size(); ++j) {
    const auto col = spec.eigenvectors.col(j);
    const double big = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (std::abs(col[i]) > 1e-8 * big) {
        CHECK(col[i] > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("validation report items") {
  const auto spec = eigen_decompose(assemble(make_path(6), AlphaParam(1.0)));
  const auto ok = validate_spectrum(spec);
  CHECK(ok.passed());
  for (const char* name : {"lambda1_positive", "lambda1_simple", "ground_state_positive", "eigen_residual",
                           "orthonormality"}) {
    REQUIRE(check_named(ok, name) != nullptr);
    CHECK_FALSE(check_named(ok, name)->skipped);
  }

  // A ground state stored with the opposite sign is still accepted.
  auto flipped = spec;
  flipped.eigenvectors.col(0) *= -1.0;
  CHECK(validate_spectrum(flipped).passed());

  // A sign change inside phi_1 fails positivity.
  auto mixed = spec;
  mixed.eigenvectors(0, 0) = -mixed.eigenvectors(0, 0);
  const auto bad = validate_spectrum(mixed);
  CHECK_FALSE(check_named(bad, "ground_state_positive")->passed);

  // Degenerate bottom of the spectrum.
  auto degenerate = spec;
  degenerate.eigenvalues[1] = degenerate.eigenvalues[0];
  CHECK_FALSE(check_named(validate_spectrum(degenerate), "lambda1_simple")->passed);
  const auto skipped = validate_spectrum(degenerate, true);
  CHECK(check_named(skipped, "lambda1_simple")->skipped);
  CHECK(check_named(skipped, "ground_state_positive")->skipped);
  CHECK(skipped.passed());

  auto negative = spec;
  negative.eigenvalues[0] = -1.0;
  CHECK_FALSE(check_named(validate_spectrum(negative), "lambda1_positive")->passed);

  const auto one = validate_spectrum(eigen_decompose(assemble(make_path(1), AlphaParam(1.0))));
  CHECK(one.passed());
  CHECK(check_named(one, "lambda1_simple")->detail == "single eigenvalue");
}

TEST_CASE("ties keep diagonal order") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a.diagonal() << 3.0, 1.0, 3.0, 1.0;
  const auto spec = jacobi_eigen(a);
  CHECK(spec.eigenvalues[0] == 1.0);
  CHECK(spec.eigenvalues[1] == 1.0);
  CHECK(spec.eigenvectors(1, 0) == 1.0);
  CHECK(spec.eigenvectors(3, 1) == 1.0);
  CHECK(spec.eigenvectors(0, 2) == 1.0);
  CHECK(spec.eigenvectors(2, 3) == 1.0);
  const auto again = jacobi_eigen(a);
  CHECK(again.eigenvectors == spec.eigenvectors);
}

TEST_CASE("Jacobi input errors and a dense random matrix") {
  CHECK_THROWS_AS(jacobi_eigen(Eigen::MatrixXd(0, 0)), std::domain_error);
  CHECK_THROWS_AS(jacobi_eigen(Eigen::MatrixXd::Zero(2, 3)), std::domain_error);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(40, 40);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  const Eigen::MatrixXd s = m + m.transpose();
  const auto spec = jacobi_eigen(s);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(s);
  CHECK((spec.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-11 * s.norm());
  CHECK(orthonormality_error(spec) <= 1e-12);
}
