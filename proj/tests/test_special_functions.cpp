#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "doctest.h"
#include "fraclap/special_functions.hpp"
#include "test_support.hpp"

using namespace fraclap;
using fraclap::testing::kPi;
using fraclap::testing::rel_diff;

namespace {

// e^{-z} I_m(z) = (1/pi) int_0^pi e^{z (cos th - 1)} cos(m th) dth; the
// integrand is smooth and periodic, so the trapezoid rule converges
// geometrically.
double bessel_by_integral(int m, double z, int points) {
  double s = 0.0;
  for (int j = 0; j <= points; ++j) {
    const double th = kPi * j / points;
    const double w = (j == 0 || j == points) ? 0.5 : 1.0;
    s += w * std::exp(z * (std::cos(th) - 1.0)) * std::cos(m * th);
  }
  return s / points;
}

}  // namespace

TEST_CASE("lanczos gamma matches boost tgamma") {
  for (double x = 0.005; x <= 2.0; x += 0.0137) {
    CHECK(rel_diff(special::lanczos_gamma(x), boost::math::tgamma(x)) <= 1e-13);
  }
  for (double x : {2.5, 3.7, 7.25, 12.0}) {
    CHECK(rel_diff(special::lanczos_gamma(x), boost::math::tgamma(x)) <= 1e-12);
  }
}

TEST_CASE("scaled Bessel I agrees with boost in the non-overflow range") {
  for (int m : {0, 1, 2, 3, 5, 8, 13, 21, 34, 60}) {
    for (double z : {0.0, 1e-3, 0.25, 0.99, 1.0, 2.0, 5.0, 12.5, 39.9, 40.0, 72.0, 150.0, 400.0, 700.0}) {
      const double expect = boost::math::cyl_bessel_i(m, z) * std::exp(-z);
      const double got = special::scaled_bessel_i(m, z);
      if (expect < 1e-280) {
        CHECK(got <= 1e-270);
        continue;
      }
      INFO("m=" << m << " z=" << z);
      CHECK(rel_diff(got, expect) <= 1e-12);
    }
  }
}

TEST_CASE("scaled Bessel I agrees with the integral representation for large arguments") {
  for (int m : {0, 1, 4, 9, 30}) {
    for (double z : {1e3, 5e3, 2e4, 1e5}) {
      const double expect = bessel_by_integral(m, z, 40000);
      INFO("m=" << m << " z=" << z);
      CHECK(rel_diff(special::scaled_bessel_i(m, z), expect) <= 1e-11);
    }
  }
}

TEST_CASE("scaled Bessel I stays in [0, 1] and decreases in the order") {
  for (double z : {0.3, 3.0, 30.0, 300.0}) {
    double prev = 2.0;
    for (int m = 0; m <= 40; ++m) {
      const double v = special::scaled_bessel_i(m, z);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("unit ball volumes") {
  CHECK(special::unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(special::unit_ball_volume(2) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(special::unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-15));
  CHECK(special::unit_ball_volume(4) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-15));
}
