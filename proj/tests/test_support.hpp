#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fraclap/domain.hpp"

namespace fraclap::testing {

inline constexpr double kPi = std::numbers::pi;

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

/// 4 / (pi (4 m^2 - 1)): Q_1 on Z at distance m.
inline double q1_closed(int m) { return 4.0 / (kPi * (4.0 * m * m - 1.0)); }

struct NamedDomain {
  std::string name;
  Domain domain;
};

/// Paths 10/20/50, boxes 6x6 and 8x8, L-shapes with arms 3 and 4, and a
/// random 2d domain of 30 vertices grown with seed 7.
inline std::vector<NamedDomain> standard_suite() {
  const int b6[] = {6, 6}, b8[] = {8, 8};
  return {{"path:10", make_path(10)},       {"path:20", make_path(20)},
          {"path:50", make_path(50)},       {"box:6x6", make_box(2, b6)},
          {"box:8x8", make_box(2, b8)},     {"lshape:3", make_l_shape(3)},
          {"lshape:4", make_l_shape(4)},    {"random:30/seed7", make_random_connected(2, 30, 7)}};
}

inline const std::vector<double>& standard_alphas() {
  static const std::vector<double> a{0.5, 1.0, 1.5};
  return a;
}

}  // namespace fraclap::testing
