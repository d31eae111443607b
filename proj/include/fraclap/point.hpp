#pragma once

#include <algorithm>
#include <cstdlib>
#include <span>
#include <vector>

namespace fraclap {

/// A lattice point or offset in Z^d.
using Point = std::vector<int>;

inline int linf_norm(std::span<const int> v) {
  int m = 0;
  for (int c : v) m = std::max(m, std::abs(c));
  return m;
}

inline int l1_norm(std::span<const int> v) {
  int s = 0;
  for (int c : v) s += std::abs(c);
  return s;
}

}  // namespace fraclap
