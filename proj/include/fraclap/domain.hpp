#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fraclap/point.hpp"

namespace fraclap {

/// A finite vertex set Omega in Z^d, stored in lexicographic order.
class Domain {
 public:
  /// Sorts the vertices. Throws std::domain_error on an empty set, a dimension
  /// mismatch or a duplicate vertex.
  Domain(int dim, std::vector<Point> vertices);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }

  std::optional<std::size_t> index_of(std::span<const int> p) const;
  bool contains(std::span<const int> p) const { return index_of(p).has_value(); }

  /// Connectivity under nearest-neighbour (|x - y|_1 = 1) adjacency.
  bool is_connected() const;

  /// Per-coordinate max - min.
  std::vector<int> extent() const;
  /// Largest |x - y|_inf over vertex pairs.
  int max_offset() const;
  /// Largest |x|_inf over vertices.
  int max_abs_coordinate() const;

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }

 private:
  int dim_;
  std::vector<Point> vertices_;
  std::map<Point, std::size_t> index_;
};

/// Axis-aligned box {0..n_1-1} x ... x {0..n_d-1}.
Domain make_box(int dim, std::span<const int> side_lengths);
Domain make_path(int length);

/// (2 arm) x (2 arm) square without its upper-right arm x arm quadrant.
Domain make_l_shape(int arm);

/// Grows a connected set from the origin: at each step the sorted list of
/// lattice points adjacent to the set (and not in it) is formed and entry
/// uniform_index(n) is added. Randomness comes from SplitMix64 in counter
/// mode: draw k (k = 0, 1, ...) is mix64(seed + (k + 1) * 0x9E3779B97F4A7C15),
/// and uniform_index(n) rejects draws below 2^64 mod n, then reduces mod n.
Domain make_random_connected(int dim, int size, std::uint64_t seed);

/// The SplitMix64 output for counter k under `seed`.
std::uint64_t splitmix64_draw(std::uint64_t seed, std::uint64_t k);

/// Domain file: {"dim": d, "vertices": [[...], ...]}. Throws ParseError naming
/// the offending entry.
Domain parse_domain_json(const std::string& text);
std::string domain_to_json(const Domain& domain);
Domain read_domain(const std::filesystem::path& path);
void write_domain(const Domain& domain, const std::filesystem::path& path);

}  // namespace fraclap
