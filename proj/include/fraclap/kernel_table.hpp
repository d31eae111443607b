#pragma once

#include <map>
#include <optional>
#include <span>

#include "fraclap/kernel.hpp"
#include "fraclap/point.hpp"

namespace fraclap {

enum class KernelMethod { time_integral, fourier };

const char* to_string(KernelMethod m);

struct KernelEntry {
  double value = 0.0;
  double error = 0.0;
  KernelMethod method = KernelMethod::fourier;

  friend bool operator==(const KernelEntry&, const KernelEntry&) = default;
};

/// Cache of Q_alpha values keyed by canonical offset (absolute coordinates
/// sorted descending), so v, -v and coordinate permutations share one entry.
///
/// Filling is single-writer; independently filled shards are combined with
/// merge(), which requires exact equality on overlapping keys.
class KernelTable {
 public:
  KernelTable(int dim, AlphaParam alpha, QuadratureSpec quad);
  KernelTable(int dim, AlphaParam alpha);

  int dim() const noexcept { return dim_; }
  const AlphaParam& alpha() const noexcept { return alpha_; }
  const QuadratureSpec& quadrature() const noexcept { return quad_; }

  static Point canonical(std::span<const int> offset);

  /// Adds every canonical offset with |v|_inf <= max_abs from one Fourier
  /// block and records S_alpha. Existing entries are kept.
  void fill_fourier(int max_abs);

  /// Returns the entry for `offset`, computing it with `method` if absent.
  const KernelEntry& ensure(std::span<const int> offset, KernelMethod method);

  /// Throws std::out_of_range if the offset has not been computed.
  double at(std::span<const int> offset) const;
  std::optional<KernelEntry> find(std::span<const int> offset) const;

  /// S_alpha; computed on first use.
  double total_mass();
  std::optional<double> cached_total_mass() const { return total_mass_; }

  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<Point, KernelEntry>& entries() const noexcept { return entries_; }

  /// Throws std::logic_error if a shared key holds different values.
  void merge(const KernelTable& shard);

 private:
  int dim_;
  AlphaParam alpha_;
  QuadratureSpec quad_;
  std::map<Point, KernelEntry> entries_;
  std::optional<double> total_mass_;
};

}  // namespace fraclap
