#include "fraclap/kernel_table.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace fraclap {

const char* to_string(KernelMethod m) {
  return m == KernelMethod::time_integral ? "time_integral" : "fourier";
}

KernelTable::KernelTable(int dim, AlphaParam alpha, QuadratureSpec quad)
    : dim_(dim), alpha_(alpha), quad_(quad) {
  if (dim < 1) throw std::domain_error("KernelTable: dimension must be >= 1");
  quad_.validate();
}

KernelTable::KernelTable(int dim, AlphaParam alpha)
    : KernelTable(dim, alpha, QuadratureSpec::for_dimension(dim)) {}

Point KernelTable::canonical(std::span<const int> offset) {
  Point key(offset.size());
  std::transform(offset.begin(), offset.end(), key.begin(), [](int c) { return std::abs(c); });
  std::sort(key.begin(), key.end(), std::greater<>());
  return key;
}

void KernelTable::fill_fourier(int max_abs) {
  const auto block = fourier_coefficient_block(dim_, alpha_, quad_, max_abs);
  if (!total_mass_) total_mass_ = block.total_mass();
  // Enumerate descending tuples max_abs >= v_0 >= v_1 >= ... >= 0.
  Point v(static_cast<std::size_t>(dim_), 0);
  while (true) {
    if (v[0] != 0) {
      const std::size_t i = block.index(v);
      entries_.try_emplace(v, KernelEntry{-block.coefficient[i], block.error[i], KernelMethod::fourier});
    }
    int k = dim_ - 1;
    for (; k >= 0; --k) {
      const int cap = k == 0 ? max_abs : v[k - 1];
      if (v[k] < cap) {
        ++v[k];
        std::fill(v.begin() + k + 1, v.end(), 0);
        break;
      }
    }
    if (k < 0) break;
  }
}

const KernelEntry& KernelTable::ensure(std::span<const int> offset, KernelMethod method) {
  if (static_cast<int>(offset.size()) != dim_) throw std::domain_error("KernelTable: dimension mismatch");
  Point key = canonical(offset);
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  const QuadratureValue q = method == KernelMethod::time_integral
                                ? q_alpha_time_integral(key, alpha_, quad_)
                                : q_alpha_fourier(key, alpha_, quad_);
  return entries_.emplace(std::move(key), KernelEntry{q.value, q.error, method}).first->second;
}

double KernelTable::at(std::span<const int> offset) const {
  if (auto e = find(offset)) return e->value;
  throw std::out_of_range("KernelTable: offset not computed");
}

std::optional<KernelEntry> KernelTable::find(std::span<const int> offset) const {
  if (static_cast<int>(offset.size()) != dim_) throw std::domain_error("KernelTable: dimension mismatch");
  if (auto it = entries_.find(canonical(offset)); it != entries_.end()) return it->second;
  return std::nullopt;
}

double KernelTable::total_mass() {
  if (!total_mass_) total_mass_ = fraclap::total_mass(dim_, alpha_, quad_).value;
  return *total_mass_;
}

void KernelTable::merge(const KernelTable& shard) {
  if (shard.dim_ != dim_ || !(shard.alpha_ == alpha_)) {
    throw std::logic_error("KernelTable::merge: incompatible shard");
  }
  for (const auto& [key, entry] : shard.entries_) {
    auto [it, inserted] = entries_.try_emplace(key, entry);
    if (!inserted && !(it->second == entry)) {
      throw std::logic_error("KernelTable::merge: conflicting values for one offset");
    }
  }
  if (shard.total_mass_) {
    if (total_mass_ && *total_mass_ != *shard.total_mass_) {
      throw std::logic_error("KernelTable::merge: conflicting total mass");
    }
    total_mass_ = shard.total_mass_;
  }
}

}  // namespace fraclap
