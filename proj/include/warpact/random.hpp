#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace warpact {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to split a base seed into independent streams.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of realization `index` derived from `base`. Distinct indices give
// distinct seeds because mix_seed is a bijection on 64-bit integers.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix_seed(mix_seed(base) + index);
}

inline std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

inline double uniform_real(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Set of live items supporting O(1) uniform draw, insert and erase.
class IndexedSet {
 public:
  explicit IndexedSet(std::size_t bound) : pos_(bound, kAbsent) {}

  void insert(std::uint32_t x) {
    if (pos_[x] != kAbsent) return;
    pos_[x] = static_cast<std::uint32_t>(items_.size());
    items_.push_back(x);
  }
  void erase(std::uint32_t x) {
    const std::uint32_t p = pos_[x];
    if (p == kAbsent) return;
    const std::uint32_t last = items_.back();
    items_[p] = last;
    pos_[last] = p;
    items_.pop_back();
    pos_[x] = kAbsent;
  }
  bool contains(std::uint32_t x) const { return pos_[x] != kAbsent; }
  std::size_t size() const { return items_.size(); }
  std::uint32_t sample(Rng& rng) const { return items_[uniform_index(rng, items_.size())]; }
  const std::vector<std::uint32_t>& items() const { return items_; }

 private:
  static constexpr std::uint32_t kAbsent = 0xffffffffu;
  std::vector<std::uint32_t> items_;
  std::vector<std::uint32_t> pos_;
};

// Fenwick tree over non-negative weights; draws an index with probability
// proportional to its weight in O(log n).
class WeightedSampler {
 public:
  explicit WeightedSampler(std::size_t size) : tree_(size + 1, 0.0), weight_(size, 0.0) {
    while (top_ * 2 <= size) top_ *= 2;
  }

  void set(std::size_t i, double w) {
    const double delta = w - weight_[i];
    weight_[i] = w;
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }
  double weight(std::size_t i) const { return weight_[i]; }

  double total() const {
    double s = 0.0;
    for (std::size_t k = tree_.size() - 1; k > 0; k -= k & (~k + 1)) s += tree_[k];
    return s;
  }

  // Returns an index with positive weight. Accumulated rounding in the tree
  // can land the descent on a zero-weight slot; such draws are repeated.
  std::size_t sample(Rng& rng) const {
    for (;;) {
      double target = uniform_real(rng) * total();
      std::size_t pos = 0;
      for (std::size_t step = top_; step > 0; step >>= 1) {
        const std::size_t next = pos + step;
        if (next < tree_.size() && tree_[next] <= target) {
          target -= tree_[next];
          pos = next;
        }
      }
      if (pos < weight_.size() && weight_[pos] > 0.0) return pos;
    }
  }

 private:
  std::vector<double> tree_;
  std::vector<double> weight_;
  std::size_t top_ = 1;
};

}  // namespace warpact
