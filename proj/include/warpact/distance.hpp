#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "warpact/graph.hpp"
#include "warpact/parallel.hpp"

namespace warpact {

// Per-node histograms of hop distances from one all-pairs BFS sweep:
// counts(i)[d] is the number of nodes at distance exactly d from node i
// (counts(i)[0] == 1). Histograms stop at node i's eccentricity within its
// component. Every distance-based statistic and both graph dissimilarities
// are derived from this.
class DistanceProfile {
 public:
  DistanceProfile() = default;

  static DistanceProfile compute(const StaticGraph& g, unsigned threads = default_threads()) {
    DistanceProfile p;
    const std::size_t n = g.node_count();
    p.counts_.resize(n);
    parallel_for(
        n,
        [&](std::size_t s) {
          std::vector<Distance> dist = bfs_distances(g, static_cast<NodeId>(s));
          auto& row = p.counts_[s];
          for (Distance d : dist) {
            if (d == kUnreachable) continue;
            if (d >= row.size()) row.resize(d + 1, 0);
            ++row[d];
          }
        },
        threads);
    for (const auto& row : p.counts_)
      p.diameter_ = std::max<Distance>(p.diameter_, static_cast<Distance>(row.size() - 1));
    return p;
  }

  std::size_t node_count() const { return counts_.size(); }
  const std::vector<std::uint32_t>& counts(std::size_t node) const { return counts_[node]; }
  const std::vector<std::vector<std::uint32_t>>& rows() const { return counts_; }

  // Largest finite distance over all pairs.
  Distance diameter() const { return diameter_; }

  // Nodes reachable from `node`, itself included.
  std::uint64_t reachable(std::size_t node) const {
    return std::accumulate(counts_[node].begin(), counts_[node].end(), std::uint64_t{0});
  }

  // Ordered pairs (i, j), i included, at each distance d = 0..diameter.
  std::vector<std::uint64_t> pair_totals() const {
    std::vector<std::uint64_t> total(counts_.empty() ? 0 : diameter_ + 1, 0);
    for (const auto& row : counts_)
      for (std::size_t d = 0; d < row.size(); ++d) total[d] += row[d];
    return total;
  }

 private:
  std::vector<std::vector<std::uint32_t>> counts_;
  Distance diameter_ = 0;
};

}  // namespace warpact
