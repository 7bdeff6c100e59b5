#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include "warpact/distance.hpp"
#include "warpact/errors.hpp"
#include "warpact/graph.hpp"

namespace warpact {

// Generalized Jensen-Shannon divergence in nats,
//   J = sum_i w_i KL(p_i || M),  M = sum_i w_i p_i,
// which equals H(M) - sum_i w_i H(p_i). Vectors of different length are
// zero-padded; weights default to uniform. The KL form is exactly zero when
// all inputs coincide.
inline double jensen_shannon(std::span<const std::vector<double>> dists, std::span<const double> weights = {}) {
  if (dists.empty()) throw Error("Jensen-Shannon divergence of an empty set of distributions");
  std::size_t len = 0;
  for (const auto& p : dists) len = std::max(len, p.size());
  std::vector<double> w(dists.size(), 1.0 / static_cast<double>(dists.size()));
  if (!weights.empty()) {
    if (weights.size() != dists.size()) throw Error("one weight per distribution is required");
    w.assign(weights.begin(), weights.end());
  }
  std::vector<double> mix(len, 0.0);
  for (std::size_t i = 0; i < dists.size(); ++i)
    for (std::size_t x = 0; x < dists[i].size(); ++x) mix[x] += w[i] * dists[i][x];
  double j = 0.0;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    double kl = 0.0;
    for (std::size_t x = 0; x < dists[i].size(); ++x) {
      const double p = dists[i][x];
      if (p > 0.0) kl += p * std::log(p / mix[x]);
    }
    j += w[i] * kl;
  }
  return std::max(0.0, j);
}

inline double jensen_shannon(const std::vector<double>& p, const std::vector<double>& q) {
  const std::vector<double> both[] = {p, q};
  return jensen_shannon(std::span<const std::vector<double>>(both));
}

// D_i: fraction of all n nodes at each distance d = 0..diameter from node i.
inline std::vector<std::vector<double>> node_distance_distributions(const DistanceProfile& p) {
  const auto n = static_cast<double>(p.node_count());
  std::vector<std::vector<double>> out(p.node_count(), std::vector<double>(p.diameter() + 1, 0.0));
  for (std::size_t i = 0; i < p.node_count(); ++i) {
    const auto& row = p.counts(i);
    for (std::size_t d = 0; d < row.size(); ++d) out[i][d] = row[d] / n;
  }
  return out;
}

// Average of the D_i, renormalized over the reachable mass (a no-op for
// connected graphs).
inline std::vector<double> mean_distance_distribution(const DistanceProfile& p) {
  const auto totals = p.pair_totals();
  std::uint64_t all = 0;
  for (auto t : totals) all += t;
  std::vector<double> out(totals.size(), 0.0);
  for (std::size_t d = 0; d < totals.size(); ++d) out[d] = static_cast<double>(totals[d]) / static_cast<double>(all);
  return out;
}

// Jensen-Shannon divergence among the node distance distributions, divided
// by ln(diameter + 1). Rows are renormalized over the nodes each one reaches.
// Identical rows are grouped and visited in sorted order, so the value depends
// only on the multiset of rows and is bitwise identical for isomorphic graphs.
inline double node_dispersion(const DistanceProfile& p) {
  if (p.node_count() == 0 || p.diameter() == 0)
    throw DegenerateGraphError("node dispersion needs a graph with at least one edge");
  std::map<std::vector<std::uint32_t>, std::size_t> groups;
  for (const auto& row : p.rows()) ++groups[row];
  if (groups.size() == 1) return 0.0;
  std::vector<std::vector<double>> dists;
  std::vector<double> weights;
  const auto n = static_cast<double>(p.node_count());
  for (const auto& [row, count] : groups) {
    double reach = 0.0;
    for (auto c : row) reach += c;
    std::vector<double> d(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) d[k] = row[k] / reach;
    dists.push_back(std::move(d));
    weights.push_back(static_cast<double>(count) / n);
  }
  return jensen_shannon(dists, weights) / std::log(static_cast<double>(p.diameter()) + 1.0);
}

enum class Measure { DMeasure, PortraitDivergence };

struct DissimilarityScore {
  double value = 0.0;
  Measure kind = Measure::DMeasure;
};

// Simplified D-measure without the centrality term:
//   D = 1/2 sqrt(J(mean_a, mean_b) / ln 2) + 1/2 |sqrt(N_a) - sqrt(N_b)|.
inline DissimilarityScore d_measure(const DistanceProfile& a, const DistanceProfile& b) {
  const double dispersion_a = node_dispersion(a);
  const double dispersion_b = node_dispersion(b);
  const double global = jensen_shannon(mean_distance_distribution(a), mean_distance_distribution(b));
  const double value = 0.5 * std::sqrt(std::min(1.0, global / std::numbers::ln2)) +
                       0.5 * std::abs(std::sqrt(dispersion_a) - std::sqrt(dispersion_b));
  return {value, Measure::DMeasure};
}

inline DissimilarityScore d_measure(const StaticGraph& a, const StaticGraph& b) {
  return d_measure(DistanceProfile::compute(a), DistanceProfile::compute(b));
}

// P[d][k]: number of nodes with exactly k nodes at distance d, for
// d = 0..diameter and k = 0..n.
class Portrait {
 public:
  Portrait() = default;

  explicit Portrait(const DistanceProfile& p) : n_(p.node_count()) {
    rows_.assign(p.node_count() == 0 ? 0 : p.diameter() + 1, std::vector<std::uint64_t>(n_ + 1, 0));
    for (const auto& row : p.rows())
      for (std::size_t d = 0; d < rows_.size(); ++d) ++rows_[d][d < row.size() ? row[d] : 0];
    // Sum of squared component sizes: the number of ordered pairs (i, j)
    // in a common component, i == j included.
    for (std::size_t i = 0; i < p.node_count(); ++i) same_component_pairs_ += p.reachable(i);
  }

  std::size_t node_count() const { return n_; }
  std::size_t max_distance() const { return rows_.empty() ? 0 : rows_.size() - 1; }
  std::uint64_t at(std::size_t k, std::size_t d) const {
    return d < rows_.size() && k < rows_[d].size() ? rows_[d][k] : 0;
  }
  const std::vector<std::vector<std::uint64_t>>& rows() const { return rows_; }
  std::uint64_t same_component_pairs() const { return same_component_pairs_; }

  // Joint probability over (d, k) that a random same-component pair is at
  // distance d and its first node has exactly k nodes at that distance:
  //   (1/n) P_kd * (1 / sum_c n_c^2) * sum_k' k' P_k'd.
  // Returned as rows indexed by d, each of length n + 1.
  std::vector<std::vector<double>> joint() const {
    std::vector<std::vector<double>> out(rows_.size(), std::vector<double>(n_ + 1, 0.0));
    const auto n = static_cast<double>(n_);
    const auto pairs = static_cast<double>(same_component_pairs_);
    for (std::size_t d = 0; d < rows_.size(); ++d) {
      std::uint64_t at_d = 0;
      for (std::size_t k = 0; k < rows_[d].size(); ++k) at_d += k * rows_[d][k];
      const double p_d = static_cast<double>(at_d) / pairs;
      for (std::size_t k = 0; k < rows_[d].size(); ++k)
        out[d][k] = static_cast<double>(rows_[d][k]) / n * p_d;
    }
    return out;
  }

  friend bool operator==(const Portrait&, const Portrait&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::uint64_t same_component_pairs_ = 0;
};

inline Portrait portrait(const StaticGraph& g) { return Portrait(DistanceProfile::compute(g)); }

// Jensen-Shannon divergence (base 2) between the joint (d, k) distributions
// of two portraits, padded to a common shape.
inline DissimilarityScore portrait_divergence(const Portrait& a, const Portrait& b) {
  const std::size_t rows = std::max(a.rows().size(), b.rows().size());
  const std::size_t cols = std::max(a.node_count(), b.node_count()) + 1;
  auto flatten = [&](const Portrait& p) {
    std::vector<double> flat(rows * cols, 0.0);
    const auto j = p.joint();
    for (std::size_t d = 0; d < j.size(); ++d)
      for (std::size_t k = 0; k < j[d].size(); ++k) flat[d * cols + k] = j[d][k];
    return flat;
  };
  const double value = jensen_shannon(flatten(a), flatten(b)) / std::numbers::ln2;
  return {std::min(1.0, value), Measure::PortraitDivergence};
}

inline DissimilarityScore portrait_divergence(const StaticGraph& a, const StaticGraph& b) {
  return portrait_divergence(portrait(a), portrait(b));
}

}  // namespace warpact
