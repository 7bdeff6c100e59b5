#pragma once

// Brute-force reference implementations for small graphs. Everything here
// works from a dense adjacency matrix and the Floyd-Warshall distance matrix,
// evaluating each formula literally. Nothing is shared with the library's
// BFS/profile code path.

#include <cmath>
#include <cstdint>
#include <quadmath.h>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "warpact/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<int>>;
inline constexpr int kInf = -1;

inline Matrix adjacency(const warpact::StaticGraph& g) {
  const std::size_t n = g.node_count();
  Matrix a(n, std::vector<int>(n, 0));
  for (const auto& e : g.edges()) {
    a[e.u][e.v] += static_cast<int>(e.multiplicity);
    a[e.v][e.u] += static_cast<int>(e.multiplicity);
  }
  return a;
}

inline Matrix floyd_warshall(const Matrix& a) {
  const std::size_t n = a.size();
  const int big = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, big));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j] > 0) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (auto& row : d)
    for (int& x : row)
      if (x >= big) x = kInf;
  return d;
}

inline int diameter(const Matrix& d) {
  int best = 0;
  for (const auto& row : d)
    for (int x : row) best = std::max(best, x);
  return best;
}

struct DistanceSummary {
  double mean = 0.0;
  int diameter = 0;
  std::map<int, double> distribution;
  double unreachable_fraction = 0.0;
};

inline DistanceSummary distance_summary(const Matrix& d) {
  const std::size_t n = d.size();
  DistanceSummary s;
  double sum = 0.0;
  std::size_t pairs = 0, unreachable = 0;
  std::map<int, std::size_t> count;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i][j] == kInf) {
        ++unreachable;
        continue;
      }
      sum += d[i][j];
      ++pairs;
      ++count[d[i][j]];
      s.diameter = std::max(s.diameter, d[i][j]);
    }
  if (pairs) s.mean = sum / static_cast<double>(pairs);
  for (auto [k, c] : count) s.distribution[k] = static_cast<double>(c) / static_cast<double>(pairs);
  if (n >= 2) s.unreachable_fraction = static_cast<double>(unreachable) / static_cast<double>(pairs + unreachable);
  return s;
}

// D_id = (1/n) sum_j I(d_ij = d), d = 0..diameter.
inline std::vector<std::vector<double>> node_distributions(const Matrix& d) {
  const std::size_t n = d.size();
  const int dmax = diameter(d);
  std::vector<std::vector<double>> out(n, std::vector<double>(dmax + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (int dist = 0; dist <= dmax; ++dist) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += (d[i][j] == dist) ? 1.0 : 0.0;
      out[i][dist] = s / static_cast<double>(n);
    }
  return out;
}

inline std::vector<double> renormalized(std::vector<double> p) {
  double s = 0.0;
  for (double x : p) s += x;
  for (double& x : p) x /= s;
  return p;
}

inline std::vector<double> mean_distribution(const Matrix& d) {
  const auto rows = node_distributions(d);
  std::vector<double> out(rows.empty() ? 0 : rows[0].size(), 0.0);
  for (const auto& r : rows)
    for (std::size_t k = 0; k < r.size(); ++k) out[k] += r[k] / static_cast<double>(rows.size());
  return renormalized(out);
}

// Entropies are accumulated in quad precision: the entropy form cancels
// catastrophically near zero, and callers take square roots of the result.
using Quad = __float128;

inline Quad entropy(const std::vector<Quad>& p) {
  Quad h = 0;
  for (Quad x : p)
    if (x > 0) h -= x * logq(x);
  return h;
}

// Entropy form H(sum w_i p_i) - sum w_i H(p_i), equal weights, zero-padded.
inline double jsd(const std::vector<std::vector<double>>& ps) {
  std::size_t len = 0;
  for (const auto& p : ps) len = std::max(len, p.size());
  std::vector<Quad> mix(len, 0);
  Quad mean_h = 0;
  const Quad count = static_cast<Quad>(ps.size());
  for (const auto& p : ps) {
    std::vector<Quad> q(len, 0);
    for (std::size_t k = 0; k < p.size(); ++k) q[k] = p[k];
    for (std::size_t k = 0; k < len; ++k) mix[k] += q[k] / count;
    mean_h += entropy(q) / count;
  }
  return static_cast<double>(entropy(mix) - mean_h);
}

inline double node_dispersion(const Matrix& d) {
  auto rows = node_distributions(d);
  for (auto& r : rows) r = renormalized(r);
  return jsd(rows) / std::log(diameter(d) + 1.0);
}

inline double d_measure(const Matrix& a, const Matrix& b) {
  const double first = std::sqrt(std::max(0.0, jsd({mean_distribution(a), mean_distribution(b)})) / std::log(2.0));
  return 0.5 * first + 0.5 * std::abs(std::sqrt(std::max(0.0, node_dispersion(a))) -
                                      std::sqrt(std::max(0.0, node_dispersion(b))));
}

// P[d][k] = sum_i I(n D_id = k), k = 0..n.
inline std::vector<std::vector<long>> portrait(const Matrix& d) {
  const std::size_t n = d.size();
  const int dmax = diameter(d);
  std::vector<std::vector<long>> p(dmax + 1, std::vector<long>(n + 1, 0));
  for (int dist = 0; dist <= dmax; ++dist)
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t k = 0;
      for (std::size_t j = 0; j < n; ++j) k += d[i][j] == dist;
      ++p[dist][k];
    }
  return p;
}

// Component sizes from reachability in the distance matrix.
inline double sum_squared_component_sizes(const Matrix& d) {
  const std::size_t n = d.size();
  std::vector<int> seen(n, 0);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    double size = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (d[i][j] != kInf) {
        seen[j] = 1;
        size += 1.0;
      }
    s += size * size;
  }
  return s;
}

// Joint distribution over (d, k), flattened d-major with n + 1 columns.
inline std::vector<std::vector<double>> portrait_joint(const Matrix& d) {
  const auto p = portrait(d);
  const double n = static_cast<double>(d.size());
  const double norm = sum_squared_component_sizes(d);
  std::vector<std::vector<double>> out(p.size(), std::vector<double>(d.size() + 1, 0.0));
  for (std::size_t dist = 0; dist < p.size(); ++dist) {
    double right = 0.0;
    for (std::size_t kk = 0; kk < p[dist].size(); ++kk) right += static_cast<double>(kk) * p[dist][kk];
    right /= norm;
    for (std::size_t k = 0; k < p[dist].size(); ++k) out[dist][k] = p[dist][k] / n * right;
  }
  return out;
}

inline double portrait_divergence(const Matrix& a, const Matrix& b) {
  auto ja = portrait_joint(a), jb = portrait_joint(b);
  const std::size_t rows = std::max(ja.size(), jb.size());
  const std::size_t cols = std::max(a.size(), b.size()) + 1;
  auto flat = [&](const std::vector<std::vector<double>>& j) {
    std::vector<double> f(rows * cols, 0.0);
    for (std::size_t r = 0; r < j.size(); ++r)
      for (std::size_t c = 0; c < j[r].size(); ++c) f[r * cols + c] = j[r][c];
    return f;
  };
  return jsd({flat(ja), flat(jb)}) / std::log(2.0);
}

inline double clustering(const Matrix& a, std::size_t i) {
  const std::size_t n = a.size();
  std::vector<std::size_t> nb;
  for (std::size_t j = 0; j < n; ++j)
    if (a[i][j] > 0) nb.push_back(j);
  if (nb.size() < 2) return 0.0;
  double t = 0.0;
  for (std::size_t x = 0; x < nb.size(); ++x)
    for (std::size_t y = x + 1; y < nb.size(); ++y) t += a[nb[x]][nb[y]] > 0;
  return 2.0 * t / (static_cast<double>(nb.size()) * (nb.size() - 1.0));
}

inline double mean_clustering(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += clustering(a, i);
  return s / static_cast<double>(a.size());
}

// Pearson over (k_u, k_v) of both orientations of every edge unit.
inline double assortativity(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<double> k(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (int r = 0; r < a[i][j]; ++r) pairs.emplace_back(k[i], k[j]);
  double mx = 0, my = 0;
  for (auto [x, y] : pairs) {
    mx += x;
    my += y;
  }
  mx /= pairs.size();
  my /= pairs.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (auto [x, y] : pairs) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// Q = (1/2m) sum_ij (A_ij - k_i k_j / 2m) delta(c_i, c_j), on 0/1 adjacency.
inline double modularity(const Matrix& a, const std::vector<std::uint32_t>& label) {
  const std::size_t n = a.size();
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double aij = a[i][j] > 0 ? 1.0 : 0.0;
      k[i] += aij;
      two_m += aij;
    }
  if (two_m == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (label[i] == label[j]) q += (a[i][j] > 0 ? 1.0 : 0.0) - k[i] * k[j] / two_m;
  return q / two_m;
}

// Random simple graph with n nodes and each pair present with probability p.
inline warpact::StaticGraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<warpact::Edge> edges;
  std::bernoulli_distribution coin(p);
  for (warpact::NodeId u = 0; u < n; ++u)
    for (warpact::NodeId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v, 1});
  return warpact::StaticGraph(n, edges);
}

// Graph on n nodes whose edge set is given by the bits of `mask` over the
// pairs (0,1), (0,2), ..., (n-2,n-1).
inline warpact::StaticGraph graph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<warpact::Edge> edges;
  std::size_t bit = 0;
  for (warpact::NodeId u = 0; u < n; ++u)
    for (warpact::NodeId v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) edges.push_back({u, v, 1});
  return warpact::StaticGraph(n, edges);
}

inline warpact::StaticGraph relabeled(const warpact::StaticGraph& g, std::mt19937_64& rng) {
  std::vector<warpact::NodeId> perm(g.node_count());
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  auto edges = g.edges();
  for (auto& e : edges) {
    e.u = perm[e.u];
    e.v = perm[e.v];
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return warpact::StaticGraph(g.node_count(), edges);
}

inline bool connected(const Matrix& d) {
  for (const auto& row : d)
    for (int x : row)
      if (x == kInf) return false;
  return true;
}

}  // namespace oracle
