#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "warpact/community.hpp"
#include "warpact/distance.hpp"
#include "warpact/errors.hpp"
#include "warpact/graph.hpp"
#include "warpact/powerlaw.hpp"

namespace warpact {

// Degrees count edge multiplicity unless `multiplicity` is false, in which case
// they are degrees of the simple projection.
inline std::vector<std::size_t> degree_sequence(const StaticGraph& g, bool multiplicity = true) {
  std::vector<std::size_t> k(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) k[u] = multiplicity ? g.degree(u) : g.simple_degree(u);
  return k;
}

struct DegreeDistribution {
  std::map<std::size_t, std::size_t> counts;
  std::size_t samples = 0;
  bool counts_multiplicity = true;

  double probability(std::size_t k) const {
    auto it = counts.find(k);
    return it == counts.end() || samples == 0 ? 0.0 : static_cast<double>(it->second) / static_cast<double>(samples);
  }
  std::map<std::size_t, double> probabilities() const {
    std::map<std::size_t, double> p;
    for (const auto& [k, c] : counts) p[k] = static_cast<double>(c) / static_cast<double>(samples);
    return p;
  }
};

inline DegreeDistribution degree_distribution(const StaticGraph& g, bool multiplicity = true) {
  DegreeDistribution d;
  d.counts_multiplicity = multiplicity;
  for (std::size_t k : degree_sequence(g, multiplicity)) ++d.counts[k];
  d.samples = g.node_count();
  return d;
}

inline PowerLawFit fit_power_law(const DegreeDistribution& d, const PowerLawOptions& opt = {}) {
  return fit_power_law(d.counts, opt);
}

// Triangles through each node of the simple projection. Edges are oriented
// from lower to higher (degree, id) rank so each triangle is listed once.
inline std::vector<std::size_t> triangle_counts(const StaticGraph& g) {
  const std::size_t n = g.node_count();
  auto ranks_below = [&](NodeId a, NodeId b) {
    const auto da = g.simple_degree(a), db = g.simple_degree(b);
    return da != db ? da < db : a < b;
  };
  std::vector<std::vector<NodeId>> out(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : g.neighbors(u))
      if (ranks_below(u, v)) out[u].push_back(v);
  std::vector<std::size_t> t(n, 0);
  std::vector<NodeId> mark(n, kUnreachable);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : out[u]) mark[v] = u;
    for (NodeId v : out[u])
      for (NodeId w : out[v])
        if (mark[w] == u) {
          ++t[u];
          ++t[v];
          ++t[w];
        }
  }
  return t;
}

// C_i = 2 t_i / (k_i (k_i - 1)) on the simple projection; 0 when k_i <= 1.
inline std::vector<double> clustering_coefficients(const StaticGraph& g) {
  const auto t = triangle_counts(g);
  std::vector<double> c(g.node_count(), 0.0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto k = static_cast<double>(g.simple_degree(u));
    if (k > 1.0) c[u] = 2.0 * static_cast<double>(t[u]) / (k * (k - 1.0));
  }
  return c;
}

inline double clustering_coefficient(const StaticGraph& g, NodeId u) {
  auto nb = g.neighbors(u);
  const auto k = static_cast<double>(nb.size());
  if (nb.size() < 2) return 0.0;
  std::size_t links = 0;
  for (NodeId v : nb)
    for (NodeId w : g.neighbors(v))
      if (v < w && std::binary_search(nb.begin(), nb.end(), w)) ++links;
  return 2.0 * static_cast<double>(links) / (k * (k - 1.0));
}

inline double mean_clustering(const StaticGraph& g) {
  if (g.node_count() == 0) return 0.0;
  const auto c = clustering_coefficients(g);
  double s = 0.0;
  for (double x : c) s += x;
  return s / static_cast<double>(g.node_count());
}

// Mean clustering of the nodes of each simple degree k.
inline std::map<std::size_t, double> clustering_by_degree(const StaticGraph& g) {
  const auto c = clustering_coefficients(g);
  std::map<std::size_t, std::pair<double, std::size_t>> acc;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto& [sum, count] = acc[g.simple_degree(u)];
    sum += c[u];
    ++count;
  }
  std::map<std::size_t, double> out;
  for (const auto& [k, sc] : acc) out[k] = sc.first / static_cast<double>(sc.second);
  return out;
}

struct DistanceStatistics {
  double mean = 0.0;
  Distance diameter = 0;
  std::map<Distance, double> distribution;  // over reachable unordered pairs, d >= 1
  std::uint64_t reachable_pairs = 0;
  double unreachable_fraction = 0.0;
};

// Over reachable unordered pairs only; the unreachable share is reported apart.
inline DistanceStatistics distance_statistics(const DistanceProfile& p) {
  DistanceStatistics s;
  const auto totals = p.pair_totals();
  std::uint64_t weighted = 0;
  for (std::size_t d = 1; d < totals.size(); ++d) {
    s.reachable_pairs += totals[d] / 2;
    weighted += d * (totals[d] / 2);
  }
  s.diameter = p.diameter();
  if (s.reachable_pairs > 0) {
    s.mean = static_cast<double>(weighted) / static_cast<double>(s.reachable_pairs);
    for (std::size_t d = 1; d < totals.size(); ++d)
      if (totals[d] > 0)
        s.distribution[static_cast<Distance>(d)] =
            static_cast<double>(totals[d] / 2) / static_cast<double>(s.reachable_pairs);
  }
  const auto n = static_cast<std::uint64_t>(p.node_count());
  if (n >= 2) {
    const std::uint64_t all = n * (n - 1) / 2;
    s.unreachable_fraction = static_cast<double>(all - s.reachable_pairs) / static_cast<double>(all);
  }
  return s;
}

inline DistanceStatistics distance_statistics(const StaticGraph& g) {
  return distance_statistics(DistanceProfile::compute(g));
}

// Pearson correlation of endpoint degrees over both orientations of every
// edge. Parallel edges count once per unit of multiplicity and degrees count
// multiplicity; pass g.simple() for the simple-graph convention.
inline double assortativity(const StaticGraph& g) {
  __int128 w = 0, sx = 0, sxx = 0, sxy = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto ku = static_cast<__int128>(g.degree(u));
    auto nb = g.neighbors(u);
    auto mult = g.multiplicities(u);
    for (std::size_t e = 0; e < nb.size(); ++e) {
      const auto m = static_cast<__int128>(mult[e]);
      const auto kv = static_cast<__int128>(g.degree(nb[e]));
      w += m;
      sx += m * ku;
      sxx += m * ku * ku;
      sxy += m * ku * kv;
    }
  }
  const __int128 var = w * sxx - sx * sx;
  if (w == 0 || var == 0)
    throw UndefinedCorrelationError("degree assortativity is undefined: endpoint degrees have zero variance");
  return static_cast<double>(static_cast<long double>(w * sxy - sx * sx) / static_cast<long double>(var));
}

inline double lcc_fraction(const StaticGraph& g) {
  if (g.node_count() == 0) return 0.0;
  return static_cast<double>(connected_components(g).largest()) / static_cast<double>(g.node_count());
}

struct StatsReport {
  std::size_t n = 0;
  std::size_t m = 0;
  double lcc = 0.0;
  double mean_degree = 0.0;
  double mean_clustering = 0.0;
  double mean_distance = 0.0;
  Distance diameter = 0;
  std::optional<double> assortativity;  // empty when undefined
  double modularity = 0.0;
  std::size_t modularity_runs = 0;
  double unreachable_fraction = 0.0;
};

struct StatsOptions {
  std::size_t modularity_runs = 100;
  // Degree-based statistics (m, <k>, r) on the simple projection.
  bool simple_degrees = false;
  std::uint64_t rng_seed = 0;
  unsigned threads = default_threads();
};

inline StatsReport compute_stats(const StaticGraph& graph, const DistanceProfile& profile,
                                 const StatsOptions& opt = {}) {
  const StaticGraph simple = graph.simple();
  const StaticGraph& degrees = opt.simple_degrees ? simple : graph;
  StatsReport r;
  r.n = graph.node_count();
  r.m = degrees.edge_count();
  r.mean_degree = r.n ? 2.0 * static_cast<double>(r.m) / static_cast<double>(r.n) : 0.0;
  r.lcc = lcc_fraction(graph);
  r.mean_clustering = mean_clustering(simple);
  const DistanceStatistics ds = distance_statistics(profile);
  r.mean_distance = ds.mean;
  r.diameter = ds.diameter;
  r.unreachable_fraction = ds.unreachable_fraction;
  try {
    r.assortativity = assortativity(degrees);
  } catch (const UndefinedCorrelationError&) {
    r.assortativity.reset();
  }
  if (opt.modularity_runs > 0) {
    r.modularity = detect_communities(simple, opt.modularity_runs, opt.rng_seed, opt.threads).mean_modularity;
    r.modularity_runs = opt.modularity_runs;
  }
  return r;
}

inline StatsReport compute_stats(const StaticGraph& graph, const StatsOptions& opt = {}) {
  return compute_stats(graph, DistanceProfile::compute(graph, opt.threads), opt);
}

}  // namespace warpact
