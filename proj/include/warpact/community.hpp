#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <vector>

#include "warpact/graph.hpp"
#include "warpact/parallel.hpp"
#include "warpact/random.hpp"

namespace warpact {

struct Partition {
  std::vector<std::uint32_t> label;

  std::size_t communities() const {
    return label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  }

  // Relabels communities densely in order of first appearance.
  Partition& canonicalize() {
    std::vector<std::uint32_t> remap(label.size(), 0xffffffffu);
    std::uint32_t next = 0;
    for (auto& c : label) {
      if (remap[c] == 0xffffffffu) remap[c] = next++;
      c = remap[c];
    }
    return *this;
  }

  static Partition single(std::size_t n) { return {std::vector<std::uint32_t>(n, 0)}; }
  static Partition singletons(std::size_t n) {
    Partition p{std::vector<std::uint32_t>(n)};
    std::iota(p.label.begin(), p.label.end(), 0u);
    return p;
  }
};

// Newman-Girvan modularity of the simple projection of g.
inline double modularity(const StaticGraph& g, const Partition& p) {
  const std::size_t n = g.node_count();
  const double total = 2.0 * static_cast<double>(g.simple_edge_count());
  if (total == 0.0) return 0.0;
  const std::size_t groups = n ? *std::max_element(p.label.begin(), p.label.end()) + std::size_t{1} : 0;
  std::vector<double> inside(groups, 0.0), strength(groups, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    const auto c = p.label[u];
    strength[c] += static_cast<double>(g.simple_degree(u));
    for (NodeId v : g.neighbors(u))
      if (p.label[v] == c) inside[c] += 1.0;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < groups; ++c) {
    if (strength[c] == 0.0) continue;
    const double share = strength[c] / total;
    q += inside[c] / total - share * share;
  }
  return q;
}

namespace detail {

// Symmetric weighted graph used across Leiden aggregation levels. Self-loop
// entries carry A_uu, which counts every collapsed internal edge twice, so
// strength(u) = sum_v A_uv and the total strength is 2m at every level.
struct WeightedGraph {
  std::size_t n = 0;
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> target;
  std::vector<double> weight;
  std::vector<double> strength;
  double total = 0.0;

  static WeightedGraph from(const StaticGraph& g) {
    WeightedGraph w;
    w.n = g.node_count();
    w.offsets.assign(w.n + 1, 0);
    w.strength.assign(w.n, 0.0);
    for (NodeId u = 0; u < w.n; ++u) {
      for (NodeId v : g.neighbors(u)) {
        w.target.push_back(v);
        w.weight.push_back(1.0);
      }
      w.offsets[u + 1] = w.target.size();
      w.strength[u] = static_cast<double>(g.simple_degree(u));
      w.total += w.strength[u];
    }
    return w;
  }

  // Collapses nodes sharing a group label (labels dense in [0, groups)).
  WeightedGraph aggregate(const std::vector<std::uint32_t>& group, std::size_t groups) const {
    struct Entry {
      std::uint32_t a, b;
      double w;
    };
    std::vector<Entry> entries;
    entries.reserve(target.size());
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e)
        entries.push_back({group[u], group[target[e]], weight[e]});
    std::sort(entries.begin(), entries.end(),
              [](const Entry& x, const Entry& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
    WeightedGraph out;
    out.n = groups;
    out.offsets.assign(groups + 1, 0);
    out.strength.assign(groups, 0.0);
    out.total = total;
    for (std::size_t i = 0; i < entries.size();) {
      std::size_t j = i;
      double w = 0.0;
      while (j < entries.size() && entries[j].a == entries[i].a && entries[j].b == entries[i].b) w += entries[j++].w;
      out.target.push_back(entries[i].b);
      out.weight.push_back(w);
      out.strength[entries[i].a] += w;
      ++out.offsets[entries[i].a + 1];
      i = j;
    }
    for (std::size_t c = 0; c < groups; ++c) out.offsets[c + 1] += out.offsets[c];
    return out;
  }
};

inline std::uint32_t relabel_dense(std::vector<std::uint32_t>& label) {
  std::vector<std::uint32_t> remap(label.size(), 0xffffffffu);
  std::uint32_t next = 0;
  for (auto& c : label) {
    if (remap[c] == 0xffffffffu) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

// Queue-based local moving: each visited node moves to the neighbouring (or an
// empty) community with the largest modularity gain. Returns true if any node
// moved.
inline bool move_nodes(const WeightedGraph& g, std::vector<std::uint32_t>& comm, Rng& rng) {
  const std::size_t n = g.n;
  std::vector<double> comm_strength(n, 0.0);
  std::vector<std::uint32_t> size(n, 0);
  for (std::uint32_t u = 0; u < n; ++u) {
    comm_strength[comm[u]] += g.strength[u];
    ++size[comm[u]];
  }
  std::vector<std::uint32_t> empty;
  for (std::uint32_t c = 0; c < n; ++c)
    if (size[c] == 0) empty.push_back(c);

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);
  std::deque<std::uint32_t> queue(order.begin(), order.end());
  std::vector<std::uint8_t> queued(n, 1);

  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> touched;
  bool changed = false;
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    queued[u] = 0;
    const std::uint32_t from = comm[u];
    const double ku = g.strength[u];

    touched.clear();
    for (std::size_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
      const std::uint32_t v = g.target[e];
      if (v == u) continue;
      const std::uint32_t c = comm[v];
      if (link[c] == 0.0) touched.push_back(c);
      link[c] += g.weight[e];
    }

    comm_strength[from] -= ku;
    if (--size[from] == 0) empty.push_back(from);

    std::uint32_t best = from;
    double best_gain = link[from] - ku * comm_strength[from] / g.total;
    for (std::uint32_t c : touched) {
      const double gain = link[c] - ku * comm_strength[c] / g.total;
      if (gain > best_gain + 1e-12) {
        best_gain = gain;
        best = c;
      }
    }
    if (best_gain < -1e-12 && !empty.empty()) best = empty.back();

    for (std::uint32_t c : touched) link[c] = 0.0;
    link[from] = 0.0;

    if (size[best] == 0) {
      // Taking an empty label (possibly `from` itself, which was just pushed).
      empty.erase(std::find(empty.begin(), empty.end(), best));
    }
    comm_strength[best] += ku;
    ++size[best];
    comm[u] = best;

    if (best != from) {
      changed = true;
      for (std::size_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
        const std::uint32_t v = g.target[e];
        if (!queued[v] && comm[v] != best) {
          queued[v] = 1;
          queue.push_back(v);
        }
      }
    }
  }
  return changed;
}

// Splits every community of `comm` into well-connected sub-communities by
// randomized merging of singletons.
inline std::vector<std::uint32_t> refine(const WeightedGraph& g, const std::vector<std::uint32_t>& comm, Rng& rng,
                                         double randomness) {
  const std::size_t n = g.n;
  std::vector<double> comm_strength(n, 0.0);
  for (std::uint32_t u = 0; u < n; ++u) comm_strength[comm[u]] += g.strength[u];

  std::vector<std::uint32_t> refined(n);
  std::iota(refined.begin(), refined.end(), 0u);
  std::vector<double> ref_strength = g.strength;
  std::vector<std::uint32_t> ref_size(n, 1);
  // Weight from each refined community to the rest of its parent community.
  std::vector<double> external(n, 0.0);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::size_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
      const std::uint32_t v = g.target[e];
      if (v != u && comm[v] == comm[u]) external[u] += g.weight[e];
    }

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> touched;
  std::vector<double> gains;
  for (std::uint32_t v : order) {
    if (ref_size[refined[v]] != 1) continue;
    const std::uint32_t s = comm[v];
    const double kv = g.strength[v];
    const double ks = comm_strength[s];
    if (external[v] < kv * (ks - kv) / g.total) continue;

    touched.clear();
    for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const std::uint32_t u = g.target[e];
      if (u == v || comm[u] != s) continue;
      const std::uint32_t c = refined[u];
      if (link[c] == 0.0) touched.push_back(c);
      link[c] += g.weight[e];
    }

    // Candidate 0 is staying a singleton, with gain 0.
    std::vector<std::uint32_t> cand{refined[v]};
    gains.assign(1, 0.0);
    for (std::uint32_t c : touched) {
      if (external[c] < ref_strength[c] * (ks - ref_strength[c]) / g.total) continue;
      const double gain = link[c] - kv * ref_strength[c] / g.total;
      if (gain < 0.0) continue;
      cand.push_back(c);
      gains.push_back(gain);
    }
    std::size_t pick = 0;
    if (cand.size() > 1) {
      const double top = *std::max_element(gains.begin(), gains.end());
      std::vector<double> prob(gains.size());
      for (std::size_t i = 0; i < gains.size(); ++i) prob[i] = std::exp((gains[i] - top) / randomness);
      pick = std::discrete_distribution<std::size_t>(prob.begin(), prob.end())(rng);
    }
    const std::uint32_t target = cand[pick];
    if (target != refined[v]) {
      const std::uint32_t own = refined[v];
      external[target] += external[v] - 2.0 * link[target];
      ref_strength[target] += kv;
      ++ref_size[target];
      ref_strength[own] = 0.0;
      ref_size[own] = 0;
      refined[v] = target;
    }
    for (std::uint32_t c : touched) link[c] = 0.0;
  }
  return refined;
}

}  // namespace detail

struct LeidenOptions {
  double randomness = 0.01;
  std::size_t max_levels = 64;
  std::size_t max_iterations = 10;
};

// One randomized Leiden optimization of modularity on the simple projection
// of g. Iterates full passes, each starting from the previous partition, until
// a pass leaves the partition unchanged.
inline Partition leiden(const StaticGraph& g, Rng& rng, const LeidenOptions& opt = {}) {
  const std::size_t n = g.node_count();
  const detail::WeightedGraph base = detail::WeightedGraph::from(g);
  if (base.total == 0.0) return Partition::singletons(n);

  Partition current = Partition::singletons(n);
  for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
    detail::WeightedGraph level = base;
    std::vector<std::uint32_t> comm = current.label;
    std::vector<std::uint32_t> membership(n);
    std::iota(membership.begin(), membership.end(), 0u);
    bool moved_any = false;

    for (std::size_t depth = 0; depth < opt.max_levels; ++depth) {
      moved_any |= detail::move_nodes(level, comm, rng);
      std::vector<std::uint32_t> dense = comm;
      const std::uint32_t groups = detail::relabel_dense(dense);
      if (groups == level.n) break;

      std::vector<std::uint32_t> refined = detail::refine(level, comm, rng, opt.randomness);
      std::uint32_t parts = detail::relabel_dense(refined);
      if (parts == level.n) {
        refined = dense;
        parts = groups;
      }
      std::vector<std::uint32_t> next_comm(parts);
      for (std::uint32_t u = 0; u < level.n; ++u) next_comm[refined[u]] = dense[u];
      for (auto& m : membership) m = refined[m];
      level = level.aggregate(refined, parts);
      comm = std::move(next_comm);
    }

    Partition next{std::vector<std::uint32_t>(n)};
    for (std::size_t u = 0; u < n; ++u) next.label[u] = comm[membership[u]];
    next.canonicalize();
    const bool same = next.label == Partition(current).canonicalize().label;
    current = std::move(next);
    if (same || !moved_any) break;
  }
  return current;
}

struct CommunityResult {
  Partition best;
  double best_modularity = 0.0;
  double mean_modularity = 0.0;
  std::vector<double> run_modularity;
};

// Independent randomized Leiden runs; run r draws from derive_seed(seed, r).
inline CommunityResult detect_communities(const StaticGraph& g, std::size_t runs, std::uint64_t seed,
                                          unsigned threads = default_threads()) {
  if (runs < 1) runs = 1;
  std::vector<Partition> parts(runs);
  std::vector<double> q(runs);
  parallel_for(
      runs,
      [&](std::size_t r) {
        Rng rng(derive_seed(seed, r));
        parts[r] = leiden(g, rng);
        q[r] = modularity(g, parts[r]);
      },
      threads);
  CommunityResult out;
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs; ++r)
    if (q[r] > q[best]) best = r;
  out.best = std::move(parts[best]);
  out.best_modularity = q[best];
  out.mean_modularity = std::accumulate(q.begin(), q.end(), 0.0) / static_cast<double>(runs);
  out.run_modularity = std::move(q);
  return out;
}

}  // namespace warpact
