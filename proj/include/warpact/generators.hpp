#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "warpact/errors.hpp"
#include "warpact/graph.hpp"
#include "warpact/merge_map.hpp"
#include "warpact/random.hpp"

namespace warpact {

enum class ModelKind { WarPact, ErdosRenyi, BarabasiAlbert, WattsStrogatz };

// Named by how the first and the second merge candidate are drawn:
// R uniformly, K proportionally to degree, I proportionally to 1/degree.
enum class SelectionRule { RR, KK, KR, KI };

enum class SeedKind { PerfectMatching, ErdosRenyi, RandomTree };

inline constexpr SelectionRule kAllRules[] = {SelectionRule::RR, SelectionRule::KK, SelectionRule::KR,
                                              SelectionRule::KI};
inline constexpr SeedKind kAllSeeds[] = {SeedKind::PerfectMatching, SeedKind::ErdosRenyi,
                                         SeedKind::RandomTree};

inline std::string_view to_string(SelectionRule r) {
  switch (r) {
    case SelectionRule::RR: return "rr";
    case SelectionRule::KK: return "kk";
    case SelectionRule::KR: return "kr";
    case SelectionRule::KI: return "ki";
  }
  return "?";
}

inline std::string_view to_string(SeedKind s) {
  switch (s) {
    case SeedKind::PerfectMatching: return "matching";
    case SeedKind::ErdosRenyi: return "er";
    case SeedKind::RandomTree: return "tree";
  }
  return "?";
}

inline std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::WarPact: return "wp";
    case ModelKind::ErdosRenyi: return "er";
    case ModelKind::BarabasiAlbert: return "ba";
    case ModelKind::WattsStrogatz: return "ws";
  }
  return "?";
}

inline std::optional<SelectionRule> parse_rule(std::string_view s) {
  for (SelectionRule r : kAllRules)
    if (to_string(r) == s) return r;
  return std::nullopt;
}

inline std::optional<SeedKind> parse_seed_kind(std::string_view s) {
  for (SeedKind k : kAllSeeds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

inline std::optional<ModelKind> parse_model(std::string_view s) {
  for (ModelKind k : {ModelKind::WarPact, ModelKind::ErdosRenyi, ModelKind::BarabasiAlbert,
                      ModelKind::WattsStrogatz})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

struct ModelSpec {
  ModelKind model = ModelKind::WarPact;
  std::size_t nodes = 0;
  std::optional<std::size_t> edges;
  std::optional<double> mean_degree;
  SelectionRule rule = SelectionRule::KR;
  SeedKind seed = SeedKind::PerfectMatching;
  std::uint64_t rng_seed = 0;
  double rewire = 0.1;
  // Consecutive rejected candidate pairs tolerated in one war pact step;
  // 0 selects the default of 1000 * nodes.
  std::size_t max_rejections = 0;

  double average_degree() const {
    if (mean_degree) return *mean_degree;
    if (edges && nodes > 0) return 2.0 * static_cast<double>(*edges) / static_cast<double>(nodes);
    return 0.0;
  }

  std::size_t edge_target() const {
    if (edges) return *edges;
    if (mean_degree) return static_cast<std::size_t>(std::llround(*mean_degree * static_cast<double>(nodes) / 2.0));
    return 0;
  }

  // Preferential-attachment edges per arriving node.
  std::size_t attach_count() const {
    return static_cast<std::size_t>(std::llround(average_degree() / 2.0));
  }

  void validate() const {
    if (nodes < 1) throw InvalidSpecError("node count must be at least 1");
    if (!edges && !mean_degree) throw InvalidSpecError("either an edge count or a mean degree is required");
    if (mean_degree && (!std::isfinite(*mean_degree) || *mean_degree < 0.0))
      throw InvalidSpecError("mean degree must be a non-negative number");
    if (edges && mean_degree &&
        static_cast<std::size_t>(std::llround(*mean_degree * static_cast<double>(nodes) / 2.0)) != *edges)
      throw InvalidSpecError("mean degree is inconsistent with 2m/n");
    switch (model) {
      case ModelKind::WarPact:
        if (2 * edge_target() < nodes)
          throw InvalidSpecError("war pact requires 2m >= n (got n=" + std::to_string(nodes) +
                                 ", m=" + std::to_string(edge_target()) + ")");
        break;
      case ModelKind::ErdosRenyi: {
        const double k = average_degree();
        if (nodes == 1 ? k != 0.0 : k / static_cast<double>(nodes - 1) > 1.0)
          throw InvalidSpecError("edge probability <k>/(n-1) must lie in [0, 1]");
        break;
      }
      case ModelKind::BarabasiAlbert:
        if (attach_count() < 1) throw InvalidSpecError("attach count round(<k>/2) must be at least 1");
        if (nodes <= attach_count()) throw InvalidSpecError("n must exceed the attach count");
        break;
      case ModelKind::WattsStrogatz: {
        const double k = average_degree();
        if (k < 2.0 || std::fmod(k, 2.0) != 0.0)
          throw InvalidSpecError("ring lattice degree must be an even integer >= 2");
        if (k >= static_cast<double>(nodes)) throw InvalidSpecError("ring lattice degree must be below n");
        if (!(rewire >= 0.0 && rewire <= 1.0)) throw InvalidSpecError("rewiring probability must lie in [0, 1]");
        break;
      }
    }
  }
};

namespace detail {

// Keeps only nodes with at least one edge, relabelled densely in order.
inline Multigraph drop_isolated(std::size_t nodes, const std::vector<Edge>& edges) {
  std::vector<std::uint8_t> touched(nodes, 0);
  for (const Edge& e : edges) touched[e.u] = touched[e.v] = 1;
  std::vector<NodeId> index(nodes, kUnreachable);
  NodeId next = 0;
  for (NodeId x = 0; x < nodes; ++x)
    if (touched[x]) index[x] = next++;
  Multigraph g(next);
  for (const Edge& e : edges) g.add_edge(index[e.u], index[e.v], e.multiplicity);
  return g;
}

inline std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace detail

// m disjoint edges on 2m nodes; edge i joins nodes i and m + i.
inline Multigraph perfect_matching(std::size_t m) {
  Multigraph g(2 * m);
  for (std::size_t i = 0; i < m; ++i) g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(m + i));
  return g;
}

// m distinct pairs drawn uniformly from 2m nodes, isolated nodes dropped.
inline Multigraph erdos_renyi_seed(std::size_t m, Rng& rng) {
  const std::size_t nodes = 2 * m;
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    const auto u = static_cast<NodeId>(uniform_index(rng, nodes));
    const auto v = static_cast<NodeId>(uniform_index(rng, nodes));
    if (u == v || !seen.insert(detail::pair_key(u, v)).second) continue;
    edges.push_back({u, v, 1});
  }
  return detail::drop_isolated(nodes, edges);
}

// Random recursive tree with m edges: node t attaches to a uniform earlier node.
inline Multigraph random_tree_seed(std::size_t m, Rng& rng) {
  Multigraph g(m + 1);
  for (std::size_t t = 1; t <= m; ++t)
    g.add_edge(static_cast<NodeId>(t), static_cast<NodeId>(uniform_index(rng, t)));
  return g;
}

// Shrinks a seed network by repeatedly merging pairs of non-adjacent nodes
// until the requested node count remains. Edges are never created or removed,
// so the edge count (with multiplicity) is that of the seed.
class WarPactProcess {
 public:
  explicit WarPactProcess(const ModelSpec& spec) : spec_(spec), rng_(spec.rng_seed) {
    spec_.model = ModelKind::WarPact;
    spec_.validate();
    const std::size_t m = spec_.edge_target();
    switch (spec_.seed) {
      case SeedKind::PerfectMatching: graph_ = perfect_matching(m); break;
      case SeedKind::ErdosRenyi: graph_ = erdos_renyi_seed(m, rng_); break;
      case SeedKind::RandomTree: graph_ = random_tree_seed(m, rng_); break;
    }
    if (graph_.node_count() < spec_.nodes)
      throw InvalidSpecError("seed '" + std::string(to_string(spec_.seed)) + "' has only " +
                             std::to_string(graph_.node_count()) + " non-isolated nodes, fewer than n=" +
                             std::to_string(spec_.nodes));
    map_ = MergeMap(graph_);
    live_ = IndexedSet(graph_.handle_bound());
    for (NodeId u : graph_.live_nodes()) live_.insert(u);
    if (spec_.rule == SelectionRule::KI) {
      inverse_ = WeightedSampler(graph_.handle_bound());
      for (NodeId u : graph_.live_nodes()) inverse_.set(u, 1.0 / static_cast<double>(graph_.degree(u)));
    }
    budget_ = spec_.max_rejections ? spec_.max_rejections : 1000 * spec_.nodes;
  }

  bool finished() const { return graph_.node_count() <= spec_.nodes; }
  std::size_t steps() const { return steps_; }
  std::size_t rejections() const { return rejections_; }
  const Multigraph& graph() const { return graph_; }
  const MergeMap& merge_map() const { return map_; }

  struct Merge {
    NodeId survivor;
    NodeId absorbed;
  };

  // Draws candidate pairs until one is mergeable and merges it. Coinciding
  // or adjacent candidates are redrawn without consuming a step.
  Merge step() {
    std::size_t rejected = 0;
    for (;;) {
      const auto [a, b] = draw_pair();
      if (a != b && graph_.multiplicity(a, b) == 0) {
        const NodeId keep = graph_.merge(a, b);
        const NodeId gone = keep == a ? b : a;
        map_.record_merge(keep, gone);
        live_.erase(gone);
        if (spec_.rule == SelectionRule::KI) {
          inverse_.set(gone, 0.0);
          inverse_.set(keep, 1.0 / static_cast<double>(graph_.degree(keep)));
        }
        ++steps_;
        return {keep, gone};
      }
      ++rejections_;
      if (++rejected >= budget_)
        throw NonTerminationError("war pact step exceeded " + std::to_string(budget_) +
                                  " consecutive rejected candidate pairs at n=" +
                                  std::to_string(graph_.node_count()));
    }
  }

  void run() {
    while (!finished()) step();
  }

  Multigraph release() && { return std::move(graph_); }

 private:
  NodeId draw_uniform() { return live_.sample(rng_); }
  NodeId draw_by_degree() { return map_.owner(uniform_index(rng_, map_.slot_count())); }
  NodeId draw_by_inverse_degree() { return static_cast<NodeId>(inverse_.sample(rng_)); }

  std::pair<NodeId, NodeId> draw_pair() {
    switch (spec_.rule) {
      case SelectionRule::RR: {
        const NodeId a = draw_uniform();
        return {a, draw_uniform()};
      }
      case SelectionRule::KK: {
        const NodeId a = draw_by_degree();
        return {a, draw_by_degree()};
      }
      case SelectionRule::KR: {
        const NodeId a = draw_by_degree();
        return {a, draw_uniform()};
      }
      case SelectionRule::KI: {
        const NodeId a = draw_by_degree();
        return {a, draw_by_inverse_degree()};
      }
    }
    return {0, 0};
  }

  ModelSpec spec_;
  Rng rng_;
  Multigraph graph_;
  MergeMap map_;
  IndexedSet live_{0};
  WeightedSampler inverse_{0};
  std::size_t budget_ = 0;
  std::size_t steps_ = 0;
  std::size_t rejections_ = 0;
};

inline Multigraph generate_war_pact(const ModelSpec& spec) {
  WarPactProcess process(spec);
  process.run();
  return std::move(process).release();
}

// G(n, p) with p = <k>/(n-1), by geometric skipping over the pair sequence.
inline Multigraph generate_er(const ModelSpec& spec) {
  spec.validate();
  const std::size_t n = spec.nodes;
  Multigraph g(n);
  if (n < 2) return g;
  const double p = spec.average_degree() / static_cast<double>(n - 1);
  if (p <= 0.0) return g;
  Rng rng(spec.rng_seed);
  if (p >= 1.0) {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }
  const double log_q = std::log1p(-p);
  std::int64_t v = 1, w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = uniform_real(rng);
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) g.add_edge(static_cast<NodeId>(v), static_cast<NodeId>(w));
  }
  return g;
}

// Preferential attachment from a clique on a+1 nodes; each arriving node links
// to a distinct existing nodes drawn proportionally to degree.
inline Multigraph generate_ba(const ModelSpec& spec) {
  spec.validate();
  const std::size_t a = spec.attach_count();
  const std::size_t n = spec.nodes;
  Rng rng(spec.rng_seed);
  Multigraph g(n);
  std::vector<NodeId> ends;
  ends.reserve(2 * a * n);
  for (NodeId u = 0; u <= a; ++u)
    for (NodeId v = u + 1; v <= a; ++v) {
      g.add_edge(u, v);
      ends.push_back(u);
      ends.push_back(v);
    }
  std::vector<NodeId> targets;
  for (auto t = static_cast<NodeId>(a + 1); t < n; ++t) {
    targets.clear();
    while (targets.size() < a) {
      const NodeId x = ends[uniform_index(rng, ends.size())];
      if (std::find(targets.begin(), targets.end(), x) == targets.end()) targets.push_back(x);
    }
    for (NodeId x : targets) {
      g.add_edge(t, x);
      ends.push_back(t);
      ends.push_back(x);
    }
  }
  return g;
}

// Ring lattice with <k>/2 neighbours on each side; every lattice edge has its
// far endpoint rewired with the given probability, avoiding self and parallel
// edges.
inline Multigraph generate_ws(const ModelSpec& spec) {
  spec.validate();
  const std::size_t n = spec.nodes;
  const auto half = static_cast<std::size_t>(spec.average_degree()) / 2;
  Rng rng(spec.rng_seed);
  std::vector<std::unordered_set<NodeId>> adj(n);
  auto link = [&](NodeId u, NodeId v) {
    adj[u].insert(v);
    adj[v].insert(u);
  };
  for (std::size_t j = 1; j <= half; ++j)
    for (NodeId u = 0; u < n; ++u) link(u, static_cast<NodeId>((u + j) % n));
  if (spec.rewire > 0.0) {
    for (std::size_t j = 1; j <= half; ++j)
      for (NodeId u = 0; u < n; ++u) {
        if (uniform_real(rng) >= spec.rewire) continue;
        const auto v = static_cast<NodeId>((u + j) % n);
        if (!adj[u].count(v) || adj[u].size() >= n - 1) continue;
        NodeId w;
        do {
          w = static_cast<NodeId>(uniform_index(rng, n));
        } while (w == u || adj[u].count(w));
        adj[u].erase(v);
        adj[v].erase(u);
        link(u, w);
      }
  }
  Multigraph g(n);
  for (NodeId u = 0; u < n; ++u) {
    std::vector<NodeId> nb(adj[u].begin(), adj[u].end());
    std::sort(nb.begin(), nb.end());
    for (NodeId v : nb)
      if (u < v) g.add_edge(u, v);
  }
  return g;
}

inline Multigraph generate(const ModelSpec& spec) {
  switch (spec.model) {
    case ModelKind::WarPact: return generate_war_pact(spec);
    case ModelKind::ErdosRenyi: return generate_er(spec);
    case ModelKind::BarabasiAlbert: return generate_ba(spec);
    case ModelKind::WattsStrogatz: return generate_ws(spec);
  }
  throw InvalidSpecError("unknown model kind");
}

}  // namespace warpact
