#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <deque>
#include <limits>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "warpact/errors.hpp"

namespace warpact {

using NodeId = std::uint32_t;
using Distance = std::uint32_t;

// Distance to nodes that cannot be reached from the BFS source (and to dead
// handles of a Multigraph). Never produced as a finite hop count.
inline constexpr Distance kUnreachable = std::numeric_limits<Distance>::max();

struct Edge {
  NodeId u;
  NodeId v;
  std::uint32_t multiplicity = 1;
};

// Undirected multigraph with parallel edges but no self-edges. Node handles
// are dense integers; merged-away handles stay dead and are never reused.
class Multigraph {
 public:
  using Neighbors = std::unordered_map<NodeId, std::uint32_t>;

  Multigraph() = default;
  explicit Multigraph(std::size_t nodes)
      : adj_(nodes), degree_(nodes, 0), live_(nodes, 1), live_count_(nodes) {}

  NodeId add_node() {
    adj_.emplace_back();
    degree_.push_back(0);
    live_.push_back(1);
    ++live_count_;
    return static_cast<NodeId>(adj_.size() - 1);
  }

  void add_edge(NodeId u, NodeId v, std::uint32_t multiplicity = 1) {
    if (u == v) throw Error("self-edges are not allowed");
    if (!is_live(u) || !is_live(v)) throw Error("edge endpoint is not a live node");
    if (multiplicity == 0) return;
    adj_[u][v] += multiplicity;
    adj_[v][u] += multiplicity;
    degree_[u] += multiplicity;
    degree_[v] += multiplicity;
    edges_ += multiplicity;
  }

  std::uint32_t multiplicity(NodeId u, NodeId v) const {
    const auto& small = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    const NodeId other = adj_[u].size() <= adj_[v].size() ? v : u;
    auto it = small.find(other);
    return it == small.end() ? 0 : it->second;
  }

  // Degree counting edge multiplicity.
  std::size_t degree(NodeId u) const { return degree_[u]; }
  // Number of distinct neighbours.
  std::size_t simple_degree(NodeId u) const { return adj_[u].size(); }
  const Neighbors& neighbors(NodeId u) const { return adj_[u]; }

  bool is_live(NodeId u) const { return u < live_.size() && live_[u] != 0; }
  std::size_t node_count() const { return live_count_; }
  std::size_t edge_count() const { return edges_; }
  std::size_t handle_bound() const { return adj_.size(); }

  std::vector<NodeId> live_nodes() const {
    std::vector<NodeId> out;
    out.reserve(live_count_);
    for (NodeId u = 0; u < adj_.size(); ++u)
      if (live_[u]) out.push_back(u);
    return out;
  }

  // Replaces a and b with a single node carrying the union of their incident
  // edges (multiplicities added). The survivor keeps one of the two handles:
  // whichever has more distinct neighbours, so the rewiring cost is bounded by
  // the smaller side.
  NodeId merge(NodeId a, NodeId b) {
    if (a == b) throw IdentityMergeError();
    assert(is_live(a) && is_live(b));
    if (multiplicity(a, b) > 0) throw AdjacentPairError();
    NodeId keep = a, drop = b;
    if (adj_[b].size() > adj_[a].size()) std::swap(keep, drop);
    auto& kept = adj_[keep];
    for (const auto& [w, mult] : adj_[drop]) {
      auto& back = adj_[w];
      back.erase(drop);
      back[keep] += mult;
      kept[w] += mult;
    }
    degree_[keep] += degree_[drop];
    degree_[drop] = 0;
    Neighbors().swap(adj_[drop]);
    live_[drop] = 0;
    --live_count_;
    return keep;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (NodeId u = 0; u < adj_.size(); ++u)
      for (const auto& [v, mult] : adj_[u])
        if (u < v) out.push_back({u, v, mult});
    std::sort(out.begin(), out.end(),
              [](const Edge& x, const Edge& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
    return out;
  }

  void clamp_multiplicities() {
    edges_ = 0;
    for (NodeId u = 0; u < adj_.size(); ++u) {
      for (auto& [v, mult] : adj_[u]) mult = 1;
      degree_[u] = adj_[u].size();
      edges_ += adj_[u].size();
    }
    edges_ /= 2;
  }

  bool is_simple() const {
    for (const auto& nb : adj_)
      for (const auto& [v, mult] : nb)
        if (mult > 1) return false;
    return true;
  }

 private:
  std::vector<Neighbors> adj_;
  std::vector<std::size_t> degree_;
  std::vector<std::uint8_t> live_;
  std::size_t live_count_ = 0;
  std::size_t edges_ = 0;
};

inline NodeId merge_nodes(Multigraph& g, NodeId a, NodeId b) { return g.merge(a, b); }

// All multiplicities clamped to 1; handles and liveness unchanged.
inline Multigraph simple_projection(const Multigraph& g) {
  Multigraph out = g;
  out.clamp_multiplicities();
  return out;
}

// Immutable compressed adjacency over dense node ids 0..n-1, neighbours sorted
// ascending with per-entry multiplicity. All analysis runs on this form.
class StaticGraph {
 public:
  StaticGraph() : offsets_(1, 0) {}

  StaticGraph(std::size_t nodes, std::span<const Edge> edges) : n_(nodes) {
    std::vector<std::vector<std::pair<NodeId, std::uint32_t>>> lists(nodes);
    for (const Edge& e : edges) {
      if (e.u == e.v) throw Error("self-edges are not allowed");
      if (e.u >= nodes || e.v >= nodes) throw Error("edge endpoint out of range");
      if (e.multiplicity == 0) continue;
      lists[e.u].push_back({e.v, e.multiplicity});
      lists[e.v].push_back({e.u, e.multiplicity});
    }
    offsets_.assign(nodes + 1, 0);
    degree_.assign(nodes, 0);
    for (std::size_t u = 0; u < nodes; ++u) {
      auto& l = lists[u];
      std::sort(l.begin(), l.end());
      // Coalesce repeated entries of the same neighbour.
      std::size_t w = 0;
      for (std::size_t r = 0; r < l.size(); ++r) {
        if (w > 0 && l[w - 1].first == l[r].first)
          l[w - 1].second += l[r].second;
        else
          l[w++] = l[r];
      }
      l.resize(w);
      offsets_[u + 1] = offsets_[u] + w;
    }
    targets_.reserve(offsets_.back());
    mult_.reserve(offsets_.back());
    for (std::size_t u = 0; u < nodes; ++u)
      for (const auto& [v, mult] : lists[u]) {
        targets_.push_back(v);
        mult_.push_back(mult);
        degree_[u] += mult;
        edges_ += mult;
      }
    edges_ /= 2;
  }

  // Compacts live handles of g, in ascending handle order, to 0..n-1.
  static StaticGraph from(const Multigraph& g, std::vector<NodeId>* handles = nullptr) {
    std::vector<NodeId> live = g.live_nodes();
    std::vector<NodeId> index(g.handle_bound(), kUnreachable);
    for (NodeId i = 0; i < live.size(); ++i) index[live[i]] = i;
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) {
      e.u = index[e.u];
      e.v = index[e.v];
    }
    if (handles) *handles = std::move(live);
    return StaticGraph(index.empty() ? 0 : g.node_count(), edges);
  }

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_; }
  std::size_t simple_edge_count() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::span<const std::uint32_t> multiplicities(NodeId u) const {
    return {mult_.data() + offsets_[u], mult_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return degree_[u]; }
  std::size_t simple_degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  std::uint32_t multiplicity(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return 0;
    return mult_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
  }

  bool is_simple() const {
    return std::all_of(mult_.begin(), mult_.end(), [](std::uint32_t m) { return m == 1; });
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(targets_.size() / 2);
    for (NodeId u = 0; u < n_; ++u)
      for (std::size_t e = offsets_[u]; e < offsets_[u + 1]; ++e)
        if (u < targets_[e]) out.push_back({u, targets_[e], mult_[e]});
    return out;
  }

  StaticGraph simple() const {
    StaticGraph out = *this;
    std::fill(out.mult_.begin(), out.mult_.end(), 1u);
    out.edges_ = targets_.size() / 2;
    for (NodeId u = 0; u < n_; ++u) out.degree_[u] = simple_degree(u);
    return out;
  }

  friend bool operator==(const StaticGraph&, const StaticGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<std::uint32_t> mult_;
  std::vector<std::size_t> degree_;
};

// Hop distances from source; any positive multiplicity counts as one edge.
inline std::vector<Distance> bfs_distances(const StaticGraph& g, NodeId source) {
  std::vector<Distance> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> frontier{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const NodeId u = frontier[head];
    for (NodeId v : g.neighbors(u))
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
  }
  return dist;
}

// Indexed by handle; dead handles report kUnreachable.
inline std::vector<Distance> bfs_distances(const Multigraph& g, NodeId source) {
  std::vector<Distance> dist(g.handle_bound(), kUnreachable);
  std::deque<NodeId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (const auto& [v, mult] : g.neighbors(u))
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

struct Components {
  std::vector<std::uint32_t> label;  // per node, dense 0..count-1
  std::vector<std::size_t> sizes;

  std::size_t count() const { return sizes.size(); }
  std::size_t largest() const {
    return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
  }
};

inline Components connected_components(const StaticGraph& g) {
  Components c;
  c.label.assign(g.node_count(), std::numeric_limits<std::uint32_t>::max());
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (c.label[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    const auto id = static_cast<std::uint32_t>(c.sizes.size());
    std::size_t size = 0;
    c.label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId v : g.neighbors(u))
        if (c.label[v] == std::numeric_limits<std::uint32_t>::max()) {
          c.label[v] = id;
          stack.push_back(v);
        }
    }
    c.sizes.push_back(size);
  }
  return c;
}

}  // namespace warpact
