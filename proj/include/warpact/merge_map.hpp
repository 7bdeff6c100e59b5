#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "warpact/graph.hpp"

namespace warpact {

// Maps each edge endpoint of the seed graph ("slot", 2m in total) to the live
// node that currently owns it. Seed nodes are tracked in a disjoint-set forest
// whose roots are always live handles, so owner() is near-constant time.
//
// Every slot belongs to exactly one live node and a node owns as many slots as
// its multigraph degree: merging two non-adjacent nodes adds both slot counts
// and both degrees. Drawing a slot uniformly is therefore a degree-proportional
// node draw.
class MergeMap {
 public:
  MergeMap() = default;

  explicit MergeMap(const Multigraph& seed)
      : parent_(seed.handle_bound()), slots_of_(seed.handle_bound(), 0) {
    std::iota(parent_.begin(), parent_.end(), NodeId{0});
    slot_owner_.reserve(2 * seed.edge_count());
    for (NodeId u = 0; u < seed.handle_bound(); ++u) {
      if (!seed.is_live(u)) continue;
      for (std::size_t k = 0; k < seed.degree(u); ++k) slot_owner_.push_back(u);
      slots_of_[u] = seed.degree(u);
    }
  }

  std::size_t slot_count() const { return slot_owner_.size(); }
  std::size_t slots_of(NodeId node) const { return slots_of_[node]; }

  NodeId owner(std::size_t slot) { return find(slot_owner_[slot]); }

  NodeId find(NodeId x) {
    NodeId root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const NodeId next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  void record_merge(NodeId survivor, NodeId absorbed) {
    parent_[absorbed] = survivor;
    slots_of_[survivor] += slots_of_[absorbed];
    slots_of_[absorbed] = 0;
  }

  // Slot count equals degree for every live node and slots only map to live
  // nodes.
  bool consistent_with(const Multigraph& g) const {
    std::vector<std::size_t> seen(slots_of_.size(), 0);
    for (NodeId s : slot_owner_) {
      NodeId r = s;
      while (parent_[r] != r) r = parent_[r];
      if (!g.is_live(r)) return false;
      ++seen[r];
    }
    for (NodeId u = 0; u < slots_of_.size(); ++u) {
      if (g.is_live(u) && (slots_of_[u] != g.degree(u) || seen[u] != g.degree(u))) return false;
      if (!g.is_live(u) && slots_of_[u] != 0) return false;
    }
    return true;
  }

 private:
  std::vector<NodeId> slot_owner_;  // slot -> seed node
  std::vector<NodeId> parent_;
  std::vector<std::size_t> slots_of_;
};

}  // namespace warpact
