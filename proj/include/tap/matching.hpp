#pragma once

#include <vector>

#include "tap/instance.hpp"

namespace tap {

struct Matching {
  std::vector<int> mate;                       // -1 when unmatched
  std::vector<std::pair<int, int>> pairs;      // normalized, sorted

  explicit Matching(int id_limit = 0) : mate(id_limit, -1) {}
  bool matched(int v) const { return mate[v] != -1; }
  int mate_of(int v) const { return mate[v]; }
  int size() const { return static_cast<int>(pairs.size()); }
  void add_pair(int u, int v);
  void remove_pair(int u, int v);
  bool has_pair(int u, int v) const;
};

// Maximum cardinality matching on a general graph (blossom shrinking).
// Deterministic: sorted-edge greedy initialization, then augmenting searches
// from free vertices in ascending order with sorted adjacency scans.
Matching max_matching(int id_limit, const std::vector<std::pair<int, int>>& edges);

}  // namespace tap
