#pragma once

#include <vector>

#include "tap/instance.hpp"

namespace tap {

// Rooted tree over a subset of ids in [0, id_limit). The root maps to itself
// in parent[]. Leaves are the non-root present nodes without children.
struct RootedTree {
  int id_limit = 0;
  int root = -1;
  int node_count = 0;
  std::vector<char> present;
  std::vector<int> parent;
  std::vector<std::vector<int>> children;  // each list sorted ascending
  std::vector<int> depth;
  std::vector<int> pre_in;   // preorder interval [pre_in, pre_out)
  std::vector<int> pre_out;
  std::vector<int> preorder;  // present nodes in preorder

  bool is_ancestor(int u, int v) const {  // ancestor-or-equal
    return pre_in[u] <= pre_in[v] && pre_out[v] <= pre_out[u];
  }
  int lca(int u, int v) const;
  bool is_leaf(int v) const { return v != root && children[v].empty(); }
  std::vector<int> leaves() const;
  std::vector<int> subtree_nodes(int v) const;  // preorder slice
  std::vector<int> path_nodes(int u, int v) const;
  // tree edges on the u-v path, each named by its child endpoint
  std::vector<int> covered_edges(int u, int v) const;
};

RootedTree build_tree(int id_limit, const std::vector<std::pair<int, int>>& edges, int root);
RootedTree build_tree(const Instance& inst, int root);

}  // namespace tap
