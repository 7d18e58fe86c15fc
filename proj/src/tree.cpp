#include "tap/tree.hpp"

#include <algorithm>

#include "tap/errors.hpp"

namespace tap {

int RootedTree::lca(int u, int v) const {
  while (u != v) {
    if (depth[u] < depth[v]) std::swap(u, v);
    u = parent[u];
  }
  return u;
}

std::vector<int> RootedTree::leaves() const {
  std::vector<int> out;
  for (int v : preorder)
    if (is_leaf(v)) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> RootedTree::subtree_nodes(int v) const {
  return {preorder.begin() + pre_in[v], preorder.begin() + pre_out[v]};
}

std::vector<int> RootedTree::path_nodes(int u, int v) const {
  std::vector<int> from_u, from_v;
  int a = u, b = v;
  while (a != b) {
    if (depth[a] >= depth[b]) {
      from_u.push_back(a);
      a = parent[a];
    } else {
      from_v.push_back(b);
      b = parent[b];
    }
  }
  from_u.push_back(a);
  from_u.insert(from_u.end(), from_v.rbegin(), from_v.rend());
  return from_u;
}

std::vector<int> RootedTree::covered_edges(int u, int v) const {
  std::vector<int> out;
  int a = u, b = v;
  while (a != b) {
    if (depth[a] >= depth[b]) {
      out.push_back(a);
      a = parent[a];
    } else {
      out.push_back(b);
      b = parent[b];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RootedTree build_tree(int id_limit, const std::vector<std::pair<int, int>>& edges, int root) {
  RootedTree t;
  t.id_limit = id_limit;
  t.root = root;
  t.present.assign(id_limit, 0);
  t.parent.assign(id_limit, -1);
  t.children.assign(id_limit, {});
  t.depth.assign(id_limit, 0);
  t.pre_in.assign(id_limit, 0);
  t.pre_out.assign(id_limit, 0);

  std::vector<std::vector<int>> adj(id_limit);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  t.present[root] = 1;
  t.parent[root] = root;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (w == t.parent[v] || (w == root && v != root)) continue;
      require(!t.present[w], "tree edges contain a cycle");
      t.present[w] = 1;
      t.parent[w] = v;
      t.depth[w] = t.depth[v] + 1;
      t.children[v].push_back(w);
      stack.push_back(w);
    }
  }
  for (int v = 0; v < id_limit; ++v)
    if (t.present[v]) std::sort(t.children[v].begin(), t.children[v].end());

  // preorder with children visited in ascending order
  t.preorder.clear();
  std::vector<std::pair<int, size_t>> frames{{root, 0}};
  t.pre_in[root] = 0;
  while (!frames.empty()) {
    auto& [v, next] = frames.back();
    if (next == 0) {
      t.pre_in[v] = static_cast<int>(t.preorder.size());
      t.preorder.push_back(v);
    }
    if (next < t.children[v].size()) {
      int c = t.children[v][next++];
      frames.emplace_back(c, 0);
    } else {
      t.pre_out[v] = static_cast<int>(t.preorder.size());
      frames.pop_back();
    }
  }
  t.node_count = static_cast<int>(t.preorder.size());
  return t;
}

RootedTree build_tree(const Instance& inst, int root) {
  require(root >= 0 && root < inst.node_count, "root out of range");
  RootedTree t = build_tree(inst.node_count, inst.tree_edges, root);
  require(t.node_count == inst.node_count, "tree edges do not reach every node");
  return t;
}

}  // namespace tap
