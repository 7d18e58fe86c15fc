#include "tap/matching.hpp"

#include <algorithm>
#include <queue>

#include "tap/errors.hpp"
#include "tap/util.hpp"

namespace tap {

void Matching::add_pair(int u, int v) {
  require(mate[u] == -1 && mate[v] == -1, "endpoint already matched");
  mate[u] = v;
  mate[v] = u;
  pairs.push_back(norm_pair(u, v));
  std::sort(pairs.begin(), pairs.end());
}

void Matching::remove_pair(int u, int v) {
  require(mate[u] == v && mate[v] == u, "pair not in matching");
  mate[u] = -1;
  mate[v] = -1;
  auto p = norm_pair(u, v);
  pairs.erase(std::remove(pairs.begin(), pairs.end(), p), pairs.end());
}

bool Matching::has_pair(int u, int v) const {
  return mate[u] == v && mate[v] == u;
}

namespace {

// Augmenting-path search with blossom shrinking, the classic O(V^3) scheme:
// alternating BFS from a free root; odd cycles are contracted by remapping
// vertices onto their blossom base.
struct Blossom {
  int n;
  std::vector<std::vector<int>> adj;
  std::vector<int> mate, p, base;
  std::vector<char> used, blossom;

  explicit Blossom(int n_) : n(n_), adj(n_), mate(n_, -1), p(n_, -1), base(n_), used(n_), blossom(n_) {}

  void mark_path(int v, int b, int child) {
    while (base[v] != b) {
      blossom[base[v]] = 1;
      blossom[base[mate[v]]] = 1;
      p[v] = child;
      child = mate[v];
      v = p[mate[v]];
    }
  }

  int find_common_base(int a, int b) {
    std::vector<char> seen(n, 0);
    int v = a;
    while (true) {
      v = base[v];
      seen[v] = 1;
      if (mate[v] == -1) break;
      v = p[mate[v]];
    }
    v = b;
    while (!seen[base[v]]) v = p[mate[base[v]]];
    return base[v];
  }

  bool try_augment(int root) {
    std::fill(used.begin(), used.end(), 0);
    std::fill(p.begin(), p.end(), -1);
    for (int i = 0; i < n; ++i) base[i] = i;
    used[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : adj[v]) {
        if (base[v] == base[to] || mate[v] == to) continue;
        if (to == root || (mate[to] != -1 && p[mate[to]] != -1)) {
          int cur_base = find_common_base(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur_base, to);
          mark_path(to, cur_base, v);
          for (int i = 0; i < n; ++i)
            if (blossom[base[i]]) {
              base[i] = cur_base;
              if (!used[i]) {
                used[i] = 1;
                q.push(i);
              }
            }
        } else if (p[to] == -1) {
          p[to] = v;
          if (mate[to] == -1) {
            // augment along the alternating path back to the root
            int u = to;
            while (u != -1) {
              int pv = p[u], ppv = mate[pv];
              mate[u] = pv;
              mate[pv] = u;
              u = ppv;
            }
            return true;
          }
          used[mate[to]] = 1;
          q.push(mate[to]);
        }
      }
    }
    return false;
  }
};

}  // namespace

Matching max_matching(int id_limit, const std::vector<std::pair<int, int>>& edges_in) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(edges_in.size());
  for (auto [u, v] : edges_in) {
    require(u != v, "self-loop matching edge");
    require(0 <= u && u < id_limit && 0 <= v && v < id_limit, "matching node out of range");
    edges.push_back(norm_pair(u, v));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Blossom bl(id_limit);
  for (auto [u, v] : edges) {
    bl.adj[u].push_back(v);
    bl.adj[v].push_back(u);
  }
  // adjacency is already sorted: edges were processed in ascending order
  for (auto [u, v] : edges)
    if (bl.mate[u] == -1 && bl.mate[v] == -1) {
      bl.mate[u] = v;
      bl.mate[v] = u;
    }
  for (int v = 0; v < id_limit; ++v)
    if (bl.mate[v] == -1 && !bl.adj[v].empty()) bl.try_augment(v);

  Matching m(id_limit);
  for (int v = 0; v < id_limit; ++v)
    if (bl.mate[v] > v) m.add_pair(v, bl.mate[v]);
  return m;
}

}  // namespace tap
