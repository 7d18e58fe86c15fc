#include "tap/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>

#include "tap/errors.hpp"
#include "tap/util.hpp"

namespace tap {

namespace {

// Edge coverage masks over child-indexed tree edges, in 64-bit blocks.
struct Masks {
  int blocks;
  std::vector<std::uint64_t> full;
  std::vector<std::vector<std::uint64_t>> per_link;
};

void set_bit(std::vector<std::uint64_t>& m, int i) { m[i >> 6] |= std::uint64_t{1} << (i & 63); }

bool subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

Masks edge_masks(const RootedTree& t, const std::vector<std::pair<int, int>>& pairs) {
  Masks m;
  std::vector<int> edge_index(t.id_limit, -1);
  int edges = 0;
  for (int v : t.preorder)
    if (v != t.root) edge_index[v] = edges++;
  m.blocks = (edges + 63) / 64;
  if (m.blocks == 0) m.blocks = 1;
  m.full.assign(m.blocks, 0);
  for (int i = 0; i < edges; ++i) set_bit(m.full, i);
  for (auto [u, v] : pairs) {
    std::vector<std::uint64_t> mask(m.blocks, 0);
    for (int child : t.covered_edges(u, v)) set_bit(mask, edge_index[child]);
    m.per_link.push_back(std::move(mask));
  }
  return m;
}

// Lexicographically first k-subset whose masks OR to full. Only exact hits at
// depth k are accepted: the caller probes k in increasing order, so a cover
// completing earlier would have been found at a smaller k. The suffix cut uses
// that suffix ORs shrink as the start index grows, so a failed cut prunes the
// whole remaining sibling range.
bool first_cover(const Masks& m, const std::vector<std::vector<std::uint64_t>>& suffix, int k,
                 std::vector<int>& chosen) {
  int n = static_cast<int>(m.per_link.size());
  std::vector<std::vector<std::uint64_t>> acc(k + 1, std::vector<std::uint64_t>(m.blocks, 0));
  chosen.clear();
  auto dfs = [&](auto&& self, int start, int depth) -> bool {
    if (depth == k) return acc[depth] == m.full;
    for (int i = start; i < n; ++i) {
      bool feasible = true;
      for (int b = 0; b < m.blocks; ++b)
        if ((acc[depth][b] | suffix[i][b]) != m.full[b]) {
          feasible = false;
          break;
        }
      if (!feasible) return false;
      chosen.push_back(i);
      for (int b = 0; b < m.blocks; ++b) acc[depth + 1][b] = acc[depth][b] | m.per_link[i][b];
      if (self(self, i + 1, depth + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (dfs(dfs, 0, 0)) return true;
  chosen.clear();
  return false;
}

}  // namespace

bool verify_cover(const Instance& inst, const std::vector<int>& link_ids) {
  int n = inst.node_count;
  if (n <= 1) return true;
  // independent of RootedTree: BFS parents from node 0
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : inst.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> parent(n, -1), depth(n, 0), order;
  std::vector<char> seen(n, 0);
  order.push_back(0);
  seen[0] = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = v;
        depth[w] = depth[v] + 1;
        order.push_back(w);
      }
  }
  std::vector<char> covered(n, 0);  // edge (parent[v], v) keyed by v
  for (int id : link_ids) {
    require(0 <= id && id < static_cast<int>(inst.links.size()), "link index out of range");
    auto [u, v] = inst.links[id];
    while (u != v) {
      if (depth[u] < depth[v]) std::swap(u, v);
      covered[u] = 1;
      u = parent[u];
    }
  }
  for (int v = 1; v < n; ++v)
    if (!covered[v]) return false;
  return true;
}

ExactResult exact_opt(const Instance& inst, int max_links) {
  int m = static_cast<int>(inst.links.size());
  if (m > max_links)
    throw LimitError("instance has " + std::to_string(m) + " links, oracle limit is " +
                     std::to_string(max_links));
  if (inst.node_count <= 1) return {};

  RootedTree t = build_tree(inst, 0);
  Masks masks = edge_masks(t, inst.links);
  std::vector<std::vector<std::uint64_t>> suffix(m + 1,
                                                 std::vector<std::uint64_t>(masks.blocks, 0));
  for (int i = m - 1; i >= 0; --i)
    for (int b = 0; b < masks.blocks; ++b)
      suffix[i][b] = suffix[i + 1][b] | masks.per_link[i][b];
  if (m == 0 || suffix[0] != masks.full) throw InfeasibleError("links do not cover the tree");

  for (int k = 1; k <= m; ++k) {
    std::vector<int> chosen;
    if (first_cover(masks, suffix, k, chosen)) return {k, chosen};
  }
  throw InfeasibleError("links do not cover the tree");
}

namespace {

bool links_overlap(const RootedTree& t, const Link& ax, const Link& by) {
  std::set<int> pa, pb;
  for (int c : t.covered_edges(ax.u, ax.v)) pa.insert(c);
  for (int c : t.covered_edges(by.u, by.v)) pb.insert(c);
  bool share = false;
  for (int c : pa)
    if (pb.count(c)) {
      share = true;
      break;
    }
  if (!share) return false;
  auto on_path = [&t](int node, const Link& l) {
    for (int p : t.path_nodes(l.u, l.v))
      if (p == node) return true;
    return false;
  };
  return on_path(ax.u, by) || on_path(ax.v, by) || on_path(by.u, ax) || on_path(by.v, ax);
}

}  // namespace

CanonicalF canonical_F(const RootedTree& t, const LinkSet& closed, const StructureReport& report,
                       const Matching& m, int enum_limit) {
  int n_links = static_cast<int>(closed.links.size());
  if (n_links > enum_limit)
    throw LimitError("closed link set has " + std::to_string(n_links) +
                     " links, enumeration limit is " + std::to_string(enum_limit));

  std::vector<std::pair<int, int>> pairs;
  for (const Link& l : closed.links) pairs.emplace_back(l.u, l.v);
  Masks masks = edge_masks(t, pairs);
  std::vector<std::vector<std::uint64_t>> suffix(
      n_links + 1, std::vector<std::uint64_t>(masks.blocks, 0));
  for (int i = n_links - 1; i >= 0; --i)
    for (int b = 0; b < masks.blocks; ++b)
      suffix[i][b] = suffix[i + 1][b] | masks.per_link[i][b];
  if (n_links == 0 || suffix[0] != masks.full)
    throw InfeasibleError("links do not cover the tree");

  int opt = -1;
  for (int k = 1; k <= n_links && opt < 0; ++k) {
    std::vector<int> chosen;
    if (first_cover(masks, suffix, k, chosen)) opt = k;
  }
  require(opt > 0, "cover size search failed");

  std::set<std::pair<int, int>> twin_pairs;
  for (int id : report.twin_links) twin_pairs.insert(norm_pair(closed.links[id].u, closed.links[id].v));

  // enumerate all optimal covers in lexicographic order; keep the first one
  // that is shadows-minimal with the maximum twin-link count
  std::vector<int> best;
  int best_twins = -1;
  std::vector<int> cur;
  std::vector<std::vector<std::uint64_t>> accs(opt + 1,
                                               std::vector<std::uint64_t>(masks.blocks, 0));
  auto dfs = [&](auto&& self, int start, int depth) -> void {
    if (depth == opt) {
      if (accs[depth] != masks.full) return;
      // shadows-minimal: no member can be replaced by one of its proper shadows
      for (int idx = 0; idx < opt; ++idx) {
        std::vector<std::uint64_t> others(masks.blocks, 0);
        for (int j = 0; j < opt; ++j)
          if (j != idx)
            for (int b = 0; b < masks.blocks; ++b) others[b] |= masks.per_link[cur[j]][b];
        const auto& own = masks.per_link[cur[idx]];
        std::vector<std::uint64_t> needed(masks.blocks, 0);
        for (int b = 0; b < masks.blocks; ++b) needed[b] = own[b] & ~others[b];
        for (int g = 0; g < n_links; ++g) {
          if (g == cur[idx]) continue;
          const auto& gm = masks.per_link[g];
          if (!subset(gm, own) || gm == own) continue;  // proper shadows only
          if (subset(needed, gm)) return;               // replaceable: not shadows-minimal
        }
      }
      int twins = 0;
      for (int id : cur)
        if (twin_pairs.count(norm_pair(closed.links[id].u, closed.links[id].v))) ++twins;
      if (twins > best_twins) {
        best_twins = twins;
        best = cur;
      }
      return;
    }
    for (int i = start; i < n_links; ++i) {
      bool feasible = true;
      for (int b = 0; b < masks.blocks; ++b)
        if ((accs[depth][b] | suffix[i][b]) != masks.full[b]) {
          feasible = false;
          break;
        }
      if (!feasible) break;  // suffix OR only shrinks as i grows
      cur.push_back(i);
      for (int b = 0; b < masks.blocks; ++b)
        accs[depth + 1][b] = accs[depth][b] | masks.per_link[i][b];
      self(self, i + 1, depth + 1);
      cur.pop_back();
    }
  };
  dfs(dfs, 0, 0);
  require(best_twins >= 0, "no shadows-minimal optimal cover found");

  CanonicalF f;
  f.links = best;
  f.twin_count = best_twins;

  // structural claims: pairwise non-overlap, leaf degree exactly one
  for (size_t i = 0; i < best.size(); ++i)
    for (size_t j = 0; j < best.size(); ++j)
      if (i != j)
        require(!links_overlap(t, closed.links[best[i]], closed.links[best[j]]),
                "canonical cover contains overlapping links");
  std::vector<int> d_f(t.id_limit, 0);
  for (int id : best) {
    ++d_f[closed.links[id].u];
    ++d_f[closed.links[id].v];
  }
  for (int leaf : t.leaves()) require(d_f[leaf] == 1, "leaf degree in canonical cover is not one");

  std::set<int> forbidden(report.forbidden.begin(), report.forbidden.end());
  std::vector<char> is_leaf(t.id_limit, 0);
  for (int leaf : t.leaves()) is_leaf[leaf] = 1;
  std::vector<char> mf_end(t.id_limit, 0);
  for (int id : best) {
    const Link& l = closed.links[id];
    if (is_leaf[l.u] && is_leaf[l.v] && !forbidden.count(id)) {
      f.m_f.push_back(id);
      mf_end[l.u] = 1;
      mf_end[l.v] = 1;
    }
  }
  for (auto [b, bp] : m.pairs)
    if (!mf_end[b] && !mf_end[bp]) f.n_pairs.emplace_back(b, bp);

  f.d_j.assign(t.id_limit, 0);
  for (int id : best) {
    const Link& l = closed.links[id];
    if (report.locked.count(l.u) || report.locked.count(l.v)) continue;
    f.j_links.push_back(id);
    ++f.d_j[l.u];
    ++f.d_j[l.v];
  }
  return f;
}

int lower_bound_rhs_x2(const RootedTree& t, const StructureReport& report, const Matching& m,
                       const CanonicalF& f) {
  int unmatched = 0;
  for (int leaf : t.leaves())
    if (!m.matched(leaf)) ++unmatched;
  std::vector<char> excluded(t.id_limit, 0);
  for (int leaf : t.leaves()) excluded[leaf] = 1;
  for (const auto& [s, pair] : report.stems) excluded[s] = 1;
  int ticket_sum = 0;
  for (int v : t.preorder)
    if (!excluded[v]) ticket_sum += f.d_j[v];
  return 3 * m.size() + 2 * unmatched + static_cast<int>(f.n_pairs.size()) + ticket_sum;
}

AuditOutcome audit_contraction(const ContractionState& pre, const CanonicalF& f,
                               const StructureReport& original_report,
                               const std::vector<int>& nodes, int cover_size) {
  int credit = pre.coupons_in_x2(nodes);
  std::set<int> in(nodes.begin(), nodes.end());
  for (auto [b, bp] : f.n_pairs)
    if (pre.matching.has_pair(b, bp) && in.count(b) && in.count(bp)) credit += 1;
  std::vector<char> excluded(pre.instance.node_count, 0);
  for (int leaf : pre.original_tree.leaves()) excluded[leaf] = 1;
  for (const auto& [s, pair] : original_report.stems) excluded[s] = 1;
  for (int x = 0; x < pre.instance.node_count; ++x) {
    if (excluded[x] || !pre.is_original_node(x)) continue;
    if (in.count(x)) credit += f.d_j[x];
  }
  int cost = 2 * (cover_size + 1);
  return {credit >= cost, credit, cost};
}

}  // namespace tap
