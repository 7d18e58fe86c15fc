#include "tap/structures.hpp"

#include <algorithm>
#include <set>

#include "tap/errors.hpp"
#include "tap/util.hpp"

namespace tap {

namespace {

// subtree(s) consists exactly of the two paths s..a and s..b
bool subtree_is_two_paths(const RootedTree& t, int s, int a, int b) {
  auto sub = t.subtree_nodes(s);
  std::set<int> on_paths;
  for (int v : t.path_nodes(s, a)) on_paths.insert(v);
  for (int v : t.path_nodes(s, b)) on_paths.insert(v);
  if (sub.size() != on_paths.size()) return false;
  for (int v : sub)
    if (!on_paths.count(v)) return false;
  return true;
}

}  // namespace

std::pair<std::vector<int>, std::map<int, std::pair<int, int>>> find_twins(
    const RootedTree& t, const LinkSet& links) {
  std::vector<int> twin_links;
  std::map<int, std::pair<int, int>> stems;
  for (size_t id = 0; id < links.links.size(); ++id) {
    const Link& l = links.links[id];
    if (!t.is_leaf(l.u) || !t.is_leaf(l.v)) continue;
    int s = t.lca(l.u, l.v);
    if (s == t.root) continue;
    if (!subtree_is_two_paths(t, s, l.u, l.v)) continue;
    twin_links.push_back(static_cast<int>(id));
    stems[s] = norm_pair(l.u, l.v);
  }
  std::sort(twin_links.begin(), twin_links.end());
  return {twin_links, stems};
}

std::pair<std::map<int, StructureReport::LockInfo>, std::vector<LockCandidate>> find_locking(
    const RootedTree& t, const LinkSet& links, const std::vector<int>& twin_links,
    const std::map<int, std::pair<int, int>>& stems) {
  (void)stems;
  std::map<int, StructureReport::LockInfo> locked;
  std::vector<LockCandidate> candidates;

  for (int tw : twin_links) {
    const Link& twin = links.links[tw];
    for (auto [a, b] : {std::pair{twin.u, twin.v}, std::pair{twin.v, twin.u}}) {
      // a is the candidate locked leaf, b its twin; scan links bb'
      auto up = up_link(t, links, a);
      if (!up) continue;
      const Link& ul = links.links[*up];
      int up_node = ul.u == a ? ul.v : ul.u;
      for (int lid : links.incidence[b]) {
        const Link& l = links.links[lid];
        int b2 = l.u == b ? l.v : l.u;
        if (b2 == a || !t.is_leaf(b2)) continue;
        // candidate roots are ancestors of lca(a,b); walk up from the deepest
        int best = -1;
        for (int v = t.lca(a, b); v != t.root; v = t.parent[v]) {
          if (!t.is_ancestor(v, b2)) continue;
          auto sub = t.subtree_nodes(v);
          std::set<int> leaf_set;
          for (int w : sub)
            if (t.is_leaf(w)) leaf_set.insert(w);
          if (leaf_set.size() > 3) break;  // grows monotonically up the chain
          if (leaf_set != std::set<int>{a, b, b2}) continue;
          if (!t.is_ancestor(v, up_node)) continue;  // a-closed
          best = v;
          break;  // deepest valid root is the minimal locking tree
        }
        if (best == -1) continue;
        auto& info = locked[a];
        info.locking_links.push_back(lid);
        if (info.locking_tree_root == -1 || t.depth[best] > t.depth[info.locking_tree_root])
          info.locking_tree_root = best;
        candidates.push_back({a, lid, best});
      }
    }
  }
  for (auto& [leaf, info] : locked) {
    std::sort(info.locking_links.begin(), info.locking_links.end());
    info.locking_links.erase(std::unique(info.locking_links.begin(), info.locking_links.end()),
                             info.locking_links.end());
  }
  std::sort(candidates.begin(), candidates.end(), [](const LockCandidate& x, const LockCandidate& y) {
    if (x.leaf != y.leaf) return x.leaf < y.leaf;
    return x.link < y.link;
  });
  return {locked, candidates};
}

std::vector<int> forbidden_set(const StructureReport& report) {
  std::set<int> w(report.twin_links.begin(), report.twin_links.end());
  for (const auto& [leaf, info] : report.locked)
    w.insert(info.locking_links.begin(), info.locking_links.end());
  return {w.begin(), w.end()};
}

StructureReport analyze_structures(const RootedTree& t, const LinkSet& links) {
  StructureReport report;
  std::tie(report.twin_links, report.stems) = find_twins(t, links);
  std::tie(report.locked, report.candidates) = find_locking(t, links, report.twin_links, report.stems);
  report.forbidden = forbidden_set(report);
  return report;
}

}  // namespace tap
