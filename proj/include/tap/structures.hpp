#pragma once

#include <map>
#include <vector>

#include "tap/links.hpp"

namespace tap {

// One (leaf, locking link, minimal enclosing subtree) triple; the raw
// material for greedy locking-tree contractions.
struct LockCandidate {
  int leaf;
  int link;
  int tree_root;
};

struct StructureReport {
  std::vector<int> twin_links;                    // link ids, ascending
  std::map<int, std::pair<int, int>> stems;       // stem node -> its leaf pair
  struct LockInfo {
    std::vector<int> locking_links;               // ascending
    int locking_tree_root = -1;                   // root of the smallest locking tree
  };
  std::map<int, LockInfo> locked;                 // leaf -> info
  std::vector<int> forbidden;                     // W = twin + locking links, ascending
  std::vector<LockCandidate> candidates;          // ordered by (leaf, link)
};

// A leaf-leaf link is a twin link when contracting it leaves a new leaf
// behind: the endpoints' lca s is not the root and subtree(s) is exactly the
// two root-to-leaf paths.
std::pair<std::vector<int>, std::map<int, std::pair<int, int>>> find_twins(
    const RootedTree& t, const LinkSet& links);

std::pair<std::map<int, StructureReport::LockInfo>, std::vector<LockCandidate>> find_locking(
    const RootedTree& t, const LinkSet& links, const std::vector<int>& twin_links,
    const std::map<int, std::pair<int, int>>& stems);

std::vector<int> forbidden_set(const StructureReport& report);

StructureReport analyze_structures(const RootedTree& t, const LinkSet& links);

}  // namespace tap
