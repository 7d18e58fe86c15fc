#pragma once

#include <array>
#include <vector>

#include "tap/contraction.hpp"

namespace tap {

// Snapshot of a rooted subtree of the current tree, relative to a matching.
struct SubtreeView {
  int root = -1;
  std::vector<int> nodes;                          // preorder
  std::vector<int> leaves;
  std::vector<std::pair<int, int>> matching_inside;  // M': pairs with both ends inside
  std::vector<int> unmatched_leaves;                 // U'
  std::vector<int> compound_inside;                  // C': non-leaf compound nodes
  std::vector<int> stems_inside;                     // S': stems of the current tree inside
};

SubtreeView make_view(const ContractionState& state, const Matching& m, int v);

// Semi-closed: no matched pair crosses the subtree boundary and every
// unmatched leaf's up-node lies inside.
bool is_semi_closed(const ContractionState& state, const Matching& m, int v);

// All semi-closed rooted subtrees none of whose proper rooted subtrees is
// semi-closed; returned in preorder of their roots, pairwise disjoint.
std::vector<SubtreeView> minimal_semi_closed(const ContractionState& state, const Matching& m);

// For a minimally semi-closed view: M' links plus one up-link per unmatched
// leaf. Asserts the result covers the subtree's edges exactly.
std::vector<int> exact_cover(const ContractionState& state, const Matching& m,
                             const SubtreeView& view);

enum class DangerKind { NotDangerous, ThreeLeaf, FourLeaf };

struct DangerVerdict {
  bool dangerous = false;
  DangerKind kind = DangerKind::NotDangerous;
  // 3-leaf case: (a, b, b') with a the unmatched leaf, ab' a current link,
  // contracting path(a,b') creates no new leaf, and the subtree is b-open
  std::array<int, 3> ordering{-1, -1, -1};
  int stem_twin = -1;  // 4-leaf case: the stem's twin link
};

DangerVerdict classify_dangerous(const ContractionState& state, const Matching& m,
                                 const SubtreeView& view);

struct FoundTree {
  SubtreeView view;
  std::vector<int> cover;
};

// When every minimally semi-closed tree is dangerous: contracts the stem twin
// links of the 4-leaf members on a scratch copy, switches the matched pair of
// every resulting 3-leaf member to its a-b' link, takes a minimally
// semi-closed tree under the switched matching, and lifts its exact cover
// (plus the contracted twin links) back to the current tree. The result is
// semi-closed, not dangerous, strictly contains a member of the input list,
// and its cover has size |M'| + |U'|.
FoundTree find_tree(const ContractionState& state, const Matching& m,
                    const std::vector<std::pair<SubtreeView, DangerVerdict>>& dangerous);

}  // namespace tap
