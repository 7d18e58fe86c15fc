#pragma once

#include <functional>
#include <vector>

#include "tap/links.hpp"
#include "tap/matching.hpp"

namespace tap {

struct UnionFind {
  std::vector<int> parent;
  std::vector<int> count;  // class sizes, valid at representatives

  explicit UnionFind(int n = 0) : parent(n), count(n, 1) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // merges other's class into target's class, keeping target's representative
  void absorb(int target, int other) {
    int a = find(target), b = find(other);
    if (a == b) return;
    parent[b] = a;
    count[a] += count[b];
  }
  int class_size(int x) { return count[find(x)]; }
};

// Working state of the solver: a partition of the original nodes, the current
// tree over class representatives, the image links with provenance, and the
// coupon ledger. The whole link closure is rebuilt after every contraction.
struct ContractionState {
  Instance instance;
  int root_original = -1;
  RootedTree original_tree;
  UnionFind partition;
  RootedTree tree;    // node ids are partition representatives
  LinkSet links;
  std::vector<char> compound;
  std::vector<int> coupons_x2;  // doubled coupons, valid at present nodes
  Matching matching;
  std::vector<int> accepted;    // original link indices, in acceptance order
  std::vector<TraceRecord> trace;
  // Lifted only while Find-Tree contracts stem twin links on a scratch copy:
  // there a compound leaf may be matched (and then owns no coupon).
  bool allow_matched_compound = false;
  // invoked with (nodes, cover, kind) before each contraction is applied
  std::function<void(const std::vector<int>&, const std::vector<int>&, ContractionKind)> audit_hook;

  static ContractionState init(const Instance& inst, int root);
  void install_matching(const Matching& m);
  // Contracts the connected node set into one compound super-node. cover must
  // be image link ids lying inside the set whose paths cover exactly the
  // set's induced tree edges; its de-shadowed originals join accepted.
  // Returns the new super-node id.
  int contract(const std::vector<int>& nodes, const std::vector<int>& cover, ContractionKind kind);
  int deshadow(int link_id) const { return links.links[link_id].origin; }
  bool is_original_node(int v) const;
  // node coupons plus matching-link coupons fully inside the set, doubled
  int coupons_in_x2(const std::vector<int>& nodes) const;
  void check_credit_invariant() const;
  ContractionState clone_scratch() const;
};

}  // namespace tap
