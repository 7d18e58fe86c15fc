#include "tap/contraction.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "tap/errors.hpp"
#include "tap/util.hpp"

namespace tap {

namespace {

// read-only find for const contexts (no path compression)
int find_ro(const UnionFind& uf, int x) {
  while (uf.parent[x] != x) x = uf.parent[x];
  return x;
}

}  // namespace

ContractionState ContractionState::init(const Instance& inst, int root) {
  require(inst.node_count >= 2, "contraction state needs at least two nodes");
  require(0 <= root && root < inst.node_count, "root out of range");

  ContractionState s;
  s.instance = inst;
  s.root_original = root;
  s.original_tree = build_tree(inst, root);
  s.partition = UnionFind(inst.node_count);
  s.tree = s.original_tree;
  s.links = shadow_complete(s.tree, make_link_set(inst.node_count, inst.links));

  std::vector<char> covered(inst.node_count, 0);
  for (const Link& l : s.links.links)
    for (int child : s.tree.covered_edges(l.u, l.v)) covered[child] = 1;
  for (int v : s.tree.preorder)
    if (v != root && !covered[v])
      throw InfeasibleError("no link covers tree edge " + std::to_string(s.tree.parent[v] + 1) +
                            "-" + std::to_string(v + 1));

  s.compound.assign(inst.node_count, 0);
  s.compound[root] = 1;  // the root counts as a compound node
  s.coupons_x2.assign(inst.node_count, 0);
  s.coupons_x2[root] = 2;
  for (int leaf : s.tree.leaves()) s.coupons_x2[leaf] = 2;
  s.matching = Matching(inst.node_count);
  s.check_credit_invariant();
  return s;
}

void ContractionState::install_matching(const Matching& m) {
  require(static_cast<int>(m.mate.size()) == instance.node_count, "matching size mismatch");
  require(accepted.empty() && trace.empty(), "matching installed after contractions");
  for (auto [u, v] : m.pairs) {
    require(tree.present[u] && tree.present[v], "matched node not present");
    require(tree.is_leaf(u) && tree.is_leaf(v), "matched node is not a leaf");
    coupons_x2[u] = 0;  // the pair's credit moves onto the matching link
    coupons_x2[v] = 0;
  }
  matching = m;
  check_credit_invariant();
}

bool ContractionState::is_original_node(int v) const {
  return find_ro(partition, v) == v && partition.count[v] == 1 && !compound[v];
}

int ContractionState::coupons_in_x2(const std::vector<int>& nodes) const {
  std::vector<char> in(instance.node_count, 0);
  for (int v : nodes) in[v] = 1;
  int total = 0;
  for (int v : nodes) total += coupons_x2[v];
  for (auto [u, v] : matching.pairs)
    if (in[u] && in[v]) total += 3;  // a matching link owns 3/2 coupons
  return total;
}

void ContractionState::check_credit_invariant() const {
  for (int v : tree.preorder) {
    bool leaf = tree.is_leaf(v);
    bool matched = matching.matched(v);
    require(!matched || leaf, "matched node is not a leaf");
    int expected;
    if (leaf && matched) {
      require(allow_matched_compound || !compound[v], "matched compound outside scratch mode");
      expected = 0;
    } else if (v == tree.root || compound[v] || leaf) {
      expected = 2;  // one coupon: unmatched leaf or compound node
    } else {
      expected = 0;
    }
    require(coupons_x2[v] == expected, "coupon ledger out of sync");
  }
  for (auto [u, v] : matching.pairs)
    require(tree.present[u] && tree.present[v], "matched pair endpoint not present");
}

ContractionState ContractionState::clone_scratch() const {
  ContractionState s = *this;
  s.allow_matched_compound = true;
  s.audit_hook = nullptr;
  return s;
}

int ContractionState::contract(const std::vector<int>& nodes, const std::vector<int>& cover,
                               ContractionKind kind) {
  require(nodes.size() >= 2, "contraction needs at least two nodes");
  std::vector<char> in(instance.node_count, 0);
  for (int v : nodes) {
    require(0 <= v && v < instance.node_count && tree.present[v], "contracted node not present");
    require(!in[v], "duplicate node in contraction set");
    in[v] = 1;
  }

  int top = nodes[0];
  for (int v : nodes)
    if (tree.depth[v] < tree.depth[top]) top = v;
  for (int v : nodes)
    require(v == top || in[tree.parent[v]], "contraction set is not connected");

  // the cover must hit exactly the tree edges induced by the set
  std::set<int> covered;
  std::set<int> cover_ids;
  for (int id : cover) {
    require(0 <= id && id < static_cast<int>(links.links.size()), "cover link out of range");
    require(cover_ids.insert(id).second, "duplicate link in cover");
    const Link& l = links.links[id];
    for (int child : tree.covered_edges(l.u, l.v)) covered.insert(child);
  }
  std::set<int> induced;
  for (int v : nodes)
    if (v != top) induced.insert(v);
  require(covered == induced, "cover does not match the contracted subtree exactly");

  std::vector<std::pair<int, int>> inside_pairs;
  std::pair<int, int> crossing{-1, -1};  // (inside end, outside end)
  for (auto [u, v] : matching.pairs) {
    if (in[u] && in[v]) {
      inside_pairs.emplace_back(u, v);
    } else if (in[u] || in[v]) {
      require(allow_matched_compound, "matched pair crosses the contraction boundary");
      require(crossing.first == -1, "two matched pairs cross the contraction boundary");
      crossing = in[u] ? std::make_pair(u, v) : std::make_pair(v, u);
    }
  }

  if (audit_hook) audit_hook(nodes, cover, kind);

  int leaf_count = 0;
  for (int v : nodes)
    if (tree.is_leaf(v)) ++leaf_count;
  trace.push_back({kind, leaf_count, static_cast<int>(cover.size()), coupons_in_x2(nodes)});
  for (int id : cover) accepted.push_back(deshadow(id));

  for (auto [u, v] : inside_pairs) matching.remove_pair(u, v);
  if (crossing.first != -1) matching.remove_pair(crossing.first, crossing.second);
  for (int v : nodes) coupons_x2[v] = 0;
  for (int v : nodes) {
    if (v == top) continue;
    partition.absorb(top, v);
    compound[v] = 0;
  }
  compound[top] = 1;
  if (crossing.first != -1) matching.add_pair(top, crossing.second);
  coupons_x2[top] = matching.matched(top) ? 0 : 2;

  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : instance.tree_edges) {
    int ra = partition.find(a), rb = partition.find(b);
    if (ra != rb) edges.emplace_back(ra, rb);
  }
  tree = build_tree(instance.node_count, edges, root_original);
  require(tree.root == root_original, "root representative changed");

  LinkSet raw;
  raw.id_limit = instance.node_count;
  raw.incidence.assign(instance.node_count, {});
  for (int i = 0; i < static_cast<int>(instance.links.size()); ++i) {
    int ru = partition.find(instance.links[i].first);
    int rv = partition.find(instance.links[i].second);
    if (ru != rv) raw.add(ru, rv, i, 0);
  }
  links = shadow_complete(tree, raw);

  check_credit_invariant();
  return top;
}

}  // namespace tap
