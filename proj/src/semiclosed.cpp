#include "tap/semiclosed.hpp"

#include <algorithm>
#include <set>

#include "tap/errors.hpp"
#include "tap/structures.hpp"
#include "tap/util.hpp"

namespace tap {

namespace {

bool inside(const RootedTree& t, int root, int v) { return t.is_ancestor(root, v); }

// scratch partition find without mutation
int find_ro(const UnionFind& uf, int x) {
  while (uf.parent[x] != x) x = uf.parent[x];
  return x;
}

// covered-edge set of a link id list, as child node ids
std::set<int> covered_set(const ContractionState& state, const std::vector<int>& cover) {
  std::set<int> covered;
  for (int id : cover) {
    const Link& l = state.links.links[id];
    for (int child : state.tree.covered_edges(l.u, l.v)) covered.insert(child);
  }
  return covered;
}

}  // namespace

SubtreeView make_view(const ContractionState& state, const Matching& m, int v) {
  const RootedTree& t = state.tree;
  require(t.present[v], "view root not present");
  SubtreeView view;
  view.root = v;
  view.nodes = t.subtree_nodes(v);
  std::set<int> node_set(view.nodes.begin(), view.nodes.end());
  for (int u : view.nodes)
    if (t.is_leaf(u)) view.leaves.push_back(u);
  for (auto [x, y] : m.pairs)
    if (node_set.count(x) && node_set.count(y)) view.matching_inside.emplace_back(x, y);
  for (int u : view.leaves)
    if (!m.matched(u)) view.unmatched_leaves.push_back(u);
  for (int u : view.nodes)
    if (state.compound[u] && !t.is_leaf(u)) view.compound_inside.push_back(u);
  auto [twin_ids, stems] = find_twins(t, state.links);
  (void)twin_ids;
  for (const auto& [s, pair] : stems)
    if (node_set.count(s)) view.stems_inside.push_back(s);
  return view;
}

bool is_semi_closed(const ContractionState& state, const Matching& m, int v) {
  const RootedTree& t = state.tree;
  for (auto [x, y] : m.pairs)
    if (inside(t, v, x) != inside(t, v, y)) return false;
  for (int leaf : t.leaves()) {
    if (!inside(t, v, leaf) || m.matched(leaf)) continue;
    auto up = up_link(t, state.links, leaf);
    if (!up) continue;  // no incident link: vacuously closed
    const Link& l = state.links.links[*up];
    int up_node = l.u == leaf ? l.v : l.u;
    if (!inside(t, v, up_node)) return false;
  }
  return true;
}

std::vector<SubtreeView> minimal_semi_closed(const ContractionState& state, const Matching& m) {
  const RootedTree& t = state.tree;
  std::vector<char> sc(state.instance.node_count, 0);
  for (int v : t.preorder) sc[v] = is_semi_closed(state, m, v);
  // a node fails minimality when any strict descendant is semi-closed
  std::vector<char> desc_sc(state.instance.node_count, 0);
  for (auto it = t.preorder.rbegin(); it != t.preorder.rend(); ++it)
    for (int c : t.children[*it]) desc_sc[*it] |= sc[c] | desc_sc[c];
  std::vector<SubtreeView> out;
  for (int v : t.preorder)
    if (sc[v] && !desc_sc[v]) out.push_back(make_view(state, m, v));
  return out;
}

std::vector<int> exact_cover(const ContractionState& state, const Matching& m,
                             const SubtreeView& view) {
  std::vector<int> cover;
  for (auto [x, y] : view.matching_inside) {
    int id = state.links.find_pair(x, y);
    require(id >= 0, "matched pair is not a current link");
    cover.push_back(id);
  }
  for (int leaf : view.unmatched_leaves) {
    auto up = up_link(state.tree, state.links, leaf);
    require(up.has_value(), "unmatched leaf has no incident link");
    cover.push_back(*up);
  }
  std::sort(cover.begin(), cover.end());
  cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
  require(cover.size() == view.matching_inside.size() + view.unmatched_leaves.size(),
          "exact cover links collide");
  std::set<int> induced;
  for (int v : view.nodes)
    if (v != view.root) induced.insert(v);
  require(covered_set(state, cover) == induced, "cover does not cover the subtree exactly");
  (void)m;
  return cover;
}

namespace {

DangerVerdict classify_three_leaf(const ContractionState& state, const Matching& m,
                                  const SubtreeView& view,
                                  const std::set<std::pair<int, int>>& twin_pairs) {
  DangerVerdict verdict;
  if (view.unmatched_leaves.size() != 1) return verdict;
  int a = view.unmatched_leaves[0];
  auto [p, q] = view.matching_inside[0];

  struct Option {
    int b, bp, up_b;
  };
  std::vector<Option> options;
  const RootedTree& t = state.tree;
  for (auto [b, bp] : {std::make_pair(p, q), std::make_pair(q, p)}) {
    if (state.links.find_pair(a, bp) < 0) continue;
    // contracting a-b' must not create a new leaf, i.e. a,b' are not twins
    if (twin_pairs.count(norm_pair(a, bp))) continue;
    auto up = up_link(t, state.links, b);
    if (!up) continue;  // closed w.r.t. b, so not b-open
    const Link& l = state.links.links[*up];
    int up_b = l.u == b ? l.v : l.u;
    if (inside(t, view.root, up_b)) continue;  // b-closed
    options.push_back({b, bp, up_b});
  }
  if (options.empty()) return verdict;

  int pick = 0;
  if (options.size() == 2) {
    bool first = t.is_ancestor(options[0].up_b, options[1].up_b);
    bool second = t.is_ancestor(options[1].up_b, options[0].up_b);
    require(first || second, "up-nodes of a doubly qualifying pair are incomparable");
    pick = first ? 0 : 1;
  }
  verdict.dangerous = true;
  verdict.kind = DangerKind::ThreeLeaf;
  verdict.ordering = {a, options[pick].b, options[pick].bp};
  (void)m;
  return verdict;
}

}  // namespace

DangerVerdict classify_dangerous(const ContractionState& state, const Matching& m,
                                 const SubtreeView& view) {
  DangerVerdict verdict;
  if (!view.compound_inside.empty() || view.matching_inside.size() != 1) return verdict;

  auto [twin_ids, stems] = find_twins(state.tree, state.links);
  std::set<std::pair<int, int>> twin_pairs;
  for (int id : twin_ids) {
    const Link& l = state.links.links[id];
    twin_pairs.insert(norm_pair(l.u, l.v));
  }

  if (view.leaves.size() == 3 && view.stems_inside.empty())
    return classify_three_leaf(state, m, view, twin_pairs);

  if (view.leaves.size() == 4 && view.stems_inside.size() == 1) {
    int s = view.stems_inside[0];
    auto [x, y] = stems.at(s);
    int matched = (m.matched(x) ? 1 : 0) + (m.matched(y) ? 1 : 0);
    if (matched != 1) return verdict;
    int twin_id = state.links.find_pair(x, y);
    require(twin_id >= 0, "stem without its twin link");
    require(view.root != s, "four-leaf tree rooted at its stem");

    ContractionState scratch = state.clone_scratch();
    scratch.contract(scratch.tree.path_nodes(x, y), {twin_id}, ContractionKind::FindTree);
    require(is_semi_closed(scratch, scratch.matching, view.root),
            "reduced tree lost semi-closedness");
    SubtreeView reduced = make_view(scratch, scratch.matching, view.root);
    DangerVerdict sub = classify_dangerous(scratch, scratch.matching, reduced);
    if (sub.dangerous && sub.kind == DangerKind::ThreeLeaf) {
      verdict.dangerous = true;
      verdict.kind = DangerKind::FourLeaf;
      verdict.ordering = sub.ordering;
      verdict.stem_twin = twin_id;
    }
  }
  return verdict;
}

FoundTree find_tree(const ContractionState& state, const Matching& m,
                    const std::vector<std::pair<SubtreeView, DangerVerdict>>& dangerous) {
  require(!dangerous.empty(), "find_tree needs a non-empty dangerous family");

  ContractionState scratch = state.clone_scratch();
  struct Entry {
    int root;
    int twin_link = -1;  // real link id of the contracted stem twin, 4-leaf case
    int cnode = -1;      // scratch id of the merged twin super-node
  };
  std::vector<Entry> entries;
  for (const auto& [view, verdict] : dangerous) {
    require(verdict.dangerous, "find_tree member is not dangerous");
    Entry e{view.root};
    if (verdict.kind == DangerKind::FourLeaf) {
      const Link& tw = state.links.links[verdict.stem_twin];
      int sid = scratch.links.find_pair(tw.u, tw.v);
      require(sid >= 0, "stem twin link missing on scratch state");
      e.twin_link = verdict.stem_twin;
      e.cnode = scratch.contract(scratch.tree.path_nodes(tw.u, tw.v), {sid},
                                 ContractionKind::FindTree);
    }
    entries.push_back(e);
  }

  // switch bb' -> ab' in every reduced three-leaf dangerous tree
  for (const Entry& e : entries) {
    SubtreeView sview = make_view(scratch, scratch.matching, e.root);
    DangerVerdict sv = classify_dangerous(scratch, scratch.matching, sview);
    require(sv.dangerous && sv.kind == DangerKind::ThreeLeaf,
            "reduced member is not a three-leaf dangerous tree");
    auto [a, b, bp] = sv.ordering;
    require(scratch.matching.has_pair(b, bp), "switch pair is not matched");
    scratch.matching.remove_pair(b, bp);
    scratch.matching.add_pair(a, bp);
    scratch.coupons_x2[b] = 2;
    scratch.coupons_x2[a] = 0;
  }
  scratch.check_credit_invariant();

  std::vector<SubtreeView> mins = minimal_semi_closed(scratch, scratch.matching);
  require(!mins.empty(), "no semi-closed tree under the switched matching");
  const SubtreeView& sel = mins[0];
  for (const Entry& e : entries)
    require(sel.root != e.cnode, "selected tree rooted at a merged twin");
  std::vector<int> scover = exact_cover(scratch, scratch.matching, sel);

  // lift: pick for every scratch cover link the least real link joining the
  // same pair of scratch classes (origins may be wider shadows, so matching by
  // endpoint class keeps the lifted cover exact)
  std::set<int> sel_nodes(sel.nodes.begin(), sel.nodes.end());
  std::vector<int> lifted;
  for (int sid : scover) {
    const Link& sl = scratch.links.links[sid];
    int found = -1;
    for (int r = 0; r < static_cast<int>(state.links.links.size()) && found < 0; ++r) {
      const Link& rl = state.links.links[r];
      int fu = find_ro(scratch.partition, rl.u), fv = find_ro(scratch.partition, rl.v);
      if ((fu == sl.u && fv == sl.v) || (fu == sl.v && fv == sl.u)) found = r;
    }
    require(found >= 0, "scratch cover link has no real counterpart");
    lifted.push_back(found);
  }
  for (const Entry& e : entries)
    if (e.cnode != -1 && sel_nodes.count(e.cnode)) lifted.push_back(e.twin_link);
  std::sort(lifted.begin(), lifted.end());
  require(std::unique(lifted.begin(), lifted.end()) == lifted.end(),
          "lifted cover links collide");

  FoundTree out;
  out.view = make_view(state, m, sel.root);
  out.cover = lifted;
  require(is_semi_closed(state, m, out.view.root), "found tree is not semi-closed");
  require(!classify_dangerous(state, m, out.view).dangerous, "found tree is dangerous");
  require(out.cover.size() ==
              out.view.matching_inside.size() + out.view.unmatched_leaves.size(),
          "found cover has the wrong size");
  std::set<int> out_nodes(out.view.nodes.begin(), out.view.nodes.end());
  bool contains = false;
  for (const auto& [view, verdict] : dangerous)
    if (out_nodes.count(view.root) && out.view.nodes.size() > view.nodes.size()) contains = true;
  require(contains, "found tree does not strictly contain a dangerous member");
  return out;
}

}  // namespace tap
