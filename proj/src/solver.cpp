#include "tap/solver.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "tap/errors.hpp"
#include "tap/matching.hpp"
#include "tap/oracle.hpp"
#include "tap/util.hpp"

namespace tap {

int pick_root(const Instance& inst) {
  std::vector<int> degree(inst.node_count, 0);
  for (auto [a, b] : inst.tree_edges) {
    ++degree[a];
    ++degree[b];
  }
  for (int v = 0; v < inst.node_count; ++v)
    if (degree[v] >= 2) return v;
  require(false, "tree has no internal node");
  return -1;
}

namespace {

// twin partner of leaf a, resolved against the closure the report was built on
int twin_of(const StructureReport& report, const LinkSet& closed, int a) {
  for (int id : report.twin_links) {
    const Link& l = closed.links[id];
    if (l.u == a) return l.v;
    if (l.v == a) return l.u;
  }
  return -1;
}

}  // namespace

int exhaust_greedy_locking(ContractionState& state, const StructureReport& report) {
  // candidate and twin link ids index the closure of the original tree; the
  // state's link set is rebuilt after every contraction, so reconstruct that
  // closure once (the construction is deterministic, matching init) and carry
  // lookups into the current set by endpoint pair
  LinkSet original_closed = shadow_complete(
      state.original_tree, make_link_set(state.instance.node_count, state.instance.links));
  const RootedTree& orig = state.original_tree;

  int count = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const LockCandidate& cand : report.candidates) {
      std::vector<int> nodes = orig.subtree_nodes(cand.tree_root);
      bool intact = true;
      for (int x : nodes)
        if (!state.is_original_node(x)) {
          intact = false;
          break;
        }
      if (!intact) continue;

      int a = cand.leaf;
      const Link& lock = original_closed.links[cand.link];
      int b = twin_of(report, original_closed, a);
      require(b >= 0, "locked leaf has no twin");
      int bp = lock.u == b ? lock.v : lock.u;
      require(lock.u == b || lock.v == b, "locking link does not touch the twin");
      if (state.matching.matched(a) || state.matching.matched(b) || state.matching.matched(bp))
        continue;
      // when the twin is itself locked, only contract a tree that swallows
      // the twin's own minimal locking tree
      auto it = report.locked.find(b);
      if (it != report.locked.end() &&
          !orig.is_ancestor(cand.tree_root, it->second.locking_tree_root))
        continue;

      int lock_cur = state.links.find_pair(lock.u, lock.v);
      require(lock_cur >= 0, "locking link pair missing from current closure");
      std::optional<int> up = up_link(state.tree, state.links, a);
      require(up.has_value(), "locked leaf has no up-link");
      state.contract(nodes, {lock_cur, *up}, ContractionKind::LockingTree);
      ++count;
      progress = true;
      break;
    }
  }
  return count;
}

int exhaust_greedy_links(ContractionState& state) {
  int count = 0;
  for (;;) {
    int best = -1;
    std::pair<int, int> best_pair{0, 0};
    for (size_t id = 0; id < state.links.links.size(); ++id) {
      const Link& l = state.links.links[id];
      if (!state.tree.is_leaf(l.u) || !state.tree.is_leaf(l.v)) continue;
      if (state.matching.matched(l.u) || state.matching.matched(l.v)) continue;
      std::pair<int, int> p = norm_pair(l.u, l.v);
      if (best < 0 || p < best_pair) {
        best = static_cast<int>(id);
        best_pair = p;
      }
    }
    if (best < 0) break;
    const Link& l = state.links.links[best];
    state.contract(state.tree.path_nodes(l.u, l.v), {best}, ContractionKind::GreedyLink);
    ++count;
  }
  return count;
}

Solution tree_cover(const Instance& inst, const SolveOptions& opts) {
  Solution sol;
  if (inst.node_count <= 1) return sol;

  if (opts.root_override && (*opts.root_override < 0 || *opts.root_override >= inst.node_count))
    throw ParseError(0, "root node out of range");

  if (inst.node_count == 2) {
    for (size_t i = 0; i < inst.links.size(); ++i)
      if (inst.links[i] == std::make_pair(0, 1)) {
        sol.links.push_back(static_cast<int>(i));
        sol.stats.size = 1;
        return sol;
      }
    throw InfeasibleError("no link covers tree edge 1-2");
  }

  int root = opts.root_override ? *opts.root_override : pick_root(inst);
  ContractionState state = ContractionState::init(inst, root);
  StructureReport report = analyze_structures(state.tree, state.links);

  std::set<int> forbidden(report.forbidden.begin(), report.forbidden.end());
  std::vector<std::pair<int, int>> leaf_edges;
  for (size_t id = 0; id < state.links.links.size(); ++id) {
    const Link& l = state.links.links[id];
    if (forbidden.count(static_cast<int>(id))) continue;
    if (state.tree.is_leaf(l.u) && state.tree.is_leaf(l.v)) leaf_edges.emplace_back(l.u, l.v);
  }
  Matching m = max_matching(inst.node_count, leaf_edges);
  state.install_matching(m);

  std::vector<AuditRecord> audit_records;
  CanonicalF f;
  int rhs2 = 0;
  int credit0_x2 = 0;
  if (opts.audit) {
    f = canonical_F(state.tree, state.links, report, state.matching);
    rhs2 = lower_bound_rhs_x2(state.tree, report, state.matching, f);
    credit0_x2 = audit_contraction(state, f, report, state.tree.preorder, -1).credit_x2;
    state.audit_hook = [&state, &f, &report, &audit_records, credit0_x2](
                           const std::vector<int>& nodes, const std::vector<int>& cover,
                           ContractionKind) {
      AuditOutcome out = audit_contraction(state, f, report, nodes,
                                           static_cast<int>(cover.size()));
      audit_records.push_back({out.ok, out.credit_x2, out.cost_x2});
      require(out.ok, "contraction violates the credit bound");
      // running bound: every contraction spends the contracted region's
      // credit and releases one coupon on the new super-node, so the links
      // accepted so far plus the credit still on the tree never exceed the
      // starting credit
      AuditOutcome whole = audit_contraction(state, f, report, state.tree.preorder, -1);
      std::vector<int> after = state.accepted;
      for (int id : cover) after.push_back(state.deshadow(id));
      std::sort(after.begin(), after.end());
      after.erase(std::unique(after.begin(), after.end()), after.end());
      int post_credit = whole.credit_x2 - out.credit_x2 + 2;
      require(2 * static_cast<int>(after.size()) + post_credit <= credit0_x2,
              "accumulated solution exceeds the credit bound");
    };
  }

  exhaust_greedy_locking(state, report);

  while (static_cast<int>(state.tree.preorder.size()) > 1) {
    exhaust_greedy_links(state);
    if (state.tree.preorder.size() <= 1) break;

    std::vector<SubtreeView> mins = minimal_semi_closed(state, state.matching);
    require(!mins.empty(), "no minimally semi-closed tree found");

    std::vector<std::pair<SubtreeView, DangerVerdict>> dangerous;
    bool contracted = false;
    for (SubtreeView& view : mins) {
      DangerVerdict verdict = classify_dangerous(state, state.matching, view);
      if (!verdict.dangerous) {
        std::vector<int> cover = exact_cover(state, state.matching, view);
        state.contract(view.nodes, cover, ContractionKind::SemiClosed);
        contracted = true;
        break;
      }
      dangerous.emplace_back(std::move(view), verdict);
    }
    if (!contracted) {
      FoundTree ft = find_tree(state, state.matching, dangerous);
      state.contract(ft.view.nodes, ft.cover, ContractionKind::FindTree);
    }
    ++sol.stats.iterations;
  }

  sol.links = state.accepted;
  std::sort(sol.links.begin(), sol.links.end());
  sol.links.erase(std::unique(sol.links.begin(), sol.links.end()), sol.links.end());
  require(verify_cover(inst, sol.links), "solver output does not cover the tree");
  sol.stats.size = static_cast<int>(sol.links.size());
  sol.stats.trace = state.trace;
  sol.stats.audit = std::move(audit_records);

  if (opts.audit)
    require(2 * sol.stats.size <= rhs2, "solution exceeds the lower-bound guarantee");
  return sol;
}

}  // namespace tap
