#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "tap/links.hpp"
#include "tap/structures.hpp"

using namespace tap;
using tap_test::load_fixture;
using tap_test::make_instance;

namespace {

struct Analyzed {
  RootedTree tree;
  LinkSet closed;
  StructureReport report;
};

Analyzed analyze(const Instance& inst, int root) {
  Analyzed a;
  a.tree = build_tree(inst, root);
  a.closed = shadow_complete(a.tree, make_link_set(inst.node_count, inst.links));
  a.report = analyze_structures(a.tree, a.closed);
  return a;
}

}  // namespace

TEST_CASE("shadow completion closes under sub-paths and is idempotent") {
  Instance inst = load_fixture("LOCK.tap");
  Analyzed a = analyze(inst, 0);
  CHECK(a.closed.links.size() == 14);
  LinkSet again = shadow_complete(a.tree, a.closed);
  CHECK(again.links.size() == 14);
  // every stored pair names an origin whose path contains its own
  for (const Link& l : a.closed.links) {
    REQUIRE(l.origin >= 0);
    REQUIRE(l.origin < 4);
    auto [ou, ov] = inst.links[l.origin];
    auto covered = tap_test::sorted(a.tree.covered_edges(ou, ov));
    for (int child : a.tree.covered_edges(l.u, l.v))
      CHECK(std::binary_search(covered.begin(), covered.end(), child));
  }
  // originals sit at chain length zero, shadows deeper
  CHECK(a.closed.links[a.closed.find_pair(4, 5)].chain_len == 0);
  CHECK(a.closed.links[a.closed.find_pair(3, 4)].chain_len > 0);
}

TEST_CASE("up-links point at the shallowest reachable ancestor") {
  Analyzed a = analyze(load_fixture("LOCK.tap"), 0);
  // locked leaf 4 reaches node 2 through its direct link
  auto up_a = up_link(a.tree, a.closed, 4);
  REQUIRE(up_a.has_value());
  CHECK(a.closed.links[*up_a].u + a.closed.links[*up_a].v == 2 + 4);
  // leaf 6 holds a link to the root
  auto up_bp = up_link(a.tree, a.closed, 6);
  REQUIRE(up_bp.has_value());
  CHECK(norm_pair(a.closed.links[*up_bp].u, a.closed.links[*up_bp].v) == std::make_pair(0, 6));
}

TEST_CASE("twin detection needs a two-path subtree below a non-root lca") {
  Analyzed lock = analyze(load_fixture("LOCK.tap"), 0);
  REQUIRE(lock.report.twin_links.size() == 1);
  const Link& tw = lock.closed.links[lock.report.twin_links[0]];
  CHECK(norm_pair(tw.u, tw.v) == std::make_pair(4, 5));
  CHECK(lock.report.stems == std::map<int, std::pair<int, int>>{{3, {4, 5}}});

  // leaf-leaf links through the root are not twins
  Analyzed star = analyze(load_fixture("STAR4.tap"), 0);
  CHECK(star.report.twin_links.empty());
  CHECK(star.report.stems.empty());

  // three branches below the lca block the two-path shape
  Analyzed dt = analyze(load_fixture("DTREE.tap"), 0);
  CHECK(dt.report.twin_links.empty());
  CHECK(dt.report.locked.empty());
  CHECK(dt.report.candidates.empty());

  Analyzed dt4 = analyze(load_fixture("DTREE4.tap"), 0);
  REQUIRE(dt4.report.twin_links.size() == 1);
  CHECK(norm_pair(dt4.closed.links[dt4.report.twin_links[0]].u,
                  dt4.closed.links[dt4.report.twin_links[0]].v) == std::make_pair(4, 5));
  CHECK(dt4.report.stems.count(3) == 1);
  CHECK(dt4.report.locked.empty());  // subtree of node 2 has a fourth leaf
}

TEST_CASE("locking on the lock fixture") {
  Analyzed a = analyze(load_fixture("LOCK.tap"), 0);
  REQUIRE(a.report.locked.count(4) == 1);
  CHECK(a.report.locked.size() == 1);
  CHECK(a.report.locked.at(4).locking_tree_root == 2);
  REQUIRE(a.report.locked.at(4).locking_links.size() == 1);
  CHECK(norm_pair(a.closed.links[a.report.locked.at(4).locking_links[0]].u,
                  a.closed.links[a.report.locked.at(4).locking_links[0]].v) ==
        std::make_pair(5, 6));
  REQUIRE(a.report.candidates.size() == 1);
  CHECK(a.report.candidates[0].leaf == 4);
  CHECK(a.report.candidates[0].tree_root == 2);
  // forbidden = the twin link plus the locking link
  std::vector<std::pair<int, int>> w;
  for (int id : a.report.forbidden) w.push_back(norm_pair(a.closed.links[id].u, a.closed.links[id].v));
  std::sort(w.begin(), w.end());
  CHECK(w == std::vector<std::pair<int, int>>{{4, 5}, {5, 6}});
}

TEST_CASE("locking survives without the direct ancestor link") {
  // drop link 3-5 (up of leaf 4 falls back to the stem); leaf 4 stays locked
  Instance inst = make_instance(
      7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {2, 6}}, {{4, 5}, {5, 6}, {0, 6}});
  Analyzed a = analyze(inst, 0);
  auto up_a = up_link(a.tree, a.closed, 4);
  REQUIRE(up_a.has_value());
  CHECK(norm_pair(a.closed.links[*up_a].u, a.closed.links[*up_a].v) == std::make_pair(3, 4));
  REQUIRE(a.report.locked.count(4) == 1);
  CHECK(a.report.locked.at(4).locking_tree_root == 2);
}

TEST_CASE("mutual locking reports both directions") {
  // stem 3 under node 2 carries twins 5 and 6; leaf 4 is the third leaf
  Instance inst = make_instance(7, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 5}, {3, 6}},
                                {{5, 6}, {4, 6}, {4, 5}, {0, 4}});
  Analyzed a = analyze(inst, 0);
  REQUIRE(a.report.locked.count(5) == 1);
  REQUIRE(a.report.locked.count(6) == 1);
  CHECK(a.report.locked.at(5).locking_tree_root == 2);
  CHECK(a.report.locked.at(6).locking_tree_root == 2);
  CHECK(a.report.candidates.size() == 2);
  // twin and both locking links are forbidden
  CHECK(a.report.forbidden.size() == 3);
}
