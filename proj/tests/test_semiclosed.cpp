#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <utility>
#include <vector>

#include "helpers.hpp"
#include "tap/semiclosed.hpp"

using namespace tap;

namespace {

ContractionState with_matching(const Instance& inst, int root,
                               const std::vector<std::pair<int, int>>& pairs) {
  ContractionState s = ContractionState::init(inst, root);
  Matching m(inst.node_count);
  for (auto [u, v] : pairs) m.add_pair(u, v);
  s.install_matching(m);
  return s;
}

}  // namespace

TEST_CASE("view captures leaves, matching and stems of a subtree") {
  Instance inst = tap_test::load_fixture("DTREE.tap");
  ContractionState s = with_matching(inst, 0, {{3, 4}});
  SubtreeView view = make_view(s, s.matching, 2);
  CHECK(view.root == 2);
  CHECK(view.nodes == std::vector<int>{2, 3, 4, 5});
  CHECK(view.leaves == std::vector<int>{3, 4, 5});
  CHECK(view.matching_inside == std::vector<std::pair<int, int>>{{3, 4}});
  CHECK(view.unmatched_leaves == std::vector<int>{5});
  CHECK(view.compound_inside.empty());
  CHECK(view.stems_inside.empty());

  SubtreeView whole = make_view(s, s.matching, 0);
  CHECK(whole.compound_inside == std::vector<int>{0});  // the root counts as compound

  SubtreeView single = make_view(s, s.matching, 3);
  CHECK(single.nodes == std::vector<int>{3});
  CHECK(single.matching_inside.empty());
  CHECK(single.unmatched_leaves.empty());
}

TEST_CASE("semi-closedness follows matched pairs and up-nodes") {
  Instance lock = tap_test::load_fixture("LOCK.tap");
  ContractionState s = ContractionState::init(lock, 0);
  CHECK(is_semi_closed(s, s.matching, 0));   // the whole tree always qualifies
  CHECK(!is_semi_closed(s, s.matching, 3));  // up-node of leaf 4 is node 2
  CHECK(!is_semi_closed(s, s.matching, 2));  // up-node of leaf 6 is the root

  Instance dtree = tap_test::load_fixture("DTREE.tap");
  ContractionState d = with_matching(dtree, 0, {{3, 4}});
  CHECK(is_semi_closed(d, d.matching, 2));
  CHECK(!is_semi_closed(d, d.matching, 3));  // the matched pair crosses
  CHECK(!is_semi_closed(d, d.matching, 5));  // up-node of 5 is node 2
}

TEST_CASE("minimal semi-closed trees and their exact covers") {
  Instance dtree = tap_test::load_fixture("DTREE.tap");
  ContractionState d = with_matching(dtree, 0, {{3, 4}});
  std::vector<SubtreeView> mins = minimal_semi_closed(d, d.matching);
  REQUIRE(mins.size() == 1);
  CHECK(mins[0].root == 2);
  std::vector<int> cover = exact_cover(d, d.matching, mins[0]);
  CHECK(cover == tap_test::sorted({d.links.find_pair(3, 4), d.links.find_pair(2, 5)}));

  // with no matching at all, the whole tree is the only semi-closed subtree
  Instance lock = tap_test::load_fixture("LOCK.tap");
  ContractionState s = ContractionState::init(lock, 0);
  std::vector<SubtreeView> lm = minimal_semi_closed(s, s.matching);
  REQUIRE(lm.size() == 1);
  CHECK(lm[0].root == 0);
  std::vector<int> lc = exact_cover(s, s.matching, lm[0]);
  CHECK(lc == tap_test::sorted({s.links.find_pair(2, 4), s.links.find_pair(2, 5),
                                s.links.find_pair(0, 6)}));
}

TEST_CASE("three-leaf dangerous classification") {
  Instance dtree = tap_test::load_fixture("DTREE.tap");
  ContractionState d = with_matching(dtree, 0, {{3, 4}});
  SubtreeView view = make_view(d, d.matching, 2);
  DangerVerdict v = classify_dangerous(d, d.matching, view);
  CHECK(v.dangerous);
  CHECK(v.kind == DangerKind::ThreeLeaf);
  CHECK(v.ordering == std::array<int, 3>{5, 3, 4});
  CHECK(v.stem_twin == -1);
}

TEST_CASE("four-leaf dangerous classification") {
  Instance inst = tap_test::load_fixture("DTREE4.tap");
  ContractionState s = with_matching(inst, 0, {{4, 6}});
  std::vector<SubtreeView> mins = minimal_semi_closed(s, s.matching);
  REQUIRE(mins.size() == 1);
  CHECK(mins[0].root == 2);
  CHECK(mins[0].leaves == std::vector<int>{4, 5, 6, 7});
  CHECK(mins[0].stems_inside == std::vector<int>{3});
  DangerVerdict v = classify_dangerous(s, s.matching, mins[0]);
  CHECK(v.dangerous);
  CHECK(v.kind == DangerKind::FourLeaf);
  CHECK(v.stem_twin == s.links.find_pair(4, 5));
  CHECK(v.ordering == std::array<int, 3>{7, 3, 6});
}

TEST_CASE("subtrees with extra matching or compounds are not dangerous") {
  Instance star = tap_test::load_fixture("STAR4.tap");
  ContractionState s = with_matching(star, 0, {{1, 2}, {3, 4}});
  SubtreeView whole = make_view(s, s.matching, 0);
  CHECK(!classify_dangerous(s, s.matching, whole).dangerous);  // two pairs inside

  Instance lock = tap_test::load_fixture("LOCK.tap");
  ContractionState l = ContractionState::init(lock, 0);
  SubtreeView sub = make_view(l, l.matching, 2);
  CHECK(!classify_dangerous(l, l.matching, sub).dangerous);  // no matched pair
}

TEST_CASE("find_tree widens a three-leaf dangerous tree") {
  Instance inst = tap_test::load_fixture("DTREE.tap");
  ContractionState s = with_matching(inst, 0, {{3, 4}});
  std::vector<SubtreeView> mins = minimal_semi_closed(s, s.matching);
  REQUIRE(mins.size() == 1);
  DangerVerdict v = classify_dangerous(s, s.matching, mins[0]);
  REQUIRE(v.dangerous);
  std::vector<std::pair<SubtreeView, DangerVerdict>> fam;
  fam.emplace_back(mins[0], v);
  FoundTree ft = find_tree(s, s.matching, fam);
  CHECK(ft.view.root == 0);
  CHECK(ft.view.nodes.size() == 6);
  CHECK(ft.cover == std::vector<int>{0, 2});  // links (0,3) and (4,5)
  CHECK(ft.cover.size() == ft.view.matching_inside.size() + ft.view.unmatched_leaves.size());
  // the scratch work left the real state untouched
  CHECK(s.matching.has_pair(3, 4));
  CHECK(s.tree.node_count == 6);
}

TEST_CASE("find_tree reduces a four-leaf tree through its stem twin") {
  Instance inst = tap_test::load_fixture("DTREE4.tap");
  ContractionState s = with_matching(inst, 0, {{4, 6}});
  std::vector<SubtreeView> mins = minimal_semi_closed(s, s.matching);
  REQUIRE(mins.size() == 1);
  DangerVerdict v = classify_dangerous(s, s.matching, mins[0]);
  REQUIRE(v.kind == DangerKind::FourLeaf);
  std::vector<std::pair<SubtreeView, DangerVerdict>> fam;
  fam.emplace_back(mins[0], v);
  FoundTree ft = find_tree(s, s.matching, fam);
  CHECK(ft.view.root == 0);
  CHECK(ft.cover == std::vector<int>{0, 2, 3});  // twin (4,5), (6,7), (0,4)
  CHECK(ft.view.unmatched_leaves == std::vector<int>{5, 7});
  CHECK(s.matching.has_pair(4, 6));
}
