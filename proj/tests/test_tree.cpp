#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "tap/tree.hpp"

using namespace tap;
using tap_test::sorted;

namespace {

// r(0) - v(1) - u(2) with leaves 3, 4, 5 under u
RootedTree broom() {
  return build_tree(6, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {2, 5}}, 0);
}

}  // namespace

TEST_CASE("parents, depth and preorder") {
  RootedTree t = broom();
  CHECK(t.root == 0);
  CHECK(t.node_count == 6);
  CHECK(t.parent[0] == 0);
  CHECK(t.parent[2] == 1);
  CHECK(t.parent[5] == 2);
  CHECK(t.depth[0] == 0);
  CHECK(t.depth[5] == 3);
  CHECK(t.preorder == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(t.children[2] == std::vector<int>{3, 4, 5});
}

TEST_CASE("ancestor intervals and lca") {
  RootedTree t = broom();
  CHECK(t.is_ancestor(0, 5));
  CHECK(t.is_ancestor(2, 2));
  CHECK(!t.is_ancestor(5, 0));
  CHECK(!t.is_ancestor(3, 4));
  CHECK(t.lca(3, 4) == 2);
  CHECK(t.lca(3, 0) == 0);
  CHECK(t.lca(5, 5) == 5);
  CHECK(t.lca(1, 4) == 1);
}

TEST_CASE("leaves exclude the root") {
  RootedTree t = broom();
  CHECK(sorted(t.leaves()) == std::vector<int>{3, 4, 5});
  CHECK(!t.is_leaf(0));  // degree-1 root is not a leaf
  CHECK(t.is_leaf(3));
  RootedTree mid = build_tree(6, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {2, 5}}, 1);
  CHECK(sorted(mid.leaves()) == std::vector<int>{0, 3, 4, 5});
}

TEST_CASE("subtree is a preorder slice") {
  RootedTree t = broom();
  CHECK(t.subtree_nodes(2) == std::vector<int>{2, 3, 4, 5});
  CHECK(t.subtree_nodes(0) == t.preorder);
  CHECK(t.subtree_nodes(4) == std::vector<int>{4});
}

TEST_CASE("paths and covered edges") {
  RootedTree t = broom();
  CHECK(sorted(t.path_nodes(3, 4)) == std::vector<int>{2, 3, 4});
  CHECK(sorted(t.path_nodes(0, 5)) == std::vector<int>{0, 1, 2, 5});
  CHECK(sorted(t.path_nodes(3, 3)) == std::vector<int>{3});
  CHECK(sorted(t.covered_edges(3, 4)) == std::vector<int>{3, 4});
  CHECK(sorted(t.covered_edges(0, 3)) == std::vector<int>{1, 2, 3});
  CHECK(sorted(t.covered_edges(1, 5)) == std::vector<int>{2, 5});
  CHECK(t.covered_edges(4, 4).empty());
}

TEST_CASE("sparse ids and instance overload agree") {
  // same shape built over ids {1,3,5} inside a larger id space
  RootedTree t = build_tree(8, {{3, 1}, {3, 5}}, 3);
  CHECK(t.node_count == 3);
  CHECK(!t.present[0]);
  CHECK(t.present[5]);
  CHECK(sorted(t.leaves()) == std::vector<int>{1, 5});
  CHECK(t.lca(1, 5) == 3);

  Instance inst = tap_test::make_instance(3, {{0, 1}, {1, 2}}, {{0, 2}});
  RootedTree a = build_tree(inst, 1);
  RootedTree b = build_tree(3, inst.tree_edges, 1);
  CHECK(a.preorder == b.preorder);
  CHECK(a.parent == b.parent);
}
