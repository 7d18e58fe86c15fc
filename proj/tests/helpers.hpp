#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tap/instance.hpp"
#include "tap/util.hpp"

namespace tap_test {

inline std::string fixture_path(const std::string& name) {
  return std::string(TAP_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline tap::Instance load_fixture(const std::string& name) {
  return tap::parse_instance(slurp(fixture_path(name))).instance();
}

// 0-based builder; normalizes edges and links like the parser does
inline tap::Instance make_instance(int n, std::vector<std::pair<int, int>> edges,
                                   std::vector<std::pair<int, int>> links) {
  tap::Instance inst;
  inst.node_count = n;
  for (auto [u, v] : edges) inst.tree_edges.push_back(tap::norm_pair(u, v));
  for (auto [u, v] : links) inst.links.push_back(tap::norm_pair(u, v));
  return inst;
}

inline std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// reference maximum matching by exhaustive edge recursion
inline int brute_matching(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, size_t i) -> int {
    if (i == edges.size()) return 0;
    int best = self(self, i + 1);
    auto [u, v] = edges[i];
    if (!used[u] && !used[v]) {
      used[u] = used[v] = 1;
      best = std::max(best, 1 + self(self, i + 1));
      used[u] = used[v] = 0;
    }
    return best;
  };
  return rec(rec, 0);
}

}  // namespace tap_test
