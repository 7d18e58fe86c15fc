#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tap/tree.hpp"

namespace tap {

// A link in the working set. origin is the index of the instance link this
// one descends from; chain_len counts shadow hops back to that origin (0 for
// a remapped original). Replacing a link by its origin always covers at least
// the same current-tree edges, which is what de-shadowing relies on.
struct Link {
  int u, v;
  int origin;
  int chain_len;
};

struct LinkSet {
  int id_limit = 0;
  std::vector<Link> links;
  std::vector<std::vector<int>> incidence;       // per node, link ids, ascending
  std::map<std::pair<int, int>, int> by_pair;    // normalized pair -> link id

  int find_pair(int u, int v) const;             // -1 if absent
  // appends if the pair is new; otherwise keeps the entry with the shorter
  // provenance chain (ties: lower origin)
  void add(int u, int v, int origin, int chain_len);
  void rebuild_incidence();
};

LinkSet make_link_set(int id_limit, const std::vector<std::pair<int, int>>& raw);

// Closes the set under sub-paths: for every link, every pair of distinct
// nodes on its tree path is present. New links point at the earliest link in
// set order whose path contains them. Idempotent.
LinkSet shadow_complete(const RootedTree& t, const LinkSet& raw);

// The incident link whose far endpoint is closest to the root. On a
// shadow-complete set that endpoint is a unique ancestor of a.
std::optional<int> up_link(const RootedTree& t, const LinkSet& links, int a);

}  // namespace tap
