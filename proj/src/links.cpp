#include "tap/links.hpp"

#include <algorithm>

#include "tap/errors.hpp"
#include "tap/util.hpp"

namespace tap {

int LinkSet::find_pair(int u, int v) const {
  auto it = by_pair.find(norm_pair(u, v));
  return it == by_pair.end() ? -1 : it->second;
}

void LinkSet::add(int u, int v, int origin, int chain_len) {
  require(u != v, "self-loop link");
  auto key = norm_pair(u, v);
  auto it = by_pair.find(key);
  if (it == by_pair.end()) {
    by_pair.emplace(key, static_cast<int>(links.size()));
    links.push_back({key.first, key.second, origin, chain_len});
    return;
  }
  Link& kept = links[it->second];
  if (chain_len < kept.chain_len || (chain_len == kept.chain_len && origin < kept.origin)) {
    kept.origin = origin;
    kept.chain_len = chain_len;
  }
}

void LinkSet::rebuild_incidence() {
  incidence.assign(id_limit, {});
  for (size_t i = 0; i < links.size(); ++i) {
    incidence[links[i].u].push_back(static_cast<int>(i));
    incidence[links[i].v].push_back(static_cast<int>(i));
  }
}

LinkSet make_link_set(int id_limit, const std::vector<std::pair<int, int>>& raw) {
  LinkSet set;
  set.id_limit = id_limit;
  for (size_t i = 0; i < raw.size(); ++i)
    set.add(raw[i].first, raw[i].second, static_cast<int>(i), 0);
  set.rebuild_incidence();
  return set;
}

LinkSet shadow_complete(const RootedTree& t, const LinkSet& raw) {
  LinkSet out = raw;
  size_t existing = out.links.size();
  for (size_t i = 0; i < existing; ++i) {
    Link link = out.links[i];  // copy: out.links may reallocate
    auto path = t.path_nodes(link.u, link.v);
    for (size_t a = 0; a < path.size(); ++a)
      for (size_t b = a + 1; b < path.size(); ++b) {
        if (out.find_pair(path[a], path[b]) != -1) continue;
        out.add(path[a], path[b], link.origin, link.chain_len + 1);
      }
  }
  out.rebuild_incidence();
  return out;
}

std::optional<int> up_link(const RootedTree& t, const LinkSet& links, int a) {
  int best = -1, best_node = -1;
  for (int id : links.incidence[a]) {
    const Link& l = links.links[id];
    int other = l.u == a ? l.v : l.u;
    if (best == -1 || t.depth[other] < t.depth[best_node] ||
        (t.depth[other] == t.depth[best_node] && other < best_node)) {
      best = id;
      best_node = other;
    }
  }
  if (best == -1) return std::nullopt;
  return best;
}

}  // namespace tap
