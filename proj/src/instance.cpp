#include "tap/instance.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "tap/errors.hpp"
#include "tap/util.hpp"

namespace tap {

namespace {

struct Line {
  int number;
  std::string tag;
  std::vector<long long> fields;
  std::string kind;  // second token of a p line
};

// splits into meaningful lines, dropping comments and blanks
std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    Line line{number, tag, {}, ""};
    if (tag == "p") {
      if (!(ls >> line.kind)) throw ParseError(number, "malformed header");
    }
    long long x;
    while (ls >> x) line.fields.push_back(x);
    std::string trailing;
    if (ls.clear(), ls >> trailing) throw ParseError(number, "malformed line");
    out.push_back(std::move(line));
  }
  return out;
}

std::pair<int, int> read_endpoints(const Line& line, int node_count, const char* what) {
  if (line.fields.size() != 2) throw ParseError(line.number, std::string("malformed ") + what);
  long long u = line.fields[0], v = line.fields[1];
  if (u < 1 || u > node_count || v < 1 || v > node_count)
    throw ParseError(line.number, "node id out of range");
  return {static_cast<int>(u - 1), static_cast<int>(v - 1)};
}

void check_spanning_tree(int n, const std::vector<std::pair<int, int>>& edges, int line) {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : edges) {
    int a = find(u), b = find(v);
    if (a == b) throw ParseError(line, "tree edges do not span the node set");
    parent[a] = b;
  }
}

void check_connected(const GraphInput& g, int line) {
  if (g.node_count == 0) throw ParseError(line, "malformed header");
  std::vector<std::vector<int>> adj(g.node_count);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(g.node_count, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  for (char s : seen)
    if (!s) throw ParseError(line, "graph is disconnected");
}

std::vector<std::pair<int, int>> dedupe_links(const std::vector<std::pair<int, int>>& raw) {
  std::vector<std::pair<int, int>> out;
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : raw) {
    auto p = norm_pair(u, v);
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

}  // namespace

ParsedInput parse_instance(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0].tag != "p") throw ParseError(lines.empty() ? 1 : lines[0].number, "malformed header");
  const Line& header = lines[0];
  bool graph = header.kind == "graph";
  if (!graph && header.kind != "tap") throw ParseError(header.number, "malformed header");
  size_t want_fields = graph ? 3 : 2;
  if (header.fields.size() != want_fields) throw ParseError(header.number, "malformed header");
  long long n = header.fields[0];
  long long m = graph ? header.fields[1] : n - 1;
  long long k = header.fields[graph ? 2 : 1];
  if (n < 1 || m < 0 || k < 0 || n > 1000000) throw ParseError(header.number, "malformed header");

  auto edge_count_msg = [&] {
    std::ostringstream os;
    os << "expected " << m << (graph ? " graph edges" : " tree edges");
    return os.str();
  };
  auto link_count_msg = [&] {
    std::ostringstream os;
    os << "expected " << k << " links";
    return os.str();
  };

  std::vector<std::pair<int, int>> edges, raw_links;
  size_t idx = 1;
  int last_line = header.number;
  for (; idx < lines.size() && static_cast<long long>(edges.size()) < m; ++idx) {
    const Line& line = lines[idx];
    last_line = line.number;
    if (line.tag != "e") throw ParseError(line.number, edge_count_msg());
    auto [u, v] = read_endpoints(line, static_cast<int>(n), "edge");
    if (!graph && u == v) throw ParseError(line.number, "self-loop tree edge");
    edges.emplace_back(u, v);
  }
  if (static_cast<long long>(edges.size()) < m) throw ParseError(last_line + 1, edge_count_msg());
  for (; idx < lines.size() && static_cast<long long>(raw_links.size()) < k; ++idx) {
    const Line& line = lines[idx];
    last_line = line.number;
    if (line.tag != "l") throw ParseError(line.number, line.tag == "e" ? edge_count_msg() : link_count_msg());
    auto [u, v] = read_endpoints(line, static_cast<int>(n), "link");
    if (u == v) throw ParseError(line.number, "self-loop link");
    raw_links.emplace_back(u, v);
  }
  if (static_cast<long long>(raw_links.size()) < k) throw ParseError(last_line + 1, link_count_msg());
  if (idx < lines.size())
    throw ParseError(lines[idx].number, lines[idx].tag == "e" ? edge_count_msg() : link_count_msg());

  if (graph) {
    GraphInput g;
    g.node_count = static_cast<int>(n);
    g.edges = std::move(edges);
    g.links = dedupe_links(raw_links);
    check_connected(g, header.number);
    return ParsedInput{g};
  }
  Instance inst;
  inst.node_count = static_cast<int>(n);
  for (auto [u, v] : edges) inst.tree_edges.push_back(norm_pair(u, v));
  if (n > 1) check_spanning_tree(inst.node_count, inst.tree_edges, header.number);
  inst.links = dedupe_links(raw_links);
  return ParsedInput{inst};
}

std::string serialize(const Instance& inst) {
  std::ostringstream os;
  os << "p tap " << inst.node_count << ' ' << inst.links.size() << '\n';
  for (auto [u, v] : inst.tree_edges) os << "e " << u + 1 << ' ' << v + 1 << '\n';
  for (auto [u, v] : inst.links) os << "l " << u + 1 << ' ' << v + 1 << '\n';
  return os.str();
}

std::string serialize_solution(const Instance& inst, const std::vector<int>& link_ids) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(link_ids.size());
  for (int id : link_ids) pairs.push_back(inst.links[id]);
  std::sort(pairs.begin(), pairs.end());
  std::ostringstream os;
  os << "s tap " << pairs.size() << '\n';
  for (auto [u, v] : pairs) os << "l " << u + 1 << ' ' << v + 1 << '\n';
  return os.str();
}

GraphReduction reduce_graph(const GraphInput& g) {
  int n = g.node_count;
  int m = static_cast<int>(g.edges.size());
  // bridge search over the multigraph; parallel edges are distinguished by index
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge index)
  for (int i = 0; i < m; ++i) {
    auto [u, v] = g.edges[i];
    adj[u].emplace_back(v, i);
    adj[v].emplace_back(u, i);
  }
  std::vector<int> entry(n, -1), low(n, 0);
  std::vector<char> is_bridge(m, 0);
  int timer = 0;
  // iterative dfs from node 0 (input is connected)
  struct Frame {
    int v;
    int via_edge;
    size_t next;
  };
  std::vector<Frame> stack;
  stack.push_back({0, -1, 0});
  entry[0] = low[0] = timer++;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < adj[f.v].size()) {
      auto [to, idx] = adj[f.v][f.next++];
      if (idx == f.via_edge) continue;
      if (entry[to] == -1) {
        entry[to] = low[to] = timer++;
        stack.push_back({to, idx, 0});
      } else {
        low[f.v] = std::min(low[f.v], entry[to]);
      }
    } else {
      int v = f.v, via = f.via_edge;
      stack.pop_back();
      if (!stack.empty()) {
        int p = stack.back().v;
        low[p] = std::min(low[p], low[v]);
        if (low[v] > entry[p]) is_bridge[via] = 1;
      }
    }
  }

  // 2-edge-connected components: union over non-bridge edges
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < m; ++i)
    if (!is_bridge[i]) {
      int a = find(g.edges[i].first), b = find(g.edges[i].second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  // component ids ordered by smallest member
  std::map<int, int> comp_id;
  std::vector<int> node_map(n);
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    if (!comp_id.count(r)) comp_id[r] = 0;
  }
  int next_id = 0;
  for (auto& [rep, id] : comp_id) id = next_id++;
  for (int v = 0; v < n; ++v) node_map[v] = comp_id[find(v)];

  GraphReduction red;
  red.node_map = node_map;
  red.instance.node_count = next_id;
  for (int i = 0; i < m; ++i)
    if (is_bridge[i])
      red.instance.tree_edges.push_back(norm_pair(node_map[g.edges[i].first], node_map[g.edges[i].second]));
  std::set<std::pair<int, int>> seen;
  for (size_t i = 0; i < g.links.size(); ++i) {
    int u = node_map[g.links[i].first], v = node_map[g.links[i].second];
    if (u == v) continue;
    auto p = norm_pair(u, v);
    if (seen.insert(p).second) {
      red.instance.links.push_back(p);
      red.link_map.push_back(static_cast<int>(i));
    }
  }
  return red;
}

namespace {

std::vector<std::pair<int, int>> build_model_edges(const GenParams& params, std::mt19937_64& rng) {
  int n = params.nodes;
  std::vector<std::pair<int, int>> edges;
  switch (params.model) {
    case TreeModel::Random:
      for (int v = 1; v < n; ++v)
        edges.emplace_back(static_cast<int>(uniform_below(rng, v)), v);
      break;
    case TreeModel::Star:
      for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
      break;
    case TreeModel::Caterpillar: {
      int spine = std::max(2, n / 2);
      spine = std::min(spine, n);
      for (int v = 1; v < spine; ++v) edges.emplace_back(v - 1, v);
      for (int v = spine; v < n; ++v)
        edges.emplace_back(static_cast<int>(uniform_below(rng, spine)), v);
      break;
    }
    case TreeModel::Binary:
      for (int v = 1; v < n; ++v) edges.emplace_back((v - 1) / 2, v);
      break;
  }
  return edges;
}

}  // namespace

Instance generate(const GenParams& params, std::uint64_t seed) {
  GenParams p = params;
  p.nodes = std::clamp(p.nodes, 2, 4096);
  p.extra_links = std::clamp(p.extra_links, 0, p.nodes * (p.nodes - 1) / 2);
  std::mt19937_64 rng(seed);

  Instance inst;
  inst.node_count = p.nodes;
  for (auto [u, v] : build_model_edges(p, rng)) inst.tree_edges.push_back(norm_pair(u, v));

  std::set<std::pair<int, int>> have;
  int attempts = 0;
  while (static_cast<int>(inst.links.size()) < p.extra_links && attempts < 20 * p.extra_links + 40) {
    ++attempts;
    int u = static_cast<int>(uniform_below(rng, p.nodes));
    int v = static_cast<int>(uniform_below(rng, p.nodes));
    if (u == v) continue;
    auto pr = norm_pair(u, v);
    if (have.insert(pr).second) inst.links.push_back(pr);
  }

  if (p.ensure_feasible) {
    // rooted at 0 by construction: every edge list above points parent->child
    std::vector<int> par(p.nodes, -1);
    std::vector<std::vector<int>> children(p.nodes);
    for (auto [u, v] : inst.tree_edges) {
      int hi = std::max(u, v), lo = std::min(u, v);
      par[hi] = lo;
      children[lo].push_back(hi);
    }
    std::vector<int> depth(p.nodes, 0), order;
    order.push_back(0);
    for (size_t i = 0; i < order.size(); ++i)
      for (int c : children[order[i]]) {
        depth[c] = depth[order[i]] + 1;
        order.push_back(c);
      }
    // covered[child] for edge (child, parent)
    std::vector<char> covered(p.nodes, 0);
    auto mark = [&](int u, int v) {
      while (u != v) {
        if (depth[u] < depth[v]) std::swap(u, v);
        covered[u] = 1;
        u = par[u];
      }
    };
    for (auto [u, v] : inst.links) mark(u, v);
    for (int c = 1; c < p.nodes; ++c) {
      if (covered[c]) continue;
      std::vector<int> below;  // leaves in subtree(c)
      std::vector<int> stack{c};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (children[v].empty()) below.push_back(v);
        for (int w : children[v]) stack.push_back(w);
      }
      std::sort(below.begin(), below.end());
      std::vector<int> above;  // proper ancestors of c
      for (int v = par[c]; v != -1; v = par[v]) above.push_back(v);
      int leaf = below[uniform_below(rng, below.size())];
      int anc = above[uniform_below(rng, above.size())];
      auto pr = norm_pair(leaf, anc);
      if (have.insert(pr).second) inst.links.push_back(pr);
      mark(pr.first, pr.second);
    }
  }
  return inst;
}

}  // namespace tap
