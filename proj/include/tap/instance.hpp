#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace tap {

// Tree augmentation instance. Node ids are 0-based here; files are 1-based.
// Links are normalized (u < v) and duplicate-free; duplicates in input keep
// the first occurrence, so stored indices are the canonical link ids.
struct Instance {
  int node_count = 0;
  std::vector<std::pair<int, int>> tree_edges;
  std::vector<std::pair<int, int>> links;
  std::vector<std::string> names;  // optional labels, not serialized

  bool operator==(const Instance& o) const {
    return node_count == o.node_count && tree_edges == o.tree_edges && links == o.links;
  }
};

// General 2-edge-connectivity input; reduce_graph turns it into an Instance.
struct GraphInput {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;  // parallel edges allowed
  std::vector<std::pair<int, int>> links;
};

enum class ContractionKind { LockingTree, GreedyLink, SemiClosed, FindTree };

struct TraceRecord {
  ContractionKind kind;
  int leaf_count;
  int cover_size;
  int coupons_spent_x2;
};

struct AuditRecord {
  bool ok;
  int credit_x2;
  int cost_x2;
};

struct SolveStats {
  int size = 0;
  int iterations = 0;
  std::vector<TraceRecord> trace;
  std::vector<AuditRecord> audit;
};

// Cover returned by the solver: indices into Instance::links.
struct Solution {
  std::vector<int> links;
  SolveStats stats;
};

struct ParsedInput {
  std::variant<Instance, GraphInput> value;
  bool is_graph() const { return std::holds_alternative<GraphInput>(value); }
  const Instance& instance() const { return std::get<Instance>(value); }
  const GraphInput& graph() const { return std::get<GraphInput>(value); }
};

ParsedInput parse_instance(const std::string& text);
std::string serialize(const Instance& inst);
// solution text: "s tap <size>" plus one "l <u> <v>" line per link, 1-based,
// sorted lexicographically by normalized endpoint pair
std::string serialize_solution(const Instance& inst, const std::vector<int>& link_ids);

struct GraphReduction {
  Instance instance;
  std::vector<int> node_map;  // original node -> tree node
  std::vector<int> link_map;  // instance link index -> original link index
};
GraphReduction reduce_graph(const GraphInput& g);

enum class TreeModel { Random, Star, Caterpillar, Binary };

struct GenParams {
  int nodes = 8;
  int extra_links = 4;
  TreeModel model = TreeModel::Random;
  bool ensure_feasible = true;
};

Instance generate(const GenParams& params, std::uint64_t seed);

}  // namespace tap
