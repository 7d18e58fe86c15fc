#pragma once

#include <cstdint>
#include <optional>

#include "tap/semiclosed.hpp"
#include "tap/structures.hpp"

namespace tap {

struct SolveOptions {
  std::optional<int> root_override;
  bool audit = false;
  std::uint64_t seed = 0;  // reserved for option parity; the solver is deterministic
};

// lowest-id node of tree degree >= 2; n == 2 has none and is handled directly
int pick_root(const Instance& inst);

// Repeatedly contracts a still-intact locking tree whose leaf triple is fully
// unmatched, preferring the leaf whose tree contains its twin's locking tree.
// Cover: the locking link plus the locked leaf's up-link. Returns the count.
int exhaust_greedy_locking(ContractionState& state, const StructureReport& report);

// Contracts link paths joining two unmatched leaves (compound leaves
// included) until none remains, scanning pairs lexicographically.
int exhaust_greedy_links(ContractionState& state);

Solution tree_cover(const Instance& inst, const SolveOptions& opts = {});

}  // namespace tap
