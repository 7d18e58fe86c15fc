#pragma once

#include <vector>

#include "tap/contraction.hpp"
#include "tap/structures.hpp"

namespace tap {

// true iff every tree edge lies on the path of some selected link
bool verify_cover(const Instance& inst, const std::vector<int>& link_ids);

struct ExactResult {
  int size = 0;
  std::vector<int> witness;  // lexicographically least minimum cover
};

// Exhaustive minimum cover by increasing cardinality with a suffix-coverage
// cut. Throws LimitError above max_links and InfeasibleError when even the
// full link set does not cover.
ExactResult exact_opt(const Instance& inst, int max_links = 26);

// A distinguished optimal cover over the shadow-closed link set: optimal,
// shadows-minimal (no member can be replaced by a proper shadow), maximum
// twin-link count, lexicographically least among those. Carries the derived
// sets used by the credit accounting.
struct CanonicalF {
  std::vector<int> links;                      // ids into the closed set
  int twin_count = 0;
  std::vector<int> m_f;                        // F's leaf-leaf links outside W
  std::vector<std::pair<int, int>> n_pairs;    // matched pairs missed by m_f on both ends
  std::vector<int> j_links;                    // F links not incident to a locked leaf
  std::vector<int> d_j;                        // per node, degree in j_links
};

CanonicalF canonical_F(const RootedTree& t, const LinkSet& closed, const StructureReport& report,
                       const Matching& m, int enum_limit = 48);

// Doubled right-hand side of the cover lower bound:
// 3|M| + 2|U| + |N| + sum of d_J over nodes that are neither leaves nor stems.
int lower_bound_rhs_x2(const RootedTree& t, const StructureReport& report, const Matching& m,
                       const CanonicalF& f);

struct AuditOutcome {
  bool ok;
  int credit_x2;
  int cost_x2;
};

// Credit-legality of contracting `nodes` with a cover of cover_size links:
// doubled credit (coupons plus tickets) must be at least 2*(cover_size + 1).
// Tickets: one per still-matched n_pair inside, d_J per original non-leaf
// non-stem node inside; compound nodes carry no tickets.
AuditOutcome audit_contraction(const ContractionState& pre, const CanonicalF& f,
                               const StructureReport& original_report,
                               const std::vector<int>& nodes, int cover_size);

}  // namespace tap
