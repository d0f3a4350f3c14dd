#pragma once

#include <vector>

#include "cbal/balance.hpp"
#include "cbal/graph.hpp"
#include "cbal/pattern.hpp"

namespace cbal {

// n split into k parts, sizes differing by at most 1, larger parts first
std::vector<int> equal_part_sizes(int n, int k);

/// 3-colored host with no balanced P_{3k}: a small set A of k-1 vertices,
/// A-B edges color 0, A-C edges color 1, everything else color 2.
ColoredCompleteGraph construct_path_blocker(int n, int k);

/// l parts, one distinct color per cross pair, a last color for all
/// intra-part edges; r = l(l-1)/2 + 1.
PatternTemplate clique_partition_template(int l);
ColoredCompleteGraph construct_clique_partition(int n, int l);

/// Recovers the l parts of a clique-partition coloring (throws if g is not
/// one, up to part order).  Parts come back sorted by first vertex.
std::vector<std::vector<int>> recover_clique_partition(const ColoredCompleteGraph& g, int l);

/// True iff the parity argument certifies that g (a clique-partition
/// coloring on l parts) has no balanced P_{rk}: a balanced path induces a
/// closed-ish walk on parts where every non-endpoint part has even degree,
/// but with k odd and l even each part would get odd degree k(l-1).
bool parity_obstruction_check(const ColoredCompleteGraph& g, int l, int k);

/// Blow-up of T with near-equal part sizes summing to n.  Requires that T
/// admits no balanced copy of the guest (checked at part size = guest order).
ColoredCompleteGraph construct_pattern_blowup_blocker(const PatternTemplate& T,
                                                      const Guest& guest, int n);

/// Small certification helper shared by tests and the CLI: exact search when
/// the host is small enough, otherwise explicitly skipped.
enum class CertifyStatus { CONFIRMED_ABSENT, REFUTED_PRESENT, SKIPPED_TOO_LARGE };
struct CertifyResult {
    CertifyStatus status;
    std::optional<Embedding> found;  // set when REFUTED_PRESENT
};
CertifyResult certify_avoidance(const ColoredCompleteGraph& host, const Guest& guest,
                                int max_n = 14);

}  // namespace cbal
