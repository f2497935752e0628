#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rspr/tree.hpp"

namespace rspr {

enum class Mode { rspr, hybridization };

enum class Rule { subtree, chain_rspr, chain_hyb, chain32 };

const char* rule_name(Rule r);
const char* mode_name(Mode m);

struct ReductionStep {
    Rule rule;
    std::set<std::string> removed_labels;
    int distance_offset = 0;  // 1 for the 3-2 rule, otherwise 0
};

/// Result of one reduction: the smaller pair plus the step taken.
struct Reduced {
    RootedTree t1, t2;
    ReductionStep step;
};

/// Irreducible pair plus the bookkeeping needed to recover the distance.
struct KernelResult {
    RootedTree s1, s2;
    int offset = 0;  // number of 3-2 steps
    std::vector<ReductionStep> trace;
    Mode mode = Mode::rspr;
    bool distance_exact = true;  // false once the hybridization chain rule fires
};

/// Collapse one maximal common pendant subtree to its smallest leaf.
std::optional<Reduced> apply_subtree_reduction(const RootedTree& t1,
                                               const RootedTree& t2);

/// Truncate one maximal common chain of length >= 4 to its first three
/// leaves. Declines identical trees (the subtree rule owns that case).
std::optional<Reduced> apply_chain_reduction_rspr(const RootedTree& t1,
                                                  const RootedTree& t2);

/// Truncate one maximal common chain of length >= 3 to its first two
/// leaves; the distance is no longer recoverable from the offset alone.
std::optional<Reduced> apply_chain_reduction_hyb(const RootedTree& t1,
                                                 const RootedTree& t2);

/// Pendant 3-chain in one tree against a pendant 2-chain on the same last
/// leaf in the other: delete the leftover first-pair leaf from both.
/// Decreases the distance by exactly one.
std::optional<Reduced> apply_32_chain_reduction(const RootedTree& t1,
                                                const RootedTree& t2);

/// True when any of the three rules (mode's chain variant) applies.
bool any_rule_applies(const RootedTree& t1, const RootedTree& t2, Mode mode);

/// Phase 1: subtree and 3-2 reductions to exhaustion (subtree first at
/// each scan); phase 2: the mode's chain reduction to exhaustion. The
/// result is re-scanned and must admit no rule.
KernelResult kernelize(const RootedTree& t1, const RootedTree& t2, Mode mode);

/// Kernel size bound: leaf count <= 9d-3 (rspr) or 7d-2 (hybridization),
/// d being the exact distance of the reduced pair. Throws TreeError for
/// d < 1.
bool verify_kernel_bound(const KernelResult& k, int d);

}  // namespace rspr
