#pragma once

#include <map>
#include <string>
#include <vector>

#include "rspr/tree.hpp"

namespace rspr {

/// Partition of the label set (root label included) whose blocks induce
/// equal, vertex-disjoint subtrees in two trees.
struct AgreementForest {
    std::vector<std::set<std::string>> blocks;  // sorted by smallest label
    int rho_block = -1;                         // index of the block holding the root label

    int size() const { return static_cast<int>(blocks.size()); }
};

/// Canonicalize block order and locate the root block. Throws TreeError
/// when the root label is missing.
AgreementForest make_forest(std::vector<std::set<std::string>> blocks);

/// Digraph on blocks; arc (i,j) when block i's subtree root properly
/// precedes block j's subtree root in either tree.
struct InheritanceGraph {
    int nodes = 0;
    std::vector<std::pair<int, int>> arcs;
    bool has_cycle = false;
};

/// 0/1 assignment over the ordinary leaves (root label excluded).
struct BinaryCharacter {
    std::map<std::string, int> value;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- validity -----------------------------------------------------------------

/// Both defining properties: equal restrictions per block, blockwise
/// vertex-disjoint minimal subtrees in each tree. Throws TreeError when
/// the blocks do not partition the common label set.
bool is_agreement_forest(const RootedTree& t1, const RootedTree& t2,
                         const AgreementForest& f);

InheritanceGraph build_inheritance_graph(const RootedTree& t1,
                                         const RootedTree& t2,
                                         const AgreementForest& f);

/// Agreement forest whose inheritance graph is acyclic. Throws TreeError
/// on an invalid forest.
bool is_acyclic_forest(const RootedTree& t1, const RootedTree& t2,
                       const AgreementForest& f);

// -- exhaustive oracles ---------------------------------------------------------

/// Minimum-size agreement forest by pruned enumeration of all partitions.
/// d = |F|-1. Throws CapExceeded above `cap` leaves.
std::pair<AgreementForest, int> maf_bruteforce(const RootedTree& t1,
                                               const RootedTree& t2,
                                               int cap = 10);

/// Minimum-size acyclic agreement forest, same search space plus the
/// acyclicity filter. r = |F|-1.
std::pair<AgreementForest, int> maaf_bruteforce(const RootedTree& t1,
                                                const RootedTree& t2,
                                                int cap = 9);

// -- exact solvers ---------------------------------------------------------------

struct DistanceResult {
    int distance = 0;
    AgreementForest certificate;  // forest of the reduced pair
    RootedTree s1, s2;            // reduced pair the certificate refers to
    int offset = 0;               // distance consumed by kernelization
};

/// Exact rSPR distance: kernelize, then iterative-deepening cherry
/// branching over agreement forests of the reduced pair.
DistanceResult rspr_distance(const RootedTree& t1, const RootedTree& t2);

/// Decision form on the raw pair (no kernelization): is the distance <= k?
bool rspr_at_most(const RootedTree& t1, const RootedTree& t2, int k);

/// Exact hybridization number: subtree/3-2 reductions first, then
/// iterative deepening over edge cut sets of the second tree, keeping
/// the first acyclic agreement forest found at each depth.
DistanceResult hybridization_number(const RootedTree& t1, const RootedTree& t2,
                                    int leaf_cap = 64, int depth_cap = 12);

// -- parsimony / lower bounds ----------------------------------------------------

/// Parsimony score of a 0/1 character on the unrooted shape of t (root
/// vertex dropped, its former neighbor suppressed). Bottom-up state sets,
/// counting union events. Throws TreeError on a partial character.
int fitch_score(const RootedTree& t, const BinaryCharacter& f);

/// max_f |l_f(t1) - l_f(t2)| over all binary characters, iterating one
/// representative per complement pair. Throws CapExceeded above `cap`.
int dmp2(const RootedTree& t1, const RootedTree& t2, int cap = 20);

/// TBR distance of the unrooted shapes via minimum unrooted agreement
/// forests (exhaustive partitions of the ordinary leaves).
int tbr_bruteforce(const RootedTree& t1, const RootedTree& t2, int cap = 10);

}  // namespace rspr
