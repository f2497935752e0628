#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rspr {

/// Reserved label carried by the formal root vertex of every tree and graph.
inline constexpr const char* kRootLabel = "__rho__";

using Vertex = int;

/// Rooted binary phylogenetic tree. The formal root is a labeled vertex
/// (kRootLabel) with out-degree 1 sitting above the topmost branching
/// vertex; ordinary leaves have out-degree 0 and carry unique labels.
/// Vertices are dense ints [0, vertex_count). Treated as an immutable
/// value: operations return new trees.
struct RootedTree {
    std::vector<Vertex> parent;              // -1 for the root
    std::vector<std::vector<Vertex>> kids;   // 1 child for root, 2 internal, 0 leaf
    std::vector<std::string> label;          // empty for unlabeled internal vertices
    Vertex root = -1;

    int vertex_count() const { return static_cast<int>(parent.size()); }
    bool is_leaf(Vertex v) const { return kids[v].empty(); }
    bool has_label(Vertex v) const { return !label[v].empty(); }
};

/// Thrown when an operation's structural preconditions are violated
/// (unknown label, mismatched label sets, malformed tree).
struct TreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// -- construction -----------------------------------------------------------

/// Assembles a tree from parent pointers; validates binary shape.
RootedTree make_tree(const std::vector<Vertex>& parent,
                     const std::vector<std::string>& labels);

/// Structural validity: root in-0/out-1 labeled kRootLabel, internals
/// in-1/out-2, leaves labeled/out-0, connected, acyclic, labels unique.
bool tree_valid(const RootedTree& t, std::string* why = nullptr);

// -- basic queries -----------------------------------------------------------

/// Leaf labels excluding the root label.
std::set<std::string> leaf_labels(const RootedTree& t);
/// Leaf labels including the root label.
std::set<std::string> all_labels(const RootedTree& t);
int leaf_count(const RootedTree& t);

Vertex vertex_of_label(const RootedTree& t, const std::string& lab);
std::optional<Vertex> find_label(const RootedTree& t, const std::string& lab);

/// Smallest label in v's subtree (the canonical-order key).
const std::string& min_label_below(const RootedTree& t, Vertex v,
                                   std::vector<const std::string*>& memo);

// -- core operations ---------------------------------------------------------

/// Restriction to a label subset: minimal connecting subtree with
/// degree-2 vertices suppressed, root vertex re-attached above.
/// `labels` may or may not mention the root label.
RootedTree restrict_to(const RootedTree& t, const std::set<std::string>& labels);

/// Restriction shorthand: drop one leaf.
RootedTree remove_leaf(const RootedTree& t, const std::string& lab);

/// Label-preserving isomorphism. Throws TreeError when label sets differ.
bool is_isomorphic(const RootedTree& t1, const RootedTree& t2);

/// Canonical serialization key: children ordered by smallest contained
/// label, root vertex omitted. Equal iff trees isomorphic.
std::string canonical_form(const RootedTree& t);

// -- chains -------------------------------------------------------------------

/// Ladder of leaves: for i>=3 the parent of leaves[i] is the grandparent
/// of leaves[i-1]; pendant when the first two leaves share a parent (and
/// are then interchangeable).
struct Chain {
    std::vector<std::string> leaves;
    bool pendant = false;
};

/// Chain found in both trees; pendant status per tree.
struct CommonChain {
    std::vector<std::string> leaves;
    bool pendant_in_t1 = false;
    bool pendant_in_t2 = false;
    int size() const { return static_cast<int>(leaves.size()); }
};

/// Chain predicate for one tree. Throws TreeError on unknown labels.
bool is_chain(const RootedTree& t, const std::vector<std::string>& seq);
/// Chain whose first two leaves form a cherry.
bool is_pendant_chain(const RootedTree& t, const std::vector<std::string>& seq);

/// All maximal chains common to both trees (same sequence satisfies the
/// chain predicate in both; the first-pair swap of a pendant chain is
/// considered when matching). Deterministic order.
std::vector<CommonChain> maximal_common_chains(const RootedTree& t1,
                                               const RootedTree& t2);

// -- common pendant subtrees ---------------------------------------------------

/// Label sets (size >= 2) of maximal subtrees pendant in both trees with
/// equal restrictions. Pairwise disjoint; sorted by smallest label.
std::vector<std::set<std::string>> maximal_common_pendant_subtrees(
    const RootedTree& t1, const RootedTree& t2);

// -- misc helpers used across modules -----------------------------------------

/// Vertices of the minimal subtree of t connecting the given leaf labels
/// (the root label selects the root vertex).
std::vector<Vertex> spanning_vertices(const RootedTree& t,
                                      const std::set<std::string>& labels);

/// Root of the minimal connecting subtree (MRCA; the root vertex itself
/// when the set mentions the root label).
Vertex spanning_root(const RootedTree& t, const std::set<std::string>& labels);

/// True when `anc` lies strictly above `v` on the path from the root.
bool is_proper_ancestor(const RootedTree& t, Vertex anc, Vertex v);

/// Cherries: leaf label pairs sharing a parent, each pair sorted, list sorted.
std::vector<std::pair<std::string, std::string>> cherries(const RootedTree& t);

}  // namespace rspr
