#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rspr/forests.hpp"
#include "rspr/tree.hpp"

namespace rspr {

/// Rooted directed graph whose out-degree-0 vertices carry the leaf
/// labels. Directed cycles are allowed; parallel edges and loops are not.
/// Vertex ids are arbitrary ints (file ids are preserved).
struct LeafLabeledGraph {
    std::vector<int> vertices;                // sorted, unique
    std::vector<std::pair<int, int>> edges;   // ordered pairs
    int root = -1;
    std::map<int, std::string> labels;        // leaves plus the root label

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
};

/// Leaf-free backbone: exactly k vertices of in-degree 2 (out-degree 0 or
/// 1), the rest 1-in/2-out, root on top. Parallel edges allowed.
struct CyclicGenerator {
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> edges;   // multiset: duplicates are parallels
    int root = -1;
};

/// One attachable position of a generator: an edge (by index into the
/// generator's edge list) or a 2-in/0-out vertex.
struct Side {
    enum Kind { edge, vertex } kind = edge;
    int index = 0;  // edge list index, or vertex id

    bool operator==(const Side& o) const { return kind == o.kind && index == o.index; }
    bool operator<(const Side& o) const {
        return kind != o.kind ? kind < o.kind : index < o.index;
    }
};

/// Evidence that a graph carries a tree: per-reticulation choice of the
/// kept in-edge plus the edge sets used by the embedding bookkeeping.
struct EmbeddingWitness {
    std::map<int, std::pair<int, int>> switching;        // reticulation -> kept in-edge
    std::vector<std::pair<int, int>> subdivision_edges;  // tree subdivision
    std::vector<std::pair<int, int>> spanning_edges;     // spanning extension
    std::vector<std::pair<int, int>> cut_set;            // subdivision minus spanning
};

struct GraphViolation {
    std::string property;  // "i".."iv" or "format"
    int witness = -1;
    std::string message;
};

// -- validation ---------------------------------------------------------------

/// First violated defining property, or nothing when valid.
std::optional<GraphViolation> validate_graph(const LeafLabeledGraph& g);

/// |E| - (|V| - 1); asserts it matches the in-degree-2 vertex count.
/// Throws TreeError on an invalid graph.
int reticulation_count(const LeafLabeledGraph& g);

// -- conversions ---------------------------------------------------------------

LeafLabeledGraph graph_from_tree(const RootedTree& t);
/// Inverse for reticulation-free graphs.
RootedTree tree_from_graph(const LeafLabeledGraph& g);

// -- display ------------------------------------------------------------------

/// Searches the per-reticulation in-edge switchings for a subdivision of
/// t inside g; first witness in bitmask order. Throws TreeError when the
/// label sets differ.
std::optional<EmbeddingWitness> displays(const LeafLabeledGraph& g,
                                         const RootedTree& t);

/// Glue the forest blocks into one graph with a reticulation above every
/// non-root block. Result is validated internally: it must display both
/// trees with exactly |F|-1 reticulations.
LeafLabeledGraph graph_from_forest(const RootedTree& t1, const RootedTree& t2,
                                   const AgreementForest& f);

struct ForestFromGraphResult {
    AgreementForest forest;
    EmbeddingWitness witness;
};

/// Extract an agreement forest of size <= r(g)+1 from any graph that
/// displays both trees: cut the first tree's subdivision down to the
/// edges shared with a spanning extension of the second tree's.
ForestFromGraphResult forest_from_graph(const LeafLabeledGraph& g,
                                        const RootedTree& t1,
                                        const RootedTree& t2);

// -- generators ----------------------------------------------------------------

/// Backbone underlying g: delete all leaves, suppress degree-2 remnants.
/// Preconditions: r(g) >= 1 and no pendant subtree with two or more
/// leaves. Throws TreeError otherwise.
CyclicGenerator extract_generator(const LeafLabeledGraph& g);

int generator_k0(const CyclicGenerator& gen);  // 2-in/0-out vertices
int generator_k1(const CyclicGenerator& gen);  // 2-in/1-out vertices

/// All sides in deterministic order; asserts the edge-side count law
/// 4*k0 + 3*k1 - 1.
std::pair<std::vector<Side>, std::vector<Side>> enumerate_sides(
    const CyclicGenerator& gen);

/// What gets attached to one side: an ordered leaf run on an edge side,
/// or a whole subtree on a vertex side.
struct Attachment {
    std::vector<std::string> leaves;      // edge side: top-to-bottom order
    std::optional<RootedTree> subtree;    // vertex side: tree whose root is grafted
};

/// Subdivide edge sides with one vertex per attached leaf; hang a tree
/// root below each vertex side. Every parallel pair and every vertex
/// side must receive at least one leaf. Returns a valid graph with r = k.
LeafLabeledGraph attach(const CyclicGenerator& gen,
                        const std::map<Side, Attachment>& assignment);

/// Root-preserving isomorphism of generators (parallel edges counted).
bool generator_isomorphic(const CyclicGenerator& a, const CyclicGenerator& b);

/// True when the graph has a detachable true subtree with >= 2 leaves.
bool has_pendant_subtree(const LeafLabeledGraph& g);

/// True when g contains no directed cycle.
bool graph_is_acyclic(const LeafLabeledGraph& g);

}  // namespace rspr
