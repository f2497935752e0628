#pragma once

#include <string>
#include <vector>

#include "rspr/networks.hpp"
#include "rspr/tree.hpp"

namespace rspr {

/// Parse failure with the byte offset of the offending character.
struct ParseError : std::runtime_error {
    size_t offset;
    ParseError(std::string msg, size_t off)
        : std::runtime_error(msg + " (byte " + std::to_string(off) + ")"),
          offset(off) {}
};

struct TreeDocument {
    std::string newick_text;
    RootedTree tree;
    std::vector<std::string> warnings;  // discarded branch lengths etc.
};

struct GraphDocument {
    int declared_vertices = 0;
    int declared_edges = 0;
    int root_id = -1;
    LeafLabeledGraph graph;
};

/// Rooted binary Newick, semicolon-terminated. The formal root vertex is
/// injected above the outermost node; it never appears in the text.
/// Branch lengths and internal labels are accepted, dropped, and reported
/// through `warnings`. Throws ParseError / TreeError.
RootedTree parse_tree(const std::string& text,
                      std::vector<std::string>* warnings = nullptr);

TreeDocument parse_tree_document(const std::string& text);

/// Canonical Newick: children ordered by smallest contained label, no
/// root vertex, terminating semicolon. Isomorphic trees serialize equally.
std::string write_tree(const RootedTree& t);

/// Edge-list format:
///   graph <V> <E> root=<id>
///   <u> <v>            (E lines)
///   label <id> <name>  (leaves and the root)
/// Validates through validate_graph and reports the violated property.
LeafLabeledGraph parse_graph(const std::string& text);

GraphDocument parse_graph_document(const std::string& text);

/// Deterministic inverse of parse_graph.
std::string write_graph(const LeafLabeledGraph& g);

/// DOT export; reticulations drawn distinctly; byte-identical output for
/// equal inputs.
std::string write_dot(const RootedTree& t);
std::string write_dot(const LeafLabeledGraph& g);
std::string write_dot(const CyclicGenerator& gen);

}  // namespace rspr
