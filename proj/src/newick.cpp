#include "rspr/newick.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace rspr {

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;
    std::vector<std::string>* warnings;

    std::vector<Vertex> parent;
    std::vector<std::string> label;

    explicit Parser(const std::string& s, std::vector<std::string>* w)
        : text(s), warnings(w) {}

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

    char peek() {
        if (pos >= text.size()) fail("unexpected end of input");
        return text[pos];
    }
    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    void warn(const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    }

    Vertex add(Vertex par, std::string lab) {
        parent.push_back(par);
        label.push_back(std::move(lab));
        return static_cast<Vertex>(parent.size() - 1);
    }

    static bool label_char(char c) {
        return !std::isspace(static_cast<unsigned char>(c)) && c != '(' &&
               c != ')' && c != ',' && c != ';' && c != ':';
    }

    std::string read_label() {
        size_t start = pos;
        while (pos < text.size() && label_char(text[pos])) ++pos;
        return text.substr(start, pos - start);
    }

    void drop_suffix() {  // internal label and/or branch length
        skip_ws();
        if (pos < text.size() && label_char(text[pos])) {
            size_t at = pos;
            std::string lab = read_label();
            warn("internal label '" + lab + "' at byte " + std::to_string(at) +
                 " discarded");
        }
        skip_ws();
        if (pos < text.size() && text[pos] == ':') {
            size_t at = pos;
            ++pos;
            std::string len = read_label();
            warn("branch length '" + len + "' at byte " + std::to_string(at) +
                 " discarded");
        }
    }

    Vertex node(Vertex par) {
        skip_ws();
        if (peek() == '(') {
            ++pos;
            Vertex v = add(par, "");
            int arity = 0;
            while (true) {
                node(v);
                ++arity;
                skip_ws();
                if (peek() == ',') {
                    ++pos;
                    continue;
                }
                if (peek() == ')') {
                    ++pos;
                    break;
                }
                fail("expected ',' or ')'");
            }
            if (arity != 2) fail("non-binary vertex with " + std::to_string(arity) + " children");
            drop_suffix();
            return v;
        }
        size_t at = pos;
        std::string lab = read_label();
        if (lab.empty()) fail("expected a leaf label");
        if (lab == kRootLabel) {
            pos = at;
            fail("reserved label in input");
        }
        Vertex v = add(par, lab);
        skip_ws();
        if (pos < text.size() && text[pos] == ':') {
            ++pos;
            std::string len = read_label();
            warn("branch length '" + len + "' at byte " + std::to_string(at) +
                 " discarded");
        }
        return v;
    }

    RootedTree run() {
        Vertex rho = add(-1, kRootLabel);
        node(rho);
        skip_ws();
        if (pos >= text.size() || text[pos] != ';') fail("missing ';'");
        ++pos;
        skip_ws();
        if (pos != text.size()) fail("trailing characters after ';'");
        // duplicate-label check happens in make_tree; report with offsets here
        std::map<std::string, int> count;
        for (size_t v = 1; v < label.size(); ++v)
            if (!label[v].empty()) ++count[label[v]];
        for (auto& [lab, c] : count)
            if (c > 1) throw ParseError("duplicate leaf label '" + lab + "'", 0);
        return make_tree(parent, label);
    }
};

}  // namespace

RootedTree parse_tree(const std::string& text, std::vector<std::string>* warnings) {
    Parser p(text, warnings);
    return p.run();
}

TreeDocument parse_tree_document(const std::string& text) {
    TreeDocument doc{text, RootedTree{}, {}};
    doc.tree = parse_tree(text, &doc.warnings);
    return doc;
}

std::string write_tree(const RootedTree& t) {
    return canonical_form(t) + ";";
}

// -- graph edge-list format -----------------------------------------------------

GraphDocument parse_graph_document(const std::string& text) {
    GraphDocument doc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ParseError("graph format: " + msg + " on line " + std::to_string(lineno),
                         0);
    };
    bool have_header = false;
    std::set<std::pair<int, int>> edgeset;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank line
        if (!have_header) {
            if (tok != "graph") fail("expected 'graph <V> <E> root=<id>'");
            std::string rootspec;
            if (!(ls >> doc.declared_vertices >> doc.declared_edges >> rootspec))
                fail("malformed header");
            if (rootspec.rfind("root=", 0) != 0) fail("missing root=<id>");
            try {
                doc.root_id = std::stoi(rootspec.substr(5));
            } catch (...) {
                fail("bad root id");
            }
            have_header = true;
            continue;
        }
        if (tok == "label") {
            int id;
            std::string name;
            if (!(ls >> id >> name)) fail("malformed label line");
            if (doc.graph.labels.count(id)) fail("duplicate label for vertex " + std::to_string(id));
            doc.graph.labels[id] = name;
            continue;
        }
        int u, v;
        try {
            u = std::stoi(tok);
        } catch (...) {
            fail("expected edge or label line");
            u = 0;
        }
        if (!(ls >> v)) fail("edge line needs two vertex ids");
        if (u == v) fail("loop edge");
        if (!edgeset.insert({u, v}).second) fail("duplicate edge");
        doc.graph.edges.emplace_back(u, v);
    }
    if (!have_header) throw ParseError("graph format: empty input", 0);
    std::set<int> verts;
    for (auto& [u, v] : doc.graph.edges) {
        verts.insert(u);
        verts.insert(v);
    }
    for (auto& [id, name] : doc.graph.labels) verts.insert(id);
    verts.insert(doc.root_id);
    doc.graph.vertices.assign(verts.begin(), verts.end());
    doc.graph.root = doc.root_id;
    if (doc.declared_vertices != doc.graph.vertex_count())
        throw ParseError("graph format: header vertex count " +
                             std::to_string(doc.declared_vertices) + " != actual " +
                             std::to_string(doc.graph.vertex_count()),
                         0);
    if (doc.declared_edges != doc.graph.edge_count())
        throw ParseError("graph format: header edge count mismatch", 0);
    int rho_count = 0;
    for (auto& [id, name] : doc.graph.labels)
        if (name == kRootLabel) ++rho_count;
    if (rho_count != 1)
        throw ParseError("graph format: exactly one vertex must carry the root label", 0);
    if (doc.graph.labels.count(doc.root_id) == 0 ||
        doc.graph.labels.at(doc.root_id) != kRootLabel)
        throw ParseError("graph format: root id does not carry the root label", 0);
    if (auto viol = validate_graph(doc.graph)) {
        throw TreeError("graph invalid, property (" + viol->property + "): " +
                        viol->message);
    }
    return doc;
}

LeafLabeledGraph parse_graph(const std::string& text) {
    return parse_graph_document(text).graph;
}

std::string write_graph(const LeafLabeledGraph& g) {
    std::ostringstream out;
    out << "graph " << g.vertex_count() << " " << g.edge_count() << " root="
        << g.root << "\n";
    auto edges = g.edges;
    std::sort(edges.begin(), edges.end());
    for (auto& [u, v] : edges) out << u << " " << v << "\n";
    for (auto& [id, name] : g.labels) out << "label " << id << " " << name << "\n";
    return out.str();
}

// -- DOT ----------------------------------------------------------------------

namespace {

std::string dot_id(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::string write_dot(const RootedTree& t) {
    std::ostringstream out;
    out << "digraph tree {\n";
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
        out << "  n" << v;
        if (v == t.root)
            out << " [label=" << dot_id("rho") << ", shape=plaintext]";
        else if (t.is_leaf(v))
            out << " [label=" << dot_id(t.label[v]) << ", shape=plaintext]";
        else
            out << " [label=\"\", shape=point]";
        out << ";\n";
    }
    for (Vertex v = 0; v < t.vertex_count(); ++v)
        for (Vertex c : t.kids[v]) out << "  n" << v << " -> n" << c << ";\n";
    out << "}\n";
    return out.str();
}

std::string write_dot(const LeafLabeledGraph& g) {
    std::ostringstream out;
    std::map<int, int> indeg;
    for (auto& [u, v] : g.edges) ++indeg[v];
    out << "digraph network {\n";
    for (int v : g.vertices) {
        out << "  n" << v;
        auto it = g.labels.find(v);
        if (v == g.root)
            out << " [label=" << dot_id("rho") << ", shape=plaintext]";
        else if (it != g.labels.end())
            out << " [label=" << dot_id(it->second) << ", shape=plaintext]";
        else if (indeg[v] == 2)
            out << " [label=\"\", shape=box, style=filled, fillcolor=gray]";
        else
            out << " [label=\"\", shape=point]";
        out << ";\n";
    }
    auto edges = g.edges;
    std::sort(edges.begin(), edges.end());
    for (auto& [u, v] : edges) out << "  n" << u << " -> n" << v << ";\n";
    out << "}\n";
    return out.str();
}

std::string write_dot(const CyclicGenerator& gen) {
    std::ostringstream out;
    std::map<int, int> indeg, outdeg;
    for (auto& [u, v] : gen.edges) {
        ++indeg[v];
        ++outdeg[u];
    }
    out << "digraph generator {\n";
    for (int v : gen.vertices) {
        out << "  n" << v;
        if (v == gen.root)
            out << " [label=" << dot_id("rho") << ", shape=plaintext]";
        else if (indeg[v] == 2 && outdeg[v] == 0)
            out << " [label=\"\", shape=diamond, style=filled, fillcolor=black]";  // vertex side
        else if (indeg[v] == 2)
            out << " [label=\"\", shape=box, style=filled, fillcolor=gray]";
        else
            out << " [label=\"\", shape=point]";
        out << ";\n";
    }
    auto edges = gen.edges;
    std::sort(edges.begin(), edges.end());
    for (auto& [u, v] : edges) out << "  n" << u << " -> n" << v << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace rspr
