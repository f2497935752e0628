#include "rspr/tree.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <unordered_map>

namespace rspr {

RootedTree make_tree(const std::vector<Vertex>& parent,
                     const std::vector<std::string>& labels) {
    RootedTree t;
    t.parent = parent;
    t.label = labels;
    const int n = static_cast<int>(parent.size());
    t.kids.assign(n, {});
    for (Vertex v = 0; v < n; ++v) {
        if (parent[v] < 0) {
            if (t.root >= 0) throw TreeError("make_tree: two roots");
            t.root = v;
        } else {
            t.kids[parent[v]].push_back(v);
        }
    }
    std::string why;
    if (!tree_valid(t, &why)) throw TreeError("make_tree: " + why);
    return t;
}

bool tree_valid(const RootedTree& t, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    const int n = t.vertex_count();
    if (n == 0 || t.root < 0 || t.root >= n) return fail("missing root");
    if (t.label[t.root] != kRootLabel) return fail("root not labeled with the reserved label");
    if (t.kids[t.root].size() != 1) return fail("root out-degree != 1");
    std::set<std::string> seen;
    int reached = 0;
    std::vector<Vertex> stack{t.root};
    std::vector<char> vis(n, 0);
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        if (vis[v]) return fail("cycle or converging edges");
        vis[v] = 1;
        ++reached;
        if (v != t.root) {
            if (t.kids[v].size() != 0 && t.kids[v].size() != 2)
                return fail("vertex " + std::to_string(v) + " is non-binary");
            if (t.kids[v].empty()) {
                if (t.label[v].empty()) return fail("unlabeled leaf");
                if (t.label[v] == kRootLabel) return fail("reserved label on a leaf");
                if (!seen.insert(t.label[v]).second)
                    return fail("duplicate label " + t.label[v]);
            } else if (!t.label[v].empty()) {
                return fail("labeled internal vertex");
            }
        }
        for (Vertex c : t.kids[v]) {
            if (t.parent[c] != v) return fail("parent/child tables disagree");
            stack.push_back(c);
        }
    }
    if (reached != n) return fail("disconnected vertex set");
    return true;
}

std::set<std::string> leaf_labels(const RootedTree& t) {
    std::set<std::string> out;
    for (Vertex v = 0; v < t.vertex_count(); ++v)
        if (t.is_leaf(v)) out.insert(t.label[v]);
    return out;
}

std::set<std::string> all_labels(const RootedTree& t) {
    auto out = leaf_labels(t);
    out.insert(kRootLabel);
    return out;
}

int leaf_count(const RootedTree& t) {
    int n = 0;
    for (Vertex v = 0; v < t.vertex_count(); ++v)
        if (t.is_leaf(v)) ++n;
    return n;
}

std::optional<Vertex> find_label(const RootedTree& t, const std::string& lab) {
    for (Vertex v = 0; v < t.vertex_count(); ++v)
        if (t.label[v] == lab && (t.is_leaf(v) || v == t.root)) return v;
    return std::nullopt;
}

Vertex vertex_of_label(const RootedTree& t, const std::string& lab) {
    auto v = find_label(t, lab);
    if (!v) throw TreeError("unknown label: " + lab);
    return *v;
}

const std::string& min_label_below(const RootedTree& t, Vertex v,
                                   std::vector<const std::string*>& memo) {
    if (memo.empty()) memo.assign(t.vertex_count(), nullptr);
    if (memo[v]) return *memo[v];
    const std::string* best = nullptr;
    if (t.is_leaf(v)) {
        best = &t.label[v];
    } else {
        for (Vertex c : t.kids[v]) {
            const std::string& m = min_label_below(t, c, memo);
            if (!best || m < *best) best = &m;
        }
    }
    memo[v] = best;
    return *best;
}

namespace {

void canonical_rec(const RootedTree& t, Vertex v,
                   std::vector<const std::string*>& memo, std::string& out) {
    if (t.is_leaf(v)) {
        out += t.label[v];
        return;
    }
    std::vector<Vertex> ord(t.kids[v]);
    std::sort(ord.begin(), ord.end(), [&](Vertex a, Vertex b) {
        return min_label_below(t, a, memo) < min_label_below(t, b, memo);
    });
    out += '(';
    for (size_t i = 0; i < ord.size(); ++i) {
        if (i) out += ',';
        canonical_rec(t, ord[i], memo, out);
    }
    out += ')';
}

}  // namespace

std::string canonical_form(const RootedTree& t) {
    std::vector<const std::string*> memo;
    std::string out;
    canonical_rec(t, t.kids[t.root][0], memo, out);
    return out;
}

bool is_isomorphic(const RootedTree& t1, const RootedTree& t2) {
    if (leaf_labels(t1) != leaf_labels(t2))
        throw TreeError("is_isomorphic: label sets differ");
    return canonical_form(t1) == canonical_form(t2);
}

namespace {

// hits[v] = number of given tips whose root path passes through v
std::vector<int> path_hits(const RootedTree& t, const std::vector<Vertex>& tips) {
    std::vector<int> hits(t.vertex_count(), 0);
    for (Vertex tip : tips) {
        for (Vertex v = tip; v != -1; v = t.parent[v]) ++hits[v];
    }
    return hits;
}

}  // namespace

std::vector<Vertex> spanning_vertices(const RootedTree& t,
                                      const std::set<std::string>& labels) {
    std::vector<Vertex> tips;
    for (const auto& lab : labels) tips.push_back(vertex_of_label(t, lab));
    if (tips.empty()) throw TreeError("spanning_vertices: empty label set");
    auto hits = path_hits(t, tips);
    const int k = static_cast<int>(tips.size());
    // the spanning root is the deepest vertex covering every tip
    Vertex top = t.root;
    bool moved = true;
    while (moved) {
        moved = false;
        for (Vertex c : t.kids[top]) {
            if (hits[c] == k) {
                top = c;
                moved = true;
                break;
            }
        }
    }
    std::vector<Vertex> out;
    std::vector<Vertex> stack{top};
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        out.push_back(v);
        for (Vertex c : t.kids[v])
            if (hits[c] > 0) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Vertex spanning_root(const RootedTree& t, const std::set<std::string>& labels) {
    auto span = spanning_vertices(t, labels);
    std::vector<char> in(t.vertex_count(), 0);
    for (Vertex v : span) in[v] = 1;
    for (Vertex v : span)
        if (t.parent[v] == -1 || !in[t.parent[v]]) return v;
    throw TreeError("spanning_root: empty span");
}

bool is_proper_ancestor(const RootedTree& t, Vertex anc, Vertex v) {
    Vertex p = t.parent[v];
    while (p != -1) {
        if (p == anc) return true;
        p = t.parent[p];
    }
    return false;
}

RootedTree restrict_to(const RootedTree& t, const std::set<std::string>& labels) {
    std::set<std::string> keep;
    for (const auto& lab : labels)
        if (lab != kRootLabel) keep.insert(lab);
    if (keep.empty()) throw TreeError("restrict_to: no leaf labels given");
    for (const auto& lab : keep) vertex_of_label(t, lab);  // unknown-label check

    auto span = spanning_vertices(t, keep);
    std::vector<char> in(t.vertex_count(), 0);
    for (Vertex v : span) in[v] = 1;

    // Rebuild: copy the span, suppressing vertices with a single marked
    // child, then put the root vertex on top.
    std::vector<Vertex> np;       // new parent
    std::vector<std::string> nl;  // new label
    auto add = [&](Vertex par, const std::string& lab) {
        np.push_back(par);
        nl.push_back(lab);
        return static_cast<Vertex>(np.size() - 1);
    };
    Vertex nrho = add(-1, kRootLabel);

    Vertex top = spanning_root(t, keep);
    // recursive copy with suppression
    struct Rec {
        const RootedTree& t;
        const std::vector<char>& in;
        std::vector<Vertex>& np;
        std::vector<std::string>& nl;
        Vertex copy(Vertex v, Vertex par) {
            std::vector<Vertex> mk;
            for (Vertex c : t.kids[v])
                if (in[c]) mk.push_back(c);
            if (mk.size() == 1) return copy(mk[0], par);
            np.push_back(par);
            nl.push_back(t.is_leaf(v) ? t.label[v] : std::string());
            Vertex nv = static_cast<Vertex>(np.size() - 1);
            for (Vertex c : mk) copy(c, nv);
            return nv;
        }
    } rec{t, in, np, nl};
    rec.copy(top, nrho);
    return make_tree(np, nl);
}

RootedTree remove_leaf(const RootedTree& t, const std::string& lab) {
    auto keep = leaf_labels(t);
    if (!keep.erase(lab)) throw TreeError("remove_leaf: unknown label " + lab);
    return restrict_to(t, keep);
}

// -- chains -------------------------------------------------------------------

namespace {

// next(x): the leaf whose parent is x's grandparent, when that exists.
std::map<std::string, std::string> next_map(const RootedTree& t) {
    std::map<std::string, std::string> nx;
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
        if (!t.is_leaf(v)) continue;
        Vertex p = t.parent[v];
        if (p == -1) continue;
        Vertex pp = t.parent[p];
        if (pp == -1) continue;
        for (Vertex c : t.kids[pp]) {
            if (c != p && t.is_leaf(c)) nx[t.label[v]] = t.label[c];
        }
    }
    return nx;
}

bool leaves_cherry(const RootedTree& t, const std::string& a, const std::string& b) {
    auto va = find_label(t, a), vb = find_label(t, b);
    if (!va || !vb || *va == t.root || *vb == t.root) return false;
    return t.parent[*va] == t.parent[*vb] && t.parent[*va] != -1;
}

}  // namespace

bool is_chain(const RootedTree& t, const std::vector<std::string>& seq) {
    if (seq.size() < 2) return false;
    std::set<std::string> uniq(seq.begin(), seq.end());
    if (uniq.size() != seq.size()) return false;
    std::vector<Vertex> vs;
    for (const auto& lab : seq) {
        if (lab == kRootLabel) return false;
        Vertex v = vertex_of_label(t, lab);
        if (!t.is_leaf(v)) return false;
        vs.push_back(v);
    }
    auto grand = [&](Vertex v) -> Vertex {
        Vertex p = t.parent[v];
        return p == -1 ? -1 : t.parent[p];
    };
    bool head_ok = t.parent[vs[0]] == t.parent[vs[1]] ||
                   (grand(vs[0]) != -1 && t.parent[vs[1]] == grand(vs[0]));
    if (!head_ok) return false;
    for (size_t i = 2; i < vs.size(); ++i) {
        if (grand(vs[i - 1]) == -1 || t.parent[vs[i]] != grand(vs[i - 1]))
            return false;
    }
    return true;
}

bool is_pendant_chain(const RootedTree& t, const std::vector<std::string>& seq) {
    if (!is_chain(t, seq)) return false;
    return t.parent[vertex_of_label(t, seq[0])] ==
           t.parent[vertex_of_label(t, seq[1])];
}

std::vector<CommonChain> maximal_common_chains(const RootedTree& t1,
                                               const RootedTree& t2) {
    if (leaf_labels(t1) != leaf_labels(t2))
        throw TreeError("maximal_common_chains: label sets differ");
    auto nx1 = next_map(t1);
    auto nx2 = next_map(t2);
    auto nx_both = [&](const std::string& a,
                       const std::string& b) {  // ladder step in both trees
        auto i1 = nx1.find(a);
        auto i2 = nx2.find(a);
        return i1 != nx1.end() && i2 != nx2.end() && i1->second == b &&
               i2->second == b;
    };
    auto head_ok = [&](const std::string& a, const std::string& b) {
        bool in1 = leaves_cherry(t1, a, b) || (nx1.count(a) && nx1.at(a) == b);
        bool in2 = leaves_cherry(t2, a, b) || (nx2.count(a) && nx2.at(a) == b);
        return in1 && in2;
    };

    auto labels = leaf_labels(t1);
    std::vector<std::string> labv(labels.begin(), labels.end());
    std::vector<CommonChain> out;
    std::set<std::vector<std::string>> seen;  // dedup by leaf sequence from pos 2 + head set

    for (const auto& a : labv) {
        for (const auto& b : labv) {
            if (a == b || !head_ok(a, b)) continue;
            // extend upward through the common ladder
            std::vector<std::string> chain{a, b};
            while (true) {
                auto i1 = nx1.find(chain.back());
                auto i2 = nx2.find(chain.back());
                if (i1 == nx1.end() || i2 == nx2.end() || i1->second != i2->second)
                    break;
                // a chain never revisits a leaf
                if (std::find(chain.begin(), chain.end(), i1->second) != chain.end())
                    break;
                chain.push_back(i1->second);
            }
            // bottom-extendable? some x0 with head_ok(x0, a) while (a, b) is a
            // ladder step in both trees (only then does (a,b) survive at i>=3).
            bool extendable = false;
            if (nx_both(a, b)) {
                for (const auto& x0 : labv) {
                    if (x0 != a && x0 != b && head_ok(x0, a)) {
                        extendable = true;
                        break;
                    }
                }
            }
            if (extendable) continue;
            // canonical orientation for a both-ways-valid pendant head
            bool p1 = leaves_cherry(t1, a, b);
            bool p2 = leaves_cherry(t2, a, b);
            std::vector<std::string> key(chain.begin() + 2, chain.end());
            std::vector<std::string> head{a, b};
            if (p1 && p2 && b < a) continue;  // the swapped twin is emitted instead
            std::vector<std::string> dedup_key = key;
            std::string lo = std::min(a, b), hi = std::max(a, b);
            if (p1 && p2) {
                dedup_key.push_back(lo);
                dedup_key.push_back(hi);
            } else {
                dedup_key.push_back(a);
                dedup_key.push_back(b);
            }
            if (!seen.insert(dedup_key).second) continue;
            out.push_back(CommonChain{chain, p1, p2});
        }
    }
    std::sort(out.begin(), out.end(), [](const CommonChain& x, const CommonChain& y) {
        return x.leaves < y.leaves;
    });
    return out;
}

// -- common pendant subtrees ---------------------------------------------------

namespace {

// clade label set per vertex
void clades_rec(const RootedTree& t, Vertex v,
                std::vector<std::set<std::string>>& out) {
    if (t.is_leaf(v)) {
        out[v] = {t.label[v]};
        return;
    }
    for (Vertex c : t.kids[v]) {
        clades_rec(t, c, out);
        out[v].insert(out[c].begin(), out[c].end());
    }
}

}  // namespace

std::vector<std::set<std::string>> maximal_common_pendant_subtrees(
    const RootedTree& t1, const RootedTree& t2) {
    if (leaf_labels(t1) != leaf_labels(t2))
        throw TreeError("maximal_common_pendant_subtrees: label sets differ");
    std::vector<std::set<std::string>> c1(t1.vertex_count()), c2(t2.vertex_count());
    clades_rec(t1, t1.kids[t1.root][0], c1);
    clades_rec(t2, t2.kids[t2.root][0], c2);
    std::map<std::set<std::string>, Vertex> of2;
    for (Vertex v = 0; v < t2.vertex_count(); ++v)
        if (!c2[v].empty()) of2[c2[v]] = v;

    std::vector<std::set<std::string>> found;
    for (Vertex v = 0; v < t1.vertex_count(); ++v) {
        if (c1[v].size() < 2) continue;
        auto it = of2.find(c1[v]);
        if (it == of2.end()) continue;
        if (canonical_form(restrict_to(t1, c1[v])) !=
            canonical_form(restrict_to(t2, c1[v])))
            continue;
        found.push_back(c1[v]);
    }
    // keep maximal sets only (clades are laminar, so subset test suffices)
    std::vector<std::set<std::string>> out;
    for (const auto& s : found) {
        bool covered = false;
        for (const auto& o : found) {
            if (o.size() > s.size() &&
                std::includes(o.begin(), o.end(), s.begin(), s.end())) {
                covered = true;
                break;
            }
        }
        if (!covered) out.push_back(s);
    }
    std::sort(out.begin(), out.end(),
              [](const std::set<std::string>& a, const std::set<std::string>& b) {
                  return *a.begin() < *b.begin();
              });
    return out;
}

std::vector<std::pair<std::string, std::string>> cherries(const RootedTree& t) {
    std::vector<std::pair<std::string, std::string>> out;
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
        if (t.kids[v].size() == 2 && t.is_leaf(t.kids[v][0]) &&
            t.is_leaf(t.kids[v][1])) {
            std::string a = t.label[t.kids[v][0]], b = t.label[t.kids[v][1]];
            if (b < a) std::swap(a, b);
            out.emplace_back(a, b);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace rspr
