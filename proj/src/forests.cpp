#include "rspr/forests.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

namespace rspr {

AgreementForest make_forest(std::vector<std::set<std::string>> blocks) {
    AgreementForest f;
    f.blocks = std::move(blocks);
    std::sort(f.blocks.begin(), f.blocks.end(),
              [](const std::set<std::string>& a, const std::set<std::string>& b) {
                  return *a.begin() < *b.begin();
              });
    for (int i = 0; i < f.size(); ++i)
        if (f.blocks[i].count(kRootLabel)) f.rho_block = i;
    if (f.rho_block < 0) throw TreeError("make_forest: no block holds the root label");
    return f;
}

namespace {

bool is_partition_of(const AgreementForest& f, const std::set<std::string>& labels) {
    std::set<std::string> seen;
    size_t total = 0;
    for (const auto& b : f.blocks) {
        if (b.empty()) return false;
        total += b.size();
        seen.insert(b.begin(), b.end());
    }
    return total == labels.size() && seen == labels;
}

// Vertices of the minimal connecting subtree, as a bitmask-ish char vector.
std::vector<char> span_marks(const RootedTree& t, const std::set<std::string>& labels) {
    std::vector<char> mark(t.vertex_count(), 0);
    for (Vertex v : spanning_vertices(t, labels)) mark[v] = 1;
    return mark;
}

}  // namespace

bool is_agreement_forest(const RootedTree& t1, const RootedTree& t2,
                         const AgreementForest& f) {
    auto labels = all_labels(t1);
    if (labels != all_labels(t2))
        throw TreeError("is_agreement_forest: trees disagree on labels");
    if (!is_partition_of(f, labels))
        throw TreeError("is_agreement_forest: blocks do not partition the label set");

    for (const RootedTree* t : {&t1, &t2}) {
        std::vector<char> used(t->vertex_count(), 0);
        for (const auto& b : f.blocks) {
            for (Vertex v : spanning_vertices(*t, b)) {
                if (used[v]) return false;  // (P2)
                used[v] = 1;
            }
        }
    }
    for (const auto& b : f.blocks) {
        if (b.size() == 1) continue;
        if (canonical_form(restrict_to(t1, b)) != canonical_form(restrict_to(t2, b)))
            return false;  // (P1)
    }
    return true;
}

InheritanceGraph build_inheritance_graph(const RootedTree& t1,
                                         const RootedTree& t2,
                                         const AgreementForest& f) {
    InheritanceGraph g;
    g.nodes = f.size();
    std::vector<Vertex> r1(f.size()), r2(f.size());
    for (int i = 0; i < f.size(); ++i) {
        r1[i] = spanning_root(t1, f.blocks[i]);
        r2[i] = spanning_root(t2, f.blocks[i]);
    }
    for (int i = 0; i < f.size(); ++i) {
        for (int j = 0; j < f.size(); ++j) {
            if (i == j) continue;
            if (is_proper_ancestor(t1, r1[i], r1[j]) ||
                is_proper_ancestor(t2, r2[i], r2[j]))
                g.arcs.emplace_back(i, j);
        }
    }
    // cycle check
    std::vector<std::vector<int>> adj(g.nodes);
    for (auto& [i, j] : g.arcs) adj[i].push_back(j);
    std::vector<int> state(g.nodes, 0);
    std::function<bool(int)> dfs = [&](int v) {
        state[v] = 1;
        for (int w : adj[v]) {
            if (state[w] == 1) return true;
            if (state[w] == 0 && dfs(w)) return true;
        }
        state[v] = 2;
        return false;
    };
    for (int v = 0; v < g.nodes; ++v)
        if (state[v] == 0 && dfs(v)) g.has_cycle = true;
    return g;
}

bool is_acyclic_forest(const RootedTree& t1, const RootedTree& t2,
                       const AgreementForest& f) {
    if (!is_agreement_forest(t1, t2, f))
        throw TreeError("is_acyclic_forest: not an agreement forest");
    return !build_inheritance_graph(t1, t2, f).has_cycle;
}

// -- partition enumeration oracles ----------------------------------------------

namespace {

// Shared machinery for maf/maaf: enumerate partitions of the labels by
// restricted-growth assignment, pruning prefixes that already violate
// the agreement properties (both are inherited by extensions). Each
// block's spans are cached; a global occupancy vector makes the
// disjointness test O(n) per step.
struct PartitionSearch {
    const RootedTree& t1;
    const RootedTree& t2;
    bool need_acyclic;
    std::vector<std::string> labels;  // fixed order

    std::vector<std::set<std::string>> block_labels;
    std::vector<std::vector<char>> span1, span2;  // per block, per tree
    std::vector<int> occ1, occ2;                  // occupancy counts per vertex
    int best = -1;
    std::vector<std::set<std::string>> best_blocks;

    PartitionSearch(const RootedTree& a, const RootedTree& b, bool acyclic)
        : t1(a), t2(b), need_acyclic(acyclic) {
        auto ls = all_labels(a);
        labels.assign(ls.begin(), ls.end());
        occ1.assign(t1.vertex_count(), 0);
        occ2.assign(t2.vertex_count(), 0);
    }

    static void apply(std::vector<int>& occ, const std::vector<char>& span, int d) {
        for (size_t v = 0; v < span.size(); ++v)
            if (span[v]) occ[v] += d;
    }
    static bool clashes(const std::vector<int>& occ, const std::vector<char>& span) {
        for (size_t v = 0; v < span.size(); ++v)
            if (span[v] && occ[v] > 0) return true;
        return false;
    }

    // try label idx inside block b (b == size() means a fresh block);
    // recurse when the grown block stays consistent
    void attempt(size_t idx, size_t b) {
        bool fresh = b == block_labels.size();
        std::set<std::string> bl = fresh ? std::set<std::string>{} : block_labels[b];
        bl.insert(labels[idx]);
        if (bl.size() >= 2 &&
            canonical_form(restrict_to(t1, bl)) != canonical_form(restrict_to(t2, bl)))
            return;
        auto s1 = span_marks(t1, bl);
        auto s2 = span_marks(t2, bl);
        std::vector<char> old1, old2;
        if (!fresh) {
            old1 = span1[b];
            old2 = span2[b];
            apply(occ1, old1, -1);
            apply(occ2, old2, -1);
        }
        bool ok = !clashes(occ1, s1) && !clashes(occ2, s2);
        if (ok) {
            if (fresh) {
                block_labels.push_back(bl);
                span1.push_back(s1);
                span2.push_back(s2);
            } else {
                block_labels[b] = bl;
                span1[b] = s1;
                span2[b] = s2;
            }
            apply(occ1, s1, 1);
            apply(occ2, s2, 1);
            rec(idx + 1);
            apply(occ1, s1, -1);
            apply(occ2, s2, -1);
            if (fresh) {
                block_labels.pop_back();
                span1.pop_back();
                span2.pop_back();
            } else {
                block_labels[b].erase(labels[idx]);
                span1[b] = old1;
                span2[b] = old2;
            }
        }
        if (!fresh) {
            if (ok) {
                apply(occ1, span1[b], 1);
                apply(occ2, span2[b], 1);
            } else {
                apply(occ1, old1, 1);
                apply(occ2, old2, 1);
            }
        }
    }

    void finish() {
        auto f = make_forest(block_labels);
        if (need_acyclic && build_inheritance_graph(t1, t2, f).has_cycle) return;
        best = static_cast<int>(block_labels.size());
        best_blocks = block_labels;
    }

    void rec(size_t idx) {
        if (best >= 0 && static_cast<int>(block_labels.size()) >= best) return;
        if (idx == labels.size()) {
            finish();
            return;
        }
        size_t nb = block_labels.size();
        for (size_t b = 0; b <= nb; ++b) attempt(idx, b);
    }

    std::pair<AgreementForest, int> run() {
        rec(0);
        assert(best >= 1);  // the all-singletons partition is always valid
        return {make_forest(best_blocks), best - 1};
    }
};

}  // namespace

std::pair<AgreementForest, int> maf_bruteforce(const RootedTree& t1,
                                               const RootedTree& t2,
                                               int cap) {
    if (leaf_labels(t1) != leaf_labels(t2))
        throw TreeError("maf_bruteforce: trees disagree on labels");
    if (leaf_count(t1) > cap)
        throw CapExceeded("maf_bruteforce: " + std::to_string(leaf_count(t1)) +
                          " leaves exceeds cap " + std::to_string(cap));
    PartitionSearch s(t1, t2, /*acyclic=*/false);
    return s.run();
}

std::pair<AgreementForest, int> maaf_bruteforce(const RootedTree& t1,
                                                const RootedTree& t2,
                                                int cap) {
    if (leaf_labels(t1) != leaf_labels(t2))
        throw TreeError("maaf_bruteforce: trees disagree on labels");
    if (leaf_count(t1) > cap)
        throw CapExceeded("maaf_bruteforce: " + std::to_string(leaf_count(t1)) +
                          " leaves exceeds cap " + std::to_string(cap));
    PartitionSearch s(t1, t2, /*acyclic=*/true);
    return s.run();
}

// -- parsimony -------------------------------------------------------------------

namespace {

// Bottom-up state sets over the subtree below the root vertex; union
// events count. The edge to the formal root carries no character and the
// top suppression never adds a change, so this equals the unrooted score.
int fitch_below(const RootedTree& t, Vertex v,
                const std::vector<int>& leaf_state, int& changes) {
    if (t.is_leaf(v)) return leaf_state[v];
    int a = fitch_below(t, t.kids[v][0], leaf_state, changes);
    int b = fitch_below(t, t.kids[v][1], leaf_state, changes);
    if (a & b) return a & b;
    ++changes;
    return a | b;
}

}  // namespace

int fitch_score(const RootedTree& t, const BinaryCharacter& f) {
    std::vector<int> leaf_state(t.vertex_count(), 0);
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
        if (!t.is_leaf(v)) continue;
        auto it = f.value.find(t.label[v]);
        if (it == f.value.end())
            throw TreeError("fitch_score: character missing label " + t.label[v]);
        if (it->second != 0 && it->second != 1)
            throw TreeError("fitch_score: character values must be 0/1");
        leaf_state[v] = 1 << it->second;  // state set {0} -> 0b01, {1} -> 0b10
    }
    for (auto& [lab, val] : f.value)
        vertex_of_label(t, lab);  // reject labels outside the tree
    int changes = 0;
    Vertex top = t.kids[t.root][0];
    if (t.is_leaf(top)) return 0;
    fitch_below(t, top, leaf_state, changes);
    return changes;
}

int dmp2(const RootedTree& t1, const RootedTree& t2, int cap) {
    auto labels = leaf_labels(t1);
    if (labels != leaf_labels(t2)) throw TreeError("dmp2: trees disagree on labels");
    int n = static_cast<int>(labels.size());
    if (n > cap)
        throw CapExceeded("dmp2: " + std::to_string(n) + " leaves exceeds cap " +
                          std::to_string(cap));
    std::vector<std::string> order(labels.begin(), labels.end());

    // fast path: postorder with precomputed leaf positions per tree
    struct Flat {
        std::vector<int> post;      // vertices in postorder
        std::vector<int> k0, k1;    // children, -1 for leaves
        std::vector<int> leaf_bit;  // index into the character, -1 internal
    };
    auto flatten = [&](const RootedTree& t) {
        Flat fl;
        std::map<std::string, int> bit;
        for (int i = 0; i < n; ++i) bit[order[i]] = i;
        std::function<void(Vertex)> rec = [&](Vertex v) {
            for (Vertex c : t.kids[v]) rec(c);
            fl.post.push_back(v);
        };
        rec(t.kids[t.root][0]);
        fl.k0.assign(t.vertex_count(), -1);
        fl.k1.assign(t.vertex_count(), -1);
        fl.leaf_bit.assign(t.vertex_count(), -1);
        for (Vertex v = 0; v < t.vertex_count(); ++v) {
            if (t.is_leaf(v)) fl.leaf_bit[v] = bit[t.label[v]];
            if (t.kids[v].size() == 2) {
                fl.k0[v] = t.kids[v][0];
                fl.k1[v] = t.kids[v][1];
            }
        }
        return fl;
    };
    Flat f1 = flatten(t1), f2 = flatten(t2);

    auto score = [&](const Flat& fl, const RootedTree& t, uint64_t mask) {
        static thread_local std::vector<uint8_t> st;
        st.assign(t.vertex_count(), 0);
        int changes = 0;
        for (Vertex v : fl.post) {
            if (fl.leaf_bit[v] >= 0) {
                st[v] = ((mask >> fl.leaf_bit[v]) & 1) ? 2 : 1;
            } else {
                uint8_t a = st[fl.k0[v]], b = st[fl.k1[v]];
                if (a & b)
                    st[v] = a & b;
                else {
                    st[v] = a | b;
                    ++changes;
                }
            }
        }
        return changes;
    };

    int best = 0;
    if (n == 1) return 0;
    uint64_t count = 1ull << (n - 1);  // leaf 0 pinned to state 0: complements skipped
    for (uint64_t m = 0; m < count; ++m) {
        uint64_t mask = m << 1;
        int gap = std::abs(score(f1, t1, mask) - score(f2, t2, mask));
        if (gap > best) best = gap;
    }
    return best;
}

// -- TBR via unrooted agreement forests --------------------------------------------

namespace {

// Unrooted machinery is phrased on the rooted structures: the root vertex
// and its incident edge are ignored, the vertex below it is treated as a
// degree-2 point that suppression removes.

// canonical form of the unrooted restriction to `labels`: root the
// restriction at its smallest label and serialize
std::string unrooted_restriction(const RootedTree& t, const std::set<std::string>& labels) {
    // adjacency of the unrooted shape: drop the root vertex, connect its
    // child's neighbors directly
    int n = t.vertex_count();
    std::vector<std::vector<int>> adj(n);
    for (Vertex v = 0; v < n; ++v) {
        if (v == t.root) continue;
        for (Vertex c : t.kids[v]) adj[v].push_back(c);
        Vertex p = t.parent[v];
        if (p != -1 && p != t.root) adj[v].push_back(p);
    }
    // minimal Steiner subtree of `labels` in the unrooted shape
    std::set<int> tips;
    for (const auto& lab : labels) tips.insert(vertex_of_label(t, lab));
    // prune leaves (degree-1 vertices) that are not tips until fixed point
    std::vector<int> deg(n, 0);
    std::vector<char> alive(n, 1);
    alive[t.root] = 0;
    for (Vertex v = 0; v < n; ++v)
        if (alive[v])
            for (int w : adj[v])
                if (alive[w]) ++deg[v];
    std::vector<int> queue;
    for (Vertex v = 0; v < n; ++v)
        if (alive[v] && deg[v] <= 1 && !tips.count(v)) queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        if (!alive[v] || tips.count(v)) continue;
        if (deg[v] > 1) continue;
        alive[v] = 0;
        for (int w : adj[v])
            if (alive[w] && --deg[w] <= 1 && !tips.count(w)) queue.push_back(w);
    }
    // serialize rooted at the smallest tip; suppress degree-2 points
    int start = *tips.begin();
    std::function<std::string(int, int)> ser = [&](int v, int from) -> std::string {
        std::vector<int> nb;
        for (int w : adj[v])
            if (alive[w] && w != from) nb.push_back(w);
        if (nb.empty()) return t.is_leaf(v) ? t.label[v] : std::string("?");
        if (nb.size() == 1 && !tips.count(v)) return ser(nb[0], v);
        std::vector<std::string> parts;
        for (int w : nb) parts.push_back(ser(w, v));
        std::sort(parts.begin(), parts.end());
        std::string out = "(";
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) out += ',';
            out += parts[i];
        }
        out += ')';
        return out;
    };
    return t.label[start] + "|" + ser(start, -1);
}

// vertex set of the unrooted Steiner subtree (for disjointness)
std::vector<int> unrooted_span(const RootedTree& t, const std::set<std::string>& labels) {
    int n = t.vertex_count();
    std::vector<std::vector<int>> adj(n);
    for (Vertex v = 0; v < n; ++v) {
        if (v == t.root) continue;
        for (Vertex c : t.kids[v]) adj[v].push_back(c);
        Vertex p = t.parent[v];
        if (p != -1 && p != t.root) adj[v].push_back(p);
    }
    std::set<int> tips;
    for (const auto& lab : labels) tips.insert(vertex_of_label(t, lab));
    std::vector<int> deg(n, 0);
    std::vector<char> alive(n, 1);
    alive[t.root] = 0;
    for (Vertex v = 0; v < n; ++v)
        if (alive[v])
            for (int w : adj[v])
                if (alive[w]) ++deg[v];
    std::vector<int> queue;
    for (Vertex v = 0; v < n; ++v)
        if (alive[v] && deg[v] <= 1 && !tips.count(v)) queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        if (!alive[v] || tips.count(v) || deg[v] > 1) continue;
        alive[v] = 0;
        for (int w : adj[v])
            if (alive[w] && --deg[w] <= 1 && !tips.count(w)) queue.push_back(w);
    }
    // the pruning above can leave stray degree-<=1 non-tip vertices only in
    // other components; restrict to the component containing the tips
    std::vector<int> out;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{*tips.begin()};
    seen[*tips.begin()] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        out.push_back(v);
        for (int w : adj[v])
            if (alive[w] && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return out;
}

struct UnrootedSearch {
    const RootedTree& t1;
    const RootedTree& t2;
    std::vector<std::string> labels;
    std::vector<std::set<std::string>> block_labels;
    int best = -1;

    bool block_ok(const std::set<std::string>& bl) const {
        if (bl.size() >= 2 &&
            unrooted_restriction(t1, bl) != unrooted_restriction(t2, bl))
            return false;
        for (const RootedTree* t : {&t1, &t2}) {
            std::vector<char> used(t->vertex_count(), 0);
            for (int v : unrooted_span(*t, bl)) used[v] = 1;
            for (const auto& other : block_labels) {
                if (&other == &bl) continue;
                for (int v : unrooted_span(*t, other))
                    if (used[v]) return false;
            }
        }
        return true;
    }

    void rec(size_t idx) {
        if (best >= 0 && static_cast<int>(block_labels.size()) >= best) return;
        if (idx == labels.size()) {
            best = static_cast<int>(block_labels.size());
            return;
        }
        for (size_t b = 0; b < block_labels.size(); ++b) {
            block_labels[b].insert(labels[idx]);
            if (block_ok(block_labels[b])) rec(idx + 1);
            block_labels[b].erase(labels[idx]);
        }
        block_labels.push_back({labels[idx]});
        if (block_ok(block_labels.back())) rec(idx + 1);
        block_labels.pop_back();
    }
};

}  // namespace

int tbr_bruteforce(const RootedTree& t1, const RootedTree& t2, int cap) {
    auto labels = leaf_labels(t1);
    if (labels != leaf_labels(t2))
        throw TreeError("tbr_bruteforce: trees disagree on labels");
    int n = static_cast<int>(labels.size());
    if (n > cap)
        throw CapExceeded("tbr_bruteforce: " + std::to_string(n) +
                          " leaves exceeds cap " + std::to_string(cap));
    if (n <= 2) return 0;
    UnrootedSearch s{t1, t2, {labels.begin(), labels.end()}, {}, -1};
    s.rec(0);
    return s.best - 1;
}

}  // namespace rspr
