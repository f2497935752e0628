#pragma once

#include <string>

#include "rspr/forests.hpp"
#include "rspr/networks.hpp"
#include "rspr/reductions.hpp"
#include "rspr/tree.hpp"

namespace rspr {

/// Parametric family meeting the kernel size bound with equality: an
/// acyclic backbone with k vertex sides, leaves attached 1/1/3 (rspr) or
/// 1/1/2 (hybridization), and the two trees read off by dropping the
/// right or left reticulation edges.
struct TightFamily {
    int k = 0;
    Mode mode = Mode::rspr;
    CyclicGenerator generator;
    LeafLabeledGraph graph;
    RootedTree s1, s2;
    std::vector<std::pair<int, int>> left_retic_edges;   // graph edges dropped for s2
    std::vector<std::pair<int, int>> right_retic_edges;  // graph edges dropped for s1
};

enum class CertificateKind { mp2_character, solver_exhaustion, none };

struct TightnessReport {
    int leaf_count = 0;
    bool irreducible = false;
    int upper_bound = -1;   // from the displaying graph
    int lower_bound = -1;   // from the certificate chain or solver exhaustion
    CertificateKind certificate_kind = CertificateKind::none;
    bool tight = false;
    std::string notes;
};

/// Build the degree-k family. k = 1 is constructed but known reducible;
/// verify_tightness reports it honestly. Throws TreeError for k < 1.
TightFamily build_tight(int k, Mode mode);

/// Character that is 0 exactly on the s1-descendants of the internal
/// vertex maximizing the parsimony gap between the two trees.
BinaryCharacter separating_character(const TightFamily& fam);

/// Checks irreducibility, the display upper bound, and a lower-bound
/// certificate (character chain first, solver exhaustion as fallback).
TightnessReport verify_tightness(const TightFamily& fam);

}  // namespace rspr
