#pragma once

#include <map>
#include <string>
#include <vector>

#include "corolla/graph.hpp"

namespace corolla {

/// Per-edge labels for typed isomorphism checks.  Empty strings mean the
/// scalar seed type.  `conjugate` lists orientation-sensitive label pairs
/// (W+ <-> W-): a direction-reversing edge map must flip them.
struct EdgeLabeling {
    std::vector<std::string> labels;
    std::map<std::string, std::string> conjugate;

    static EdgeLabeling untyped(const FeynmanGraph& g) {
        return {std::vector<std::string>(static_cast<size_t>(g.edge_count())), {}};
    }
    std::string conj(const std::string& l) const {
        auto it = conjugate.find(l);
        return it == conjugate.end() ? l : it->second;
    }
};

/// Number of isomorphisms carrying `from`-labels to `to`-labels while
/// fixing every external edge pointwise.  With from == to this is the
/// order of the automorphism group.
long count_isomorphisms(const FeynmanGraph& g, const EdgeLabeling& from, const EdgeLabeling& to);

long symmetry_factor(const FeynmanGraph& g);
long symmetry_factor(const FeynmanGraph& g, const EdgeLabeling& labels);
bool labeled_isomorphic(const FeynmanGraph& g, const EdgeLabeling& a, const EdgeLabeling& b);

/// sym of the seed graph plus per-variant (sym, iso) pairs, where iso(v)
/// counts family members isomorphic to v (v itself included).
struct SymIso {
    long sym_graph;
    std::vector<std::pair<long, long>> per_variant;
};
SymIso symmetry_and_iso(const FeynmanGraph& g, const std::vector<EdgeLabeling>& family);

}  // namespace corolla
