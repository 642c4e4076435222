#pragma once

#include <vector>

#include "corolla/graph.hpp"

namespace corolla {

struct DisconnectedGraph : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Simple cycle with a chosen traversal orientation: vertices[k] is left
/// along edges[k].  orientation(v, e) is the epsilon^C entry: +1 when the
/// traversal enters v through e, -1 when it leaves.
struct Cycle {
    std::vector<int> edges;
    std::vector<int> vertices;
    int orientation(int v, int e) const;
    bool contains_vertex(int v) const;
    bool contains_edge(int e) const;
};

/// Spanning 2-forest: its edges plus the vertex bipartition.  Component 0
/// (F1) contains the smallest vertex id.
struct TwoForest {
    std::vector<int> edges;
    std::vector<int> component_of;  // per vertex: 0 or 1
};

/// Spanning subgraph in which every vertex has factor-valence exactly 2;
/// external edges count.  Components are cycles and external-to-external
/// paths.
struct TwoFactor {
    std::vector<int> edges;
    std::vector<std::vector<int>> cycles;
    std::vector<std::vector<int>> paths;
};

std::vector<std::vector<int>> spanning_trees(const FeynmanGraph& g);
std::vector<TwoForest> spanning_2forests(const FeynmanGraph& g);
std::vector<Cycle> all_cycles(const FeynmanGraph& g);
std::vector<Cycle> cycle_basis(const FeynmanGraph& g);
std::vector<std::vector<Cycle>> disjoint_cycle_tuples(const FeynmanGraph& g, int i);
std::vector<TwoFactor> two_factors(const FeynmanGraph& g);

int first_betti_number(const FeynmanGraph& g);

}  // namespace corolla
