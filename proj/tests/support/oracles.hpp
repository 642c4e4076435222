#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "corolla/expression.hpp"
#include "corolla/graph.hpp"
#include "corolla/numeric.hpp"

namespace corolla::testing {

// ---------------------------------------------------------------------
// Brute-force subset oracles for the spanning-structure enumerators.
// These deliberately know nothing about the production algorithms: they
// filter the full powerset.
// ---------------------------------------------------------------------

inline std::vector<int> internal_edge_ids(const FeynmanGraph& g) {
    std::vector<int> out;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!g.edge(e).external) out.push_back(e);
    return out;
}

/// Component count over all vertices induced by an internal edge subset.
inline int component_count(const FeynmanGraph& g, const std::vector<int>& edges) {
    std::vector<int> parent(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) parent[v] = v;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e : edges) {
        int a = find(g.edge(e).tail), b = find(g.edge(e).head);
        if (a != b) parent[a] = b;
    }
    std::set<int> roots;
    for (int v = 0; v < g.vertex_count(); ++v) roots.insert(find(v));
    return static_cast<int>(roots.size());
}

inline bool subset_acyclic(const FeynmanGraph& g, const std::vector<int>& edges) {
    std::vector<int> parent(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) parent[v] = v;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e : edges) {
        int a = find(g.edge(e).tail), b = find(g.edge(e).head);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

inline std::vector<std::vector<int>> brute_force_spanning_trees(const FeynmanGraph& g) {
    auto internals = internal_edge_ids(g);
    std::vector<std::vector<int>> out;
    for (size_t mask = 0; mask < (size_t{1} << internals.size()); ++mask) {
        std::vector<int> subset;
        for (size_t k = 0; k < internals.size(); ++k)
            if (mask >> k & 1) subset.push_back(internals[k]);
        if (static_cast<int>(subset.size()) != g.vertex_count() - 1) continue;
        if (!subset_acyclic(g, subset)) continue;
        if (component_count(g, subset) != 1) continue;
        out.push_back(subset);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::vector<int>> brute_force_2forests(const FeynmanGraph& g) {
    auto internals = internal_edge_ids(g);
    std::vector<std::vector<int>> out;
    for (size_t mask = 0; mask < (size_t{1} << internals.size()); ++mask) {
        std::vector<int> subset;
        for (size_t k = 0; k < internals.size(); ++k)
            if (mask >> k & 1) subset.push_back(internals[k]);
        if (!subset_acyclic(g, subset)) continue;
        if (component_count(g, subset) != 2) continue;
        out.push_back(subset);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// 2-factors over all edges: factor-valence exactly 2 everywhere.
inline std::vector<std::vector<int>> brute_force_two_factors(const FeynmanGraph& g) {
    std::vector<std::vector<int>> out;
    int ne = g.edge_count();
    for (size_t mask = 0; mask < (size_t{1} << ne); ++mask) {
        std::vector<int> degree(g.vertex_count(), 0);
        std::vector<int> subset;
        for (int e = 0; e < ne; ++e) {
            if (!(mask >> e & 1)) continue;
            subset.push_back(e);
            for (int v : g.endpoints(e)) ++degree[v];
        }
        if (std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; }))
            out.push_back(subset);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Simple cycles as edge sets: connected 2-regular internal subgraphs.
inline std::vector<std::vector<int>> brute_force_cycles(const FeynmanGraph& g) {
    auto internals = internal_edge_ids(g);
    std::vector<std::vector<int>> out;
    for (size_t mask = 1; mask < (size_t{1} << internals.size()); ++mask) {
        std::vector<int> subset;
        std::vector<int> degree(g.vertex_count(), 0);
        for (size_t k = 0; k < internals.size(); ++k) {
            if (!(mask >> k & 1)) continue;
            subset.push_back(internals[k]);
            ++degree[g.edge(internals[k]).tail];
            ++degree[g.edge(internals[k]).head];
        }
        bool two_regular = true;
        int covered = 0;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (degree[v] == 0) continue;
            ++covered;
            if (degree[v] != 2) two_regular = false;
        }
        if (!two_regular) continue;
        // connectivity over the covered vertices
        int edges_count = static_cast<int>(subset.size());
        if (edges_count != covered) continue;  // cycle rank 1 requires |E| = |V|
        if (component_count(g, subset) != g.vertex_count() - covered + 1) continue;
        out.push_back(subset);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------
// Numeric oracles.
// ---------------------------------------------------------------------

inline std::complex<double> random_value(std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(0.3, 1.7);
    return {dist(rng), 0.0};
}

/// Random evaluation point for an expression: positive reals for scalar
/// symbols and random 4-vectors for the given slots.
inline NumericContext random_context(const Expression& e, const std::vector<Slot>& slots,
                                     std::mt19937& rng) {
    NumericContext ctx;
    std::set<Symbol> symbols;
    auto scan_poly = [&](const Poly& p) {
        for (Symbol s : p.symbols()) symbols.insert(s);
    };
    for (const Term& t : e.terms()) {
        scan_poly(t.coeff.num);
        for (auto& [b, k] : t.coeff.den) scan_poly(b);
        if (t.exponential) {
            scan_poly(t.exponential->num);
            scan_poly(t.exponential->den);
            scan_poly(t.exponential->affine);
        }
    }
    std::uniform_real_distribution<double> vec_dist(-1.0, 1.0);
    for (Slot s : slots) {
        std::array<std::complex<double>, 4> v;
        for (auto& c : v) c = vec_dist(rng);
        ctx.slot_vectors[s] = v;
    }
    for (Symbol s : symbols)
        if (!SymbolTable::instance().dot_slots(s)) ctx.symbol_values[s] = random_value(rng);
    return ctx;
}

/// Finite-difference partial derivative in one vector component.
inline std::complex<double> fd_derivative(const Expression& e, Slot s, int component,
                                          NumericContext ctx, double h = 1e-6) {
    auto& v = ctx.slot_vectors.at(s);
    auto base = v[component];
    v[component] = base + h;
    auto up = eval(e, ctx);
    v[component] = base - h;
    auto down = eval(e, ctx);
    v[component] = base;
    return (up - down) / (2 * h);
}

/// Laurent coefficient of f at x = 0 via a numeric Cauchy contour
/// integral; independent of the algebraic series expansion.
inline std::complex<double> contour_laurent_coefficient(
    const std::function<std::complex<double>(std::complex<double>)>& f, int order,
    double radius = 0.35, int samples = 256) {
    std::complex<double> sum = 0;
    for (int k = 0; k < samples; ++k) {
        double theta = 2.0 * M_PI * k / samples;
        std::complex<double> x = std::polar(radius, theta);
        sum += f(x) * std::pow(x, -order);
    }
    return sum / static_cast<double>(samples);
}

}  // namespace corolla::testing
