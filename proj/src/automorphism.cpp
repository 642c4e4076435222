#include "corolla/automorphism.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace corolla {

namespace {

struct PairKey {
    int a, b;  // a <= b
    friend bool operator<(PairKey x, PairKey y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); }
};

PairKey pair_of(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

/// Number of label-compatible bijections between two parallel-edge bundles.
long bundle_matchings(const FeynmanGraph& g, const std::vector<int>& from_edges,
                      const std::vector<int>& to_edges, const EdgeLabeling& from,
                      const EdgeLabeling& to, const std::vector<int>& sigma) {
    if (from_edges.size() != to_edges.size()) return 0;
    size_t n = from_edges.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long count = 0;
    do {
        bool ok = true;
        for (size_t k = 0; k < n && ok; ++k) {
            int e = from_edges[k];
            int e2 = to_edges[perm[k]];
            bool preserved = sigma[g.edge(e).tail] == g.edge(e2).tail;
            const std::string& l = from.labels[e];
            const std::string& l2 = to.labels[e2];
            ok = preserved ? (l2 == l) : (l2 == from.conj(l));
        }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

}  // namespace

long count_isomorphisms(const FeynmanGraph& g, const EdgeLabeling& from, const EdgeLabeling& to) {
    int nv = g.vertex_count();
    // external edges are fixed pointwise: labels must already agree and the
    // attachment vertices are forced fixed points
    std::vector<char> fixed(nv, 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!g.edge(e).external) continue;
        if (from.labels[e] != to.labels[e]) return 0;
        fixed[g.edge(e).tail] = 1;
    }
    std::map<PairKey, std::vector<int>> bundles;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!g.edge(e).external)
            bundles[pair_of(g.edge(e).tail, g.edge(e).head)].push_back(e);
    // degree signature per vertex (internal degree, external degree)
    auto signature = [&](int v) {
        int internal = 0, external = 0;
        for (int e : g.incident_edges(v))
            (g.edge(e).external ? external : internal)++;
        return std::pair(internal, external);
    };

    std::vector<int> sigma(nv, -1);
    std::vector<char> used(nv, 0);
    long total = 0;

    std::function<void(int)> rec = [&](int v) {
        if (v == nv) {
            long product = 1;
            for (auto& [key, from_edges] : bundles) {
                PairKey image = pair_of(sigma[key.a], sigma[key.b]);
                auto it = bundles.find(image);
                if (it == bundles.end()) {
                    product = 0;
                    break;
                }
                product *= bundle_matchings(g, from_edges, it->second, from, to, sigma);
                if (product == 0) break;
            }
            total += product;
            return;
        }
        for (int w = 0; w < nv; ++w) {
            if (used[w]) continue;
            if (fixed[v] && w != v) continue;
            if (fixed[w] && w != v) continue;
            if (signature(v) != signature(w)) continue;
            // incremental pruning: bundle sizes must match for assigned pairs
            bool ok = true;
            for (int u = 0; u < v && ok; ++u) {
                auto it = bundles.find(pair_of(u, v));
                size_t have = it == bundles.end() ? 0 : it->second.size();
                auto jt = bundles.find(pair_of(sigma[u], w));
                size_t want = jt == bundles.end() ? 0 : jt->second.size();
                ok = have == want;
            }
            if (!ok) continue;
            sigma[v] = w;
            used[w] = 1;
            rec(v + 1);
            used[w] = 0;
            sigma[v] = -1;
        }
    };
    rec(0);
    return total;
}

long symmetry_factor(const FeynmanGraph& g) {
    return symmetry_factor(g, EdgeLabeling::untyped(g));
}

long symmetry_factor(const FeynmanGraph& g, const EdgeLabeling& labels) {
    return count_isomorphisms(g, labels, labels);
}

bool labeled_isomorphic(const FeynmanGraph& g, const EdgeLabeling& a, const EdgeLabeling& b) {
    return count_isomorphisms(g, a, b) > 0;
}

SymIso symmetry_and_iso(const FeynmanGraph& g, const std::vector<EdgeLabeling>& family) {
    SymIso out;
    out.sym_graph = symmetry_factor(g);
    for (const EdgeLabeling& v : family) {
        long sym = symmetry_factor(g, v);
        long iso = 0;
        for (const EdgeLabeling& w : family)
            if (labeled_isomorphic(g, v, w)) ++iso;
        out.per_variant.push_back({sym, iso});
    }
    return out;
}

}  // namespace corolla
