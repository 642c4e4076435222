#include "corolla/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace corolla {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

std::vector<int> internal_edges(const FeynmanGraph& g) {
    std::vector<int> out;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!g.edge(e).external) out.push_back(e);
    return out;
}

/// All acyclic internal-edge subsets with exactly `target_components`
/// connected components over the full vertex set.
void forests_rec(const FeynmanGraph& g, const std::vector<int>& edges, size_t next, Dsu dsu,
                 int components, int target, std::vector<int>& chosen,
                 std::vector<std::vector<int>>& out) {
    if (components == target) {
        out.push_back(chosen);
        return;  // any further edge would drop below the target
    }
    if (next == edges.size()) return;
    // Prune: even taking every remaining edge cannot reach the target.
    if (components - static_cast<int>(edges.size() - next) > target) return;
    for (size_t i = next; i < edges.size(); ++i) {
        int e = edges[i];
        Dsu d = dsu;
        if (!d.unite(g.edge(e).tail, g.edge(e).head)) continue;  // would close a cycle
        chosen.push_back(e);
        forests_rec(g, edges, i + 1, d, components - 1, target, chosen, out);
        chosen.pop_back();
    }
}

std::vector<std::vector<int>> spanning_forests(const FeynmanGraph& g, int components) {
    const auto edges = internal_edges(g);
    std::vector<std::vector<int>> out;
    std::vector<int> chosen;
    forests_rec(g, edges, 0, Dsu(g.vertex_count()), g.vertex_count(), components, chosen, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

int Cycle::orientation(int v, int e) const {
    for (size_t k = 0; k < edges.size(); ++k) {
        if (edges[k] != e) continue;
        int from = vertices[k];
        int to = vertices[(k + 1) % vertices.size()];
        if (v == to) return +1;
        if (v == from) return -1;
    }
    return 0;
}

bool Cycle::contains_vertex(int v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

bool Cycle::contains_edge(int e) const {
    return std::find(edges.begin(), edges.end(), e) != edges.end();
}

int first_betti_number(const FeynmanGraph& g) {
    return g.internal_edge_count() - g.vertex_count() + 1;
}

std::vector<std::vector<int>> spanning_trees(const FeynmanGraph& g) {
    if (!g.connected_on_internal()) throw DisconnectedGraph("spanning_trees: graph is disconnected");
    return spanning_forests(g, 1);
}

std::vector<TwoForest> spanning_2forests(const FeynmanGraph& g) {
    if (!g.connected_on_internal())
        throw DisconnectedGraph("spanning_2forests: graph is disconnected");
    std::vector<TwoForest> out;
    for (auto& edges : spanning_forests(g, 2)) {
        Dsu dsu(g.vertex_count());
        for (int e : edges) dsu.unite(g.edge(e).tail, g.edge(e).head);
        TwoForest f;
        f.edges = edges;
        f.component_of.assign(g.vertex_count(), 1);
        int f1_root = dsu.find(0);  // component of the smallest vertex id is F1
        for (int v = 0; v < g.vertex_count(); ++v)
            if (dsu.find(v) == f1_root) f.component_of[v] = 0;
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

/// Canonical representative among all rotations and the two directions of
/// an edge walk: the lexicographically smallest edge sequence.  The walk
/// convention is edges[k]: vertices[k] -> vertices[k+1 mod n].
Cycle canonical_cycle(const std::vector<int>& edges, const std::vector<int>& vertices) {
    size_t n = edges.size();
    Cycle best;
    auto consider = [&](const std::vector<int>& es, const std::vector<int>& vs) {
        for (size_t r = 0; r < n; ++r) {
            std::vector<int> e2(n), v2(n);
            for (size_t k = 0; k < n; ++k) {
                e2[k] = es[(r + k) % n];
                v2[k] = vs[(r + k) % n];
            }
            if (best.edges.empty() || e2 < best.edges) {
                best.edges = std::move(e2);
                best.vertices = std::move(v2);
            }
        }
    };
    consider(edges, vertices);
    std::vector<int> re(n), rv(n);
    for (size_t k = 0; k < n; ++k) {
        re[k] = edges[n - 1 - k];
        rv[k] = vertices[(n - k) % n];
    }
    consider(re, rv);
    return best;
}

}  // namespace

std::vector<Cycle> all_cycles(const FeynmanGraph& g) {
    // Depth-first walks anchored at each edge; a cycle is recorded when the
    // walk returns to the anchor vertex.  Deduplicate by edge set.
    std::vector<Cycle> out;
    std::set<std::vector<int>> seen;
    const auto internals = internal_edges(g);
    for (int anchor : internals) {
        int start = g.edge(anchor).tail;
        // walk: anchor edge first, only edges with id > anchor may follow
        std::vector<int> edge_walk{anchor};
        std::vector<int> vertex_walk{start};
        std::vector<char> used_vertex(g.vertex_count(), 0);
        used_vertex[start] = 1;
        int current = g.edge(anchor).head;

        std::function<void(int)> dfs = [&](int v) {
            if (v == start) {
                std::vector<int> key = edge_walk;
                std::sort(key.begin(), key.end());
                if (seen.insert(key).second) {
                    Cycle c;
                    c.edges = edge_walk;
                    c.vertices = vertex_walk;
                    out.push_back(c);
                }
                return;
            }
            if (used_vertex[v]) return;
            used_vertex[v] = 1;
            vertex_walk.push_back(v);
            for (int e : internals) {
                if (e <= anchor || !g.incident(v, e)) continue;
                if (std::find(edge_walk.begin(), edge_walk.end(), e) != edge_walk.end()) continue;
                edge_walk.push_back(e);
                dfs(g.other_end(e, v));
                edge_walk.pop_back();
            }
            vertex_walk.pop_back();
            used_vertex[v] = 0;
        };
        dfs(current);
    }
    for (auto& c : out) c = canonical_cycle(c.edges, c.vertices);
    std::sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
        auto ka = a.edges, kb = b.edges;
        std::sort(ka.begin(), ka.end());
        std::sort(kb.begin(), kb.end());
        return ka < kb;
    });
    return out;
}

std::vector<Cycle> cycle_basis(const FeynmanGraph& g) {
    if (!g.connected_on_internal()) throw DisconnectedGraph("cycle_basis: graph is disconnected");
    auto trees = spanning_trees(g);
    const std::vector<int>& tree = trees.front();
    std::vector<Cycle> out;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.edge(e).external) continue;
        if (std::find(tree.begin(), tree.end(), e) != tree.end()) continue;
        int tail = g.edge(e).tail, head = g.edge(e).head;
        // BFS from tail over tree edges; parents point back toward tail.
        std::vector<int> parent_vertex(g.vertex_count(), -1), parent_edge(g.vertex_count(), -1);
        std::vector<char> seen(g.vertex_count(), 0);
        std::vector<int> queue{tail};
        seen[tail] = 1;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int te : tree) {
                if (!g.incident(v, te)) continue;
                int w = g.other_end(te, v);
                if (seen[w]) continue;
                seen[w] = 1;
                parent_vertex[w] = v;
                parent_edge[w] = te;
                queue.push_back(w);
            }
        }
        // traversal: tail --e--> head --tree--> back to tail
        std::vector<int> edge_walk{e};
        std::vector<int> vertex_walk{tail};
        for (int cur = head; cur != tail; cur = parent_vertex[cur]) {
            vertex_walk.push_back(cur);
            edge_walk.push_back(parent_edge[cur]);
        }
        out.push_back(canonical_cycle(edge_walk, vertex_walk));
    }
    return out;
}

std::vector<std::vector<Cycle>> disjoint_cycle_tuples(const FeynmanGraph& g, int i) {
    auto cycles = all_cycles(g);
    std::vector<std::vector<Cycle>> out;
    if (i <= 0) return out;
    std::vector<int> chosen;
    std::function<void(size_t)> rec = [&](size_t next) {
        if (static_cast<int>(chosen.size()) == i) {
            std::vector<Cycle> tuple;
            for (int k : chosen) tuple.push_back(cycles[k]);
            out.push_back(std::move(tuple));
            return;
        }
        for (size_t k = next; k < cycles.size(); ++k) {
            bool disjoint = true;
            for (int c : chosen)
                for (int v : cycles[c].vertices)
                    if (cycles[k].contains_vertex(v)) disjoint = false;
            if (!disjoint) continue;
            chosen.push_back(static_cast<int>(k));
            rec(k + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<TwoFactor> two_factors(const FeynmanGraph& g) {
    // Backtracking over all edges (external ones included), requiring
    // factor-valence exactly 2 at every vertex.
    std::vector<TwoFactor> out;
    int ne = g.edge_count();
    std::vector<int> degree(g.vertex_count(), 0);
    std::vector<int> remaining(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int e = 0; e < ne; ++e)
            if (g.incident(v, e)) ++remaining[v];
    std::vector<char> take(ne, 0);

    std::function<void(int)> rec = [&](int e) {
        if (e == ne) {
            for (int v = 0; v < g.vertex_count(); ++v)
                if (degree[v] != 2) return;
            TwoFactor f;
            for (int k = 0; k < ne; ++k)
                if (take[k]) f.edges.push_back(k);
            // connected components over shared vertices; a component with
            // an external edge is an external-to-external path, the rest
            // are cycles
            std::set<int> unused(f.edges.begin(), f.edges.end());
            while (!unused.empty()) {
                std::vector<int> comp{*unused.begin()};
                unused.erase(unused.begin());
                for (bool grew = true; grew;) {
                    grew = false;
                    for (auto it = unused.begin(); it != unused.end(); ++it) {
                        bool touches = false;
                        for (int e2 : comp)
                            for (int v : g.endpoints(e2))
                                if (g.incident(v, *it)) touches = true;
                        if (!touches) continue;
                        comp.push_back(*it);
                        unused.erase(it);
                        grew = true;
                        break;
                    }
                }
                bool has_external = std::any_of(comp.begin(), comp.end(), [&](int e2) {
                    return g.edge(e2).external;
                });
                (has_external ? f.paths : f.cycles).push_back(std::move(comp));
            }
            out.push_back(std::move(f));
            return;
        }
        for (int pass = 0; pass < 2; ++pass) {
            bool include = pass == 0;
            bool ok = true;
            auto ends = g.endpoints(e);
            for (int v : ends) {
                int d = degree[v] + (include ? 1 : 0);
                int slack = remaining[v] - 1;
                if (d > 2 || d + slack < 2) ok = false;
            }
            if (!ok) continue;
            take[e] = include;
            for (int v : ends) {
                if (include) ++degree[v];
                --remaining[v];
            }
            rec(e + 1);
            for (int v : ends) {
                if (include) --degree[v];
                ++remaining[v];
            }
            take[e] = 0;
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(),
              [](const TwoFactor& a, const TwoFactor& b) { return a.edges < b.edges; });
    return out;
}

}  // namespace corolla
