#pragma once

#include <random>
#include <string>

#include "corolla/graph.hpp"

namespace corolla::testing {

/// One-loop self-energy graph: vertices a, b joined by the parallel edges
/// 1 and 2, externals 3 at a and 4 at b.  Edge 1 runs b -> a: with the
/// rotations below this orientation reproduces the reference operator
/// table sign for sign.
inline const char* kOneLoopText = R"(
v a
v b
e 1 b a
e 2 a b
x 3 a
x 4 b
rot a 3 2 1
rot b 4 1 2
mass 1 m1
mass 2 m2
mass 3 m3
mass 4 m4
)";

inline const char* kOneLoopMasslessText = R"(
v a
v b
e 1 b a
e 2 a b
x 3 a
x 4 b
rot a 3 2 1
rot b 4 1 2
)";

/// Triangle: 3 vertices, internal cycle {1,2,3}, one external per vertex.
inline const char* kTriangleText = R"(
v u
v v
v w
e 1 u v
e 2 v w
e 3 w u
x 4 u
x 5 v
x 6 w
)";

/// K4 as a closed 3-regular graph (no externals).
inline const char* kK4Text = R"(
v a
v b
v c
v d
e 1 a b
e 2 a c
e 3 a d
e 4 b c
e 5 b d
e 6 c d
)";

/// Two triangles joined by a bridge, externals filling to 3-regularity.
inline const char* kDumbbellText = R"(
v a
v b
v c
v d
v e
v f
e 1 a b
e 2 b c
e 3 c a
e 4 c d
e 5 d e
e 6 e f
e 7 f d
x 8 a
x 9 b
x 10 e
x 11 f
)";

inline FeynmanGraph one_loop() { return FeynmanGraph::parse(kOneLoopText); }
inline FeynmanGraph one_loop_massless() { return FeynmanGraph::parse(kOneLoopMasslessText); }
inline FeynmanGraph triangle() { return FeynmanGraph::parse(kTriangleText); }
inline FeynmanGraph k4() { return FeynmanGraph::parse(kK4Text); }
inline FeynmanGraph dumbbell() { return FeynmanGraph::parse(kDumbbellText); }

/// Random valid 3-regular graph with at most `max_internal` internal
/// edges: random stub pairing with tadpole rejection, externals filling
/// the remaining valence.
inline FeynmanGraph random_graph(std::mt19937& rng, int max_internal = 8) {
    for (;;) {
        FeynmanGraph g;
        std::uniform_int_distribution<int> nv_dist(1, 3);
        int nv = 2 * nv_dist(rng);  // even keeps stub parity flexible
        for (int v = 0; v < nv; ++v) g.add_vertex("v" + std::to_string(v));
        std::vector<int> capacity(nv, 3);
        int edge_id = 1;
        int internal = 0;
        std::uniform_int_distribution<int> vdist(0, nv - 1);
        std::uniform_int_distribution<int> coin(0, 3);
        int attempts = 12 * nv;
        while (attempts-- > 0 && internal < max_internal) {
            int a = vdist(rng), b = vdist(rng);
            if (a == b || capacity[a] == 0 || capacity[b] == 0) continue;
            if (coin(rng) == 0) continue;  // leave room for externals
            g.add_internal_edge(std::to_string(edge_id++), a, b);
            --capacity[a];
            --capacity[b];
            ++internal;
        }
        for (int v = 0; v < nv; ++v)
            while (capacity[v]-- > 0) g.add_external_edge(std::to_string(edge_id++), v);
        g.finalize_rotations();
        if (!g.validate().empty()) continue;
        if (!g.connected_on_internal()) continue;
        if (g.internal_edge_count() > max_internal || g.internal_edge_count() == 0) continue;
        return g;
    }
}

}  // namespace corolla::testing
