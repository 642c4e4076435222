#include "corolla/parametric.hpp"

namespace corolla {

Poly first_symanzik(const FeynmanGraph& g) {
    Poly psi;
    for (auto& tree : spanning_trees(g)) {
        Monomial m;
        for (int e = 0; e < g.edge_count(); ++e) {
            if (g.edge(e).external) continue;
            if (std::find(tree.begin(), tree.end(), e) != tree.end()) continue;
            m = m.times(Monomial::of(g.schwinger(e)));
        }
        psi.add_term(m, GaussRat(1));
    }
    return psi;
}

Poly second_symanzik(const FeynmanGraph& g) {
    Poly phi;
    for (const TwoForest& f : spanning_2forests(g)) {
        // tau(e) = -sum_{v in F1} eps_{ve}; +1 when e runs F1 -> F2
        std::vector<std::pair<int, int>> flow;  // (edge, tau)
        Monomial a_product;
        for (int e = 0; e < g.edge_count(); ++e) {
            if (g.edge(e).external) continue;
            if (std::find(f.edges.begin(), f.edges.end(), e) != f.edges.end()) continue;
            int tau = 0;
            for (int v = 0; v < g.vertex_count(); ++v)
                if (f.component_of[v] == 0) tau -= g.incidence(v, e);
            flow.push_back({e, tau});
            a_product = a_product.times(Monomial::of(g.schwinger(e)));
        }
        Poly square;
        for (auto& [e1, t1] : flow) {
            if (t1 == 0) continue;
            for (auto& [e2, t2] : flow) {
                if (t2 == 0) continue;
                square.add_term(Monomial::of(dot(g.momentum(e1), g.momentum(e2))),
                                GaussRat(static_cast<long>(t1 * t2)));
            }
        }
        phi += square * Poly(a_product, GaussRat(1));
    }
    return phi;
}

SymanzikPair symanzik_polynomials(const FeynmanGraph& g) {
    return {first_symanzik(g), second_symanzik(g)};
}

Poly reduced_quadric(const FeynmanGraph& g) {
    Poly q;
    for (int e = 0; e < g.edge_count(); ++e) {
        Monomial a = Monomial::of(g.schwinger(e));
        if (g.edge(e).external)
            q.add_term(Monomial::of(dot(g.momentum(e), g.momentum(e))).times(a), GaussRat(1));
        if (auto m = g.mass(e))
            q.add_term(Monomial::of(*m, 2).times(a), GaussRat(1));
    }
    return q;
}

Poly external_propagators(const FeynmanGraph& g) {
    Poly p(1);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!g.edge(e).external) continue;
        Poly factor(Monomial::of(dot(g.momentum(e), g.momentum(e))), GaussRat(1));
        if (auto m = g.mass(e)) factor.add_term(Monomial::of(*m, 2), GaussRat(1));
        p *= factor;
    }
    return p;
}

ParametricIntegrand parametric_integrand(const FeynmanGraph& g) {
    g.require_valid();
    if (!g.connected_on_internal())
        throw DisconnectedGraph("parametric_integrand: graph is disconnected");
    ParametricIntegrand out;
    Poly psi = first_symanzik(g);
    QuadricArg arg;
    arg.num = second_symanzik(g);
    arg.den = psi;
    arg.affine = reduced_quadric(g);

    Term body;
    body.coeff = Coefficient::over(Poly(1), {{psi, 2}});
    body.exponential = arg;
    out.body = Expression::from_terms({body});
    out.prefactor = Expression::from_poly(external_propagators(g));
    out.full = out.prefactor * out.body;
    return out;
}

}  // namespace corolla
