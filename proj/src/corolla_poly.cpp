#include "corolla/corolla_poly.hpp"

#include <algorithm>

namespace corolla {

void CorollaPolynomial::add(int ghost_degree, CorollaMonomial m, Expression coeff) {
    if (coeff.is_zero()) return;
    std::sort(m.begin(), m.end());
    Key key{ghost_degree, std::move(m)};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), std::move(coeff));
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CorollaPolynomial& CorollaPolynomial::operator+=(const CorollaPolynomial& o) {
    for (auto& [key, coeff] : o.terms_) add(key.first, key.second, coeff);
    return *this;
}

CorollaPolynomial CorollaPolynomial::scaled(const Expression& factor) const {
    CorollaPolynomial out;
    for (auto& [key, coeff] : terms_) out.add(key.first, key.second, coeff * factor);
    return out;
}

CorollaPolynomial CorollaPolynomial::scaled(const GaussRat& factor) const {
    CorollaPolynomial out;
    for (auto& [key, coeff] : terms_) out.add(key.first, key.second, coeff.scaled(factor));
    return out;
}

CorollaPolynomial operator*(const CorollaPolynomial& x, const CorollaPolynomial& y) {
    CorollaPolynomial out;
    for (auto& [kx, cx] : x.terms()) {
        for (auto& [ky, cy] : y.terms()) {
            CorollaMonomial m = kx.second;
            m.insert(m.end(), ky.second.begin(), ky.second.end());
            out.add(kx.first + ky.first, std::move(m), cx * cy);
        }
    }
    return out;
}

CorollaPolynomial CorollaPolynomial::unit(int ghost_degree) {
    CorollaPolynomial p;
    p.add(ghost_degree, {}, Expression::one());
    return p;
}

CorollaPolynomial vertex_polynomial(const FeynmanGraph& g, int v) {
    CorollaPolynomial p;
    for (HalfEdge h : g.half_edges_at(v)) {
        p.add(0, {{HalfEdgeVar::Kind::b, h}, {HalfEdgeVar::Kind::a_plus, h}}, Expression::one());
        p.add(0, {{HalfEdgeVar::Kind::b, h}, {HalfEdgeVar::Kind::a_minus, h}}, Expression::one());
    }
    return p;
}

CorollaPolynomial ghost_cycle_polynomial(const FeynmanGraph& g, const Cycle& c) {
    CorollaPolynomial p;
    for (HalfEdgeVar::Kind k : {HalfEdgeVar::Kind::a_plus, HalfEdgeVar::Kind::a_minus}) {
        CorollaMonomial m;
        for (int v : c.vertices) {
            // the unique half-edge at v not running inside the cycle
            HalfEdge out{-1, -1};
            for (int e : g.incident_edges(v))
                if (!c.contains_edge(e)) out = {v, e};
            m.push_back({k, out});
        }
        p.add(1, std::move(m), Expression::one());
    }
    return p;
}

CorollaPolynomial corolla_summand(const FeynmanGraph& g, int i) {
    g.require_valid();
    CorollaPolynomial out;
    if (i == 0) {
        CorollaPolynomial acc = CorollaPolynomial::unit();
        for (int v = 0; v < g.vertex_count(); ++v) acc = acc * vertex_polynomial(g, v);
        return acc;
    }
    for (auto& tuple : disjoint_cycle_tuples(g, i)) {
        CorollaPolynomial acc = CorollaPolynomial::unit();
        std::vector<char> covered(g.vertex_count(), 0);
        for (const Cycle& c : tuple) {
            acc = acc * ghost_cycle_polynomial(g, c);
            for (int v : c.vertices) covered[v] = 1;
        }
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!covered[v]) acc = acc * vertex_polynomial(g, v);
        out += acc;  // ghost degree i carried by the cycle factors
    }
    return out;
}

CorollaPolynomial corolla(const FeynmanGraph& g) {
    CorollaPolynomial out;
    int loops = first_betti_number(g);
    for (int i = 0; i <= loops; ++i) {
        GaussRat sign(i % 2 == 0 ? 1 : -1);
        out += corolla_summand(g, i).scaled(sign);
    }
    return out;
}

Symbol default_color_token(const FeynmanGraph& g) {
    return SymbolTable::instance().symbol("color(Gamma)", "\\operatorname{color}(\\Gamma)");
}

CorollaPolynomial corolla_qcd(const FeynmanGraph& g, Symbol color_token) {
    // i-power counted over internal edges; the paper's worked J-factor
    // example fixes this reading (see the electroweak module tests).
    GaussRat phase = GaussRat::i_pow(g.internal_edge_count());
    Poly couplings = Poly(Monomial::of(sym("gs"), static_cast<unsigned>(g.vertex_count())),
                          GaussRat(1));
    Term t;
    t.coeff = Coefficient(couplings.scaled(phase));
    t.tensors.push_back(TensorAtom::structure(color_token));
    Expression prefactor = Expression::from_terms({t});
    return corolla(g).scaled(prefactor);
}

DifferentialOperator corolla_differential(const FeynmanGraph& g, const CorollaPolynomial& c) {
    DifferentialOperator op;
    for (auto& [key, coeff] : c.terms()) {
        OperatorSummand s;
        s.ghost_degree = key.first;
        s.prefactor = coeff;
        GaussRat sign(1);
        std::vector<std::pair<Poly, unsigned>> dens;
        for (const HalfEdgeVar& var : key.second) {
            if (var.kind == HalfEdgeVar::Kind::b) {
                HalfEdge succ = g.successor(var.h);
                HalfEdge pred = g.predecessor(var.h);
                s.metrics.push_back(
                    TensorAtom::metric(g.lorentz(succ.edge), g.lorentz(pred.edge)));
                continue;
            }
            int k = var.kind == HalfEdgeVar::Kind::a_plus ? +1 : -1;
            HalfEdge hk = k > 0 ? g.successor(var.h) : g.predecessor(var.h);
            int eps = g.incidence(hk.vertex, hk.edge);
            sign *= GaussRat(static_cast<long>(-k * eps));
            sign *= GaussRat(1, 2);
            dens.push_back({Poly(g.schwinger(hk.edge)), 1});
            s.derivatives.push_back({g.momentum(hk.edge), g.lorentz(var.h.edge)});
        }
        s.prefactor = s.prefactor * Expression::from_coefficient(
                                        Coefficient::over(Poly(sign), std::move(dens)));
        op.summands.push_back(std::move(s));
    }
    return op;
}

namespace {

Expression apply_summand(const OperatorSummand& s, const Expression& target) {
    Expression e = target;
    for (auto it = s.derivatives.rbegin(); it != s.derivatives.rend(); ++it)
        e = e.differentiate(it->first, it->second);
    Expression metrics = Expression::one();
    if (!s.metrics.empty()) {
        Term t;
        t.coeff = Coefficient(1);
        t.tensors = s.metrics;
        metrics = Expression::from_terms({t});
    }
    return s.prefactor * metrics * e;
}

}  // namespace

AppliedDifferential apply_differential(const FeynmanGraph& g, const DifferentialOperator& d,
                                       const Routing& routing) {
    ParametricIntegrand I = parametric_integrand(g);
    Expression on_full, on_body;
    for (const OperatorSummand& s : d.summands) {
        on_full += apply_summand(s, I.full);
        on_body += apply_summand(s, I.body);
    }
    AppliedDifferential out;
    out.full = on_full.contract_indices().substitute_momenta(routing);
    Expression body_part =
        (I.prefactor * on_body).contract_indices().substitute_momenta(routing);
    out.p_remainder = out.full - body_part;

    Expression body_sub = I.body.substitute_momenta(routing);
    Expression applied_body_sub = on_body.contract_indices().substitute_momenta(routing);
    auto gauge = applied_body_sub.try_divide(body_sub);
    if (!gauge)
        throw MalformedExpression("gauge factor: exponential does not divide out exactly");
    out.gauge_factor = std::move(*gauge);
    return out;
}

std::pair<Expression, Expression> laurent_res_reg(const Expression& e,
                                                  const std::vector<Symbol>& edge_symbols) {
    return {e.residue(edge_symbols), e.regular_part_at_zero(edge_symbols)};
}

Expression schwinger_res_reg(const FeynmanGraph& g, const Expression& e,
                             const std::vector<int>& shrink_edges) {
    for (int s : shrink_edges)
        if (g.edge(s).external)
            throw MalformedExpression("shrink set must consist of internal edges");
    std::vector<Symbol> res_syms;
    for (int s : shrink_edges) res_syms.push_back(g.schwinger(s));
    Expression r = e.residue(res_syms);
    std::vector<Symbol> reg_syms;
    for (int ed = 0; ed < g.edge_count(); ++ed)
        if (std::find(shrink_edges.begin(), shrink_edges.end(), ed) == shrink_edges.end())
            reg_syms.push_back(g.schwinger(ed));
    return r.regular_part_at_zero(reg_syms);
}

}  // namespace corolla
