#include <doctest.h>

#include <random>

#include "corolla/expression.hpp"
#include "corolla/numeric.hpp"
#include "support/oracles.hpp"

using namespace corolla;
using namespace corolla::testing;

namespace {

/// exp(-(xi1-xi2)^2 A1 A2 / (A1+A2) - q) with q = xi3^2 A3.
Expression one_loop_like_exponential() {
    Symbol a1 = sym("A1"), a2 = sym("A2"), a3 = sym("A3");
    Slot x1 = slot("xi1"), x2 = slot("xi2"), x3 = slot("xi3");
    QuadricArg q;
    Poly sq = Poly(dot(x1, x1)) - Poly(dot(x1, x2)).scaled(GaussRat(2)) + Poly(dot(x2, x2));
    q.num = sq * Poly(a1) * Poly(a2);
    q.den = Poly(a1) + Poly(a2);
    q.affine = Poly(dot(x3, x3)) * Poly(a3);
    Term t;
    t.coeff = Coefficient(1);
    t.exponential = q;
    return Expression::from_terms({t});
}

}  // namespace

TEST_CASE("derivative of a dot is the other momentum") {
    Slot x1 = slot("xi1"), x2 = slot("xi2");
    Index mu = idx("mu");
    Expression e = Expression::from_poly(Poly(dot(x1, x2)));
    Expression d = e.differentiate(x1, mu);
    Term want;
    want.coeff = Coefficient(1);
    want.tensors = {TensorAtom::mom(x2, mu)};
    CHECK(d == Expression::from_terms({want}));

    // d/dxi1 (xi1 . xi1) = 2 xi1^mu
    Expression sq = Expression::from_poly(Poly(dot(x1, x1)));
    Term want2;
    want2.coeff = Coefficient(2);
    want2.tensors = {TensorAtom::mom(x1, mu)};
    CHECK(sq.differentiate(x1, mu) == Expression::from_terms({want2}));

    // derivative of an independent term is zero
    CHECK(Expression::from_poly(Poly(dot(x2, x2))).differentiate(x1, mu).is_zero());
}

TEST_CASE("derivative of a momentum atom is a metric") {
    Slot x1 = slot("xi1");
    Index mu = idx("mu"), nu = idx("nu");
    Term t;
    t.coeff = Coefficient(1);
    t.tensors = {TensorAtom::mom(x1, nu)};
    Expression d = Expression::from_terms({t}).differentiate(x1, mu);
    Term want;
    want.coeff = Coefficient(1);
    want.tensors = {TensorAtom::metric(mu, nu)};
    CHECK(d == Expression::from_terms({want}));
}

TEST_CASE("exponential derivative keeps the argument and is FD-consistent") {
    Expression e = one_loop_like_exponential();
    Slot x1 = slot("xi1");
    Index mu = idx("mu");
    Expression d = e.differentiate(x1, mu);
    // every term still carries the same exponential
    for (const Term& t : d.terms()) REQUIRE(t.exponential.has_value());

    std::mt19937 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        NumericContext ctx = random_context(e, {slot("xi1"), slot("xi2"), slot("xi3")}, rng);
        for (int comp = 0; comp < 4; ++comp) {
            NumericContext dc = ctx;
            dc.index_components[mu] = comp;
            auto symbolic = eval(d, dc);
            auto numeric = fd_derivative(e, x1, comp, ctx);
            CHECK(std::abs(symbolic - numeric) <= 1e-6 * std::max(1.0, std::abs(numeric)));
        }
    }
}

TEST_CASE("second derivative produces the metric term") {
    Expression e = one_loop_like_exponential();
    Slot x1 = slot("xi1"), x2 = slot("xi2");
    Index mu = idx("mu"), nu = idx("nu");
    Expression d2 = e.differentiate(x1, mu).differentiate(x2, nu);
    // the +2 A1 A2 eta^{mu nu} / psi term must appear among the results
    Symbol a1 = sym("A1"), a2 = sym("A2");
    Poly psi = Poly(a1) + Poly(a2);
    bool found = false;
    for (const Term& t : d2.terms()) {
        if (t.tensors.size() == 1 && t.tensors[0] == TensorAtom::metric(mu, nu)) {
            Coefficient want =
                Coefficient::over((Poly(a1) * Poly(a2)).scaled(GaussRat(2)), {{psi, 1}});
            CHECK(t.coeff == want);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("mixed partials commute") {
    Expression e = one_loop_like_exponential();
    Slot x1 = slot("xi1"), x2 = slot("xi2");
    Index mu = idx("mu"), nu = idx("nu");
    CHECK(e.differentiate(x1, mu).differentiate(x2, nu) ==
          e.differentiate(x2, nu).differentiate(x1, mu));
    CHECK(e.differentiate(x1, mu).differentiate(x1, nu) ==
          e.differentiate(x1, nu).differentiate(x1, mu));
}

TEST_CASE("derivative is linear") {
    Slot x1 = slot("xi1"), x2 = slot("xi2");
    Index mu = idx("mu");
    Expression a = Expression::from_poly(Poly(dot(x1, x2)).scaled(GaussRat(3)));
    Expression b = one_loop_like_exponential();
    CHECK((a + b).differentiate(x1, mu) == a.differentiate(x1, mu) + b.differentiate(x1, mu));
}

TEST_CASE("contraction and routing commute with numeric evaluation") {
    Expression e = one_loop_like_exponential();
    Slot x1 = slot("xi1"), x2 = slot("xi2"), x3 = slot("xi3"), q = slot("q");
    Index mu = idx("mu");
    Expression d_raw = e.differentiate(x1, mu).differentiate(x2, mu);
    Expression sub = d_raw.contract_indices().substitute_momenta([&] {
        Routing r;
        r.set(x1, {{q, GaussRat(1)}});
        r.set_zero(x2);
        r.set(x3, {{q, GaussRat(1)}});
        return r;
    }());

    std::mt19937 rng(31);
    NumericContext ctx = random_context(sub, {q}, rng);
    NumericContext pre = ctx;
    pre.slot_vectors[x1] = ctx.slot_vectors[q];
    pre.slot_vectors[x2] = {0.0, 0.0, 0.0, 0.0};
    pre.slot_vectors[x3] = ctx.slot_vectors[q];
    // contract the repeated index by an explicit component sum
    std::complex<double> component_sum = 0;
    for (int c = 0; c < 4; ++c) {
        NumericContext cc = pre;
        cc.index_components[mu] = c;
        component_sum += eval(d_raw, cc);
    }
    CHECK(std::abs(component_sum - eval(sub, ctx)) < 1e-9);
}
