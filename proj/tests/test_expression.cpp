#include <doctest.h>

#include <random>

#include "corolla/expression.hpp"
#include "corolla/numeric.hpp"
#include "support/oracles.hpp"

using namespace corolla;
using namespace corolla::testing;

namespace {

Expression simple_fraction(const Poly& num, const Poly& den_base, unsigned den_exp) {
    Term t;
    t.coeff = Coefficient::over(num, {{den_base, den_exp}});
    return Expression::from_terms({t});
}

}  // namespace

TEST_CASE("normalization merges commuted products and cancels") {
    Symbol a1 = sym("A1"), a2 = sym("A2");
    Expression x = Expression::from_poly(Poly(a1) * Poly(a2));
    Expression y = Expression::from_poly(Poly(a2) * Poly(a1));
    Expression sum = x + y;
    CHECK(sum == Expression::from_poly((Poly(a1) * Poly(a2)).scaled(GaussRat(2))));

    Index mu = idx("mu"), nu = idx("nu");
    Term t1, t2;
    t1.coeff = Coefficient(Poly(a1) * Poly(a1));
    t1.tensors.push_back(TensorAtom::metric(mu, nu));
    t2.coeff = -Coefficient(Poly(a1) * Poly(a1));
    t2.tensors.push_back(TensorAtom::metric(nu, mu));  // canonical order agrees
    CHECK(Expression::from_terms({t1, t2}).is_zero());
}

TEST_CASE("gcd-style reduction of coefficients") {
    Symbol a1 = sym("A1"), a2 = sym("A2");
    Poly psi = Poly(a1) + Poly(a2);
    // (2 A1) / (2 psi) -> A1 / psi
    Expression e = simple_fraction(Poly(a1).scaled(GaussRat(2)), psi.scaled(GaussRat(2)), 1);
    Expression want = simple_fraction(Poly(a1), psi, 1);
    CHECK(e == want);
    // (psi * A1) / psi -> A1
    Expression f = simple_fraction(psi * Poly(a1), psi, 1);
    CHECK(f == Expression::from_poly(Poly(a1)));
}

TEST_CASE("random reduced fractions stay numerically equal") {
    std::mt19937 rng(11);
    Symbol a1 = sym("A1"), a2 = sym("A2");
    std::uniform_int_distribution<int> cd(1, 4);
    for (int it = 0; it < 50; ++it) {
        Poly p = Poly(a1).scaled(GaussRat(cd(rng))) + Poly(a2).scaled(GaussRat(cd(rng)));
        Poly q = Poly(a1).scaled(GaussRat(cd(rng))) + Poly(1);
        Poly common = Poly(a1).scaled(GaussRat(cd(rng))) + Poly(a2);
        Term t;
        t.coeff = Coefficient::over(p * common, {{q, 1}, {common, 1}});
        Expression raw = Expression::from_terms({t});
        Expression reduced = simple_fraction(p, q, 1);
        CHECK(raw == reduced);

        NumericContext ctx;
        ctx.symbol_values[a1] = 0.7;
        ctx.symbol_values[a2] = 1.3;
        CHECK(std::abs(eval(raw, ctx) - eval(reduced, ctx)) < 1e-12);
    }
}

TEST_CASE("canonical equality: associativity and commutativity properties") {
    std::mt19937 rng(5);
    Symbol a1 = sym("A1"), a2 = sym("A2"), a3 = sym("A3");
    std::uniform_int_distribution<int> cd(-3, 3);
    auto rand_expr = [&] {
        Term t;
        t.coeff = Coefficient(Poly(a1).scaled(GaussRat(cd(rng))) +
                              Poly(a2).scaled(GaussRat(cd(rng))) + Poly(cd(rng)));
        if (cd(rng) > 0) t.coeff.push_den(Poly(a3) + Poly(1), 1);
        return Expression::from_terms({t});
    };
    for (int it = 0; it < 40; ++it) {
        Expression a = rand_expr(), b = rand_expr(), c = rand_expr();
        CHECK((a + b) == (b + a));
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));
    }
}

TEST_CASE("exponential arguments merge on multiplication") {
    Symbol a1 = sym("A1"), a2 = sym("A2");
    QuadricArg q1;
    q1.num = Poly(a1);
    q1.den = Poly(a1) + Poly(a2);
    q1.affine = Poly(a2);
    QuadricArg q2;
    q2.affine = Poly(a1);
    Term t1, t2;
    t1.coeff = Coefficient(1);
    t1.exponential = q1;
    t2.coeff = Coefficient(1);
    t2.exponential = q2;
    Expression prod = Expression::from_terms({t1}) * Expression::from_terms({t2});
    REQUIRE(prod.terms().size() == 1);
    const QuadricArg& merged = *prod.terms()[0].exponential;
    CHECK(merged.num == Poly(a1));
    CHECK(merged.affine == Poly(a1) + Poly(a2));
}

TEST_CASE("index contraction rules") {
    Index mu = idx("mu"), nu = idx("nu"), rho = idx("rho"), sigma = idx("sigma");
    Slot x1 = slot("xi1"), x2 = slot("xi2");

    SUBCASE("eta eta -> eta") {
        Term t;
        t.coeff = Coefficient(1);
        t.tensors = {TensorAtom::metric(mu, nu), TensorAtom::metric(nu, rho)};
        Expression e = Expression::from_terms({t}).contract_indices();
        Term want;
        want.coeff = Coefficient(1);
        want.tensors = {TensorAtom::metric(mu, rho)};
        CHECK(e == Expression::from_terms({want}));
    }
    SUBCASE("eta trace is the spacetime dimension") {
        Term t;
        t.coeff = Coefficient(1);
        t.tensors = {TensorAtom::metric(mu, mu)};
        CHECK(Expression::from_terms({t}).contract_indices() == Expression(4));
    }
    SUBCASE("momenta contract to a dot and traces compose") {
        Term t;
        t.coeff = Coefficient(1);
        t.tensors = {TensorAtom::mom(x1, mu), TensorAtom::mom(x2, mu),
                     TensorAtom::metric(rho, sigma), TensorAtom::metric(sigma, rho)};
        Expression e = Expression::from_terms({t}).contract_indices();
        Expression want = Expression::from_poly(Poly(dot(x1, x2)).scaled(GaussRat(4)));
        CHECK(e == want);

        // component-wise numeric oracle
        std::mt19937 rng(3);
        NumericContext ctx = random_context(want, {x1, x2}, rng);
        std::complex<double> lhs = 0;
        for (int m = 0; m < 4; ++m)
            for (int r = 0; r < 4; ++r)
                for (int s = 0; s < 4; ++s) {
                    NumericContext c2 = ctx;
                    c2.index_components = {{mu, m}, {rho, r}, {sigma, s}};
                    Term raw;
                    raw.coeff = Coefficient(1);
                    raw.tensors = {TensorAtom::mom(x1, mu), TensorAtom::mom(x2, mu)};
                    // eta[rho,sigma]^2 contributes delta_{rs} twice
                    if (r == s) lhs += eval(Expression::from_terms({raw}), c2);
                }
        CHECK(std::abs(lhs - eval(want, ctx)) < 1e-9);
    }
    SUBCASE("metric applied to a momentum renames its index") {
        Term t;
        t.coeff = Coefficient(1);
        t.tensors = {TensorAtom::metric(mu, nu), TensorAtom::mom(x1, nu)};
        Expression e = Expression::from_terms({t}).contract_indices();
        Term want;
        want.coeff = Coefficient(1);
        want.tensors = {TensorAtom::mom(x1, mu)};
        CHECK(e == Expression::from_terms({want}));
    }
    SUBCASE("triple occurrence is malformed") {
        Term t;
        t.coeff = Coefficient(1);
        t.tensors = {TensorAtom::mom(x1, mu), TensorAtom::mom(x2, mu),
                     TensorAtom::metric(mu, nu)};
        CHECK_THROWS_AS(Expression::from_terms({t}).contract_indices(), MalformedExpression);
    }
}

TEST_CASE("momentum substitution is bilinear") {
    Slot x1 = slot("xi1"), x2 = slot("xi2"), q1 = slot("q1"), q2 = slot("q2");
    Routing r;
    r.set(x1, {{q1, GaussRat(1)}, {q2, GaussRat(1)}});
    r.set(x2, {{q1, GaussRat(1)}});
    // (xi1 . xi2) -> q1^2 + (q1 . q2)
    Expression e = Expression::from_poly(Poly(dot(x1, x2)));
    Expression got = e.substitute_momenta(r);
    Expression want = Expression::from_poly(Poly(dot(q1, q1)) + Poly(dot(q1, q2)));
    CHECK(got == want);

    // (xi1 - xi2)^2 with xi1 -> q, xi2 -> 0 gives q^2
    Slot q = slot("q");
    Routing r2;
    r2.set(x1, {{q, GaussRat(1)}});
    r2.set_zero(x2);
    Poly sq = Poly(dot(x1, x1)) - Poly(dot(x1, x2)).scaled(GaussRat(2)) + Poly(dot(x2, x2));
    CHECK(Expression::from_poly(sq).substitute_momenta(r2) ==
          Expression::from_poly(Poly(dot(q, q))));

    // missing slot
    Routing incomplete;
    incomplete.set(x1, {{q, GaussRat(1)}});
    CHECK_THROWS_AS(e.substitute_momenta(incomplete), IncompleteRouting);

    // numeric bilinearity oracle
    std::mt19937 rng(17);
    NumericContext ctx = random_context(want, {q1, q2}, rng);
    NumericContext pre = ctx;
    for (int k = 0; k < 4; ++k) {
        pre.slot_vectors[x1][k] = ctx.slot_vectors[q1][k] + ctx.slot_vectors[q2][k];
        pre.slot_vectors[x2][k] = ctx.slot_vectors[q1][k];
    }
    CHECK(std::abs(eval(e, pre) - eval(got, ctx)) < 1e-9);
}
