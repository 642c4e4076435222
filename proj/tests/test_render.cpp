#include <doctest.h>

#include <random>

#include "corolla/render.hpp"

using namespace corolla;

namespace {

Expression sample_expression(std::mt19937& rng) {
    Symbol a1 = sym("A1"), a2 = sym("A2"), m = sym("m1");
    Slot x1 = slot("xi1"), x2 = slot("xi2");
    Index mu = idx("mu1"), nu = idx("mu2");
    std::uniform_int_distribution<int> cd(-4, 4);
    std::uniform_int_distribution<int> flag(0, 1);
    std::vector<Term> terms;
    int n = 1 + flag(rng) + flag(rng);
    for (int k = 0; k < n; ++k) {
        Term t;
        Poly num = Poly(a1).scaled(GaussRat(cd(rng))) + Poly(m).scaled(GaussRat(cd(rng))) +
                   Poly(GaussRat(mpq_class(cd(rng)), mpq_class(cd(rng))));
        t.coeff = Coefficient(num);
        if (flag(rng)) t.coeff.push_den(Poly(a1) + Poly(a2), 1 + flag(rng));
        if (flag(rng)) t.tensors.push_back(TensorAtom::metric(mu, nu));
        if (flag(rng)) t.tensors.push_back(TensorAtom::mom(x1, idx("mu3")));
        if (flag(rng)) {
            QuadricArg q;
            q.num = Poly(dot(x1, x2)) * Poly(a1);
            q.den = Poly(a1) + Poly(a2);
            q.affine = Poly(Monomial::of(m, 2), GaussRat(1)) * Poly(a2);
            t.exponential = q;
        }
        terms.push_back(std::move(t));
    }
    return Expression::from_terms(std::move(terms));
}

}  // namespace

TEST_CASE("text render of plain polynomials") {
    Symbol a1 = sym("A1"), a2 = sym("A2");
    CHECK(render(Poly(a1) + Poly(a2), Format::text) == "A1 + A2");
    CHECK(render(Poly(a1) - Poly(a2).scaled(GaussRat(2)), Format::text) == "A1 - 2*A2");
    CHECK(render(Poly(), Format::text) == "0");
}

TEST_CASE("latex render uses frac and greek indices") {
    Symbol a1 = sym("A1"), a2 = sym("A2");
    Index mu3 = idx("mu3");
    Index mu4 = idx("mu4");
    Term t;
    t.coeff = Coefficient::over(Poly(1), {{Poly(a1) + Poly(a2), 1}});
    t.tensors.push_back(TensorAtom::metric(mu3, mu4));
    std::string s = render(Expression::from_terms({t}), Format::latex);
    CHECK(s == "\\frac{1}{A_{1} + A_{2}} \\eta^{\\mu_{3} \\mu_{4}}");
}

TEST_CASE("json round-trip is the identity on canonical forms") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 60; ++trial) {
        Expression e = sample_expression(rng);
        Expression back = parse_expression_json(render(e, Format::json));
        CHECK(back == e);
    }
}

TEST_CASE("render is deterministic") {
    std::mt19937 rng1(7), rng2(7);
    Expression a = sample_expression(rng1), b = sample_expression(rng2);
    CHECK(render(a, Format::text) == render(b, Format::text));
    CHECK(render(a, Format::json) == render(b, Format::json));
    CHECK(render(a, Format::latex) == render(b, Format::latex));
}
