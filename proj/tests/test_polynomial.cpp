#include <doctest.h>

#include <random>

#include "corolla/polynomial.hpp"

using namespace corolla;

namespace {

Poly random_poly(std::mt19937& rng, const std::vector<Symbol>& vars, int max_terms = 4,
                 unsigned max_exp = 3) {
    std::uniform_int_distribution<int> terms(1, max_terms);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<unsigned> expd(0, max_exp);
    Poly p;
    int n = terms(rng);
    for (int t = 0; t < n; ++t) {
        Monomial m;
        for (Symbol v : vars) {
            unsigned e = expd(rng);
            if (e) m.factors.push_back({v, e});
        }
        std::sort(m.factors.begin(), m.factors.end(),
                  [](auto& a, auto& b) { return a.first < b.first; });
        p.add_term(m, GaussRat(coeff(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("monomial order is multiplicative and total") {
    Symbol x = sym("px"), y = sym("py");
    Monomial one = Monomial::unit();
    Monomial mx = Monomial::of(x), my = Monomial::of(y), mx2 = Monomial::of(x, 2);
    CHECK(one < mx);
    CHECK(my < mx);   // x interned first: more significant
    CHECK(mx < mx2);
    CHECK(mx.times(my) == my.times(mx));
    // multiplicative: a < b implies ac < bc
    CHECK(my.times(mx) < mx2.times(my));
}

TEST_CASE("arithmetic basics") {
    Symbol a = sym("pa"), b = sym("pb");
    Poly pa(a), pb(b);
    CHECK((pa + pb) == (pb + pa));
    CHECK((pa - pa).is_zero());
    Poly prod = (pa + pb) * (pa - pb);
    Poly expect = pa * pa - pb * pb;
    CHECK(prod == expect);
    CHECK(prod.homogeneous_degree() == 2);
    CHECK((pa + Poly(1)).homogeneous_degree() == -1);
}

TEST_CASE("exact division round-trips random products") {
    std::mt19937 rng(7);
    std::vector<Symbol> vars{sym("pa"), sym("pb"), sym("pc")};
    int checked = 0;
    for (int it = 0; it < 200; ++it) {
        Poly f = random_poly(rng, vars), q = random_poly(rng, vars);
        if (f.is_zero() || q.is_zero()) continue;
        Poly prod = f * q;
        auto back = prod.try_divide(f);
        REQUIRE(back.has_value());
        CHECK(*back == q);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("division failure on non-factors") {
    Symbol a = sym("pa"), b = sym("pb");
    Poly pa(a), pb(b);
    CHECK_FALSE((pa + pb).try_divide(pa).has_value());
    CHECK_FALSE((pa * pa + pb).try_divide(pa + pb).has_value());
}

TEST_CASE("derivative and substitution") {
    Symbol a = sym("pa"), b = sym("pb");
    Poly p = Poly(a) * Poly(a) * Poly(b) + Poly(b);  // a^2 b + b
    Poly d = p.derivative(a);
    CHECK(d == Poly(a) * Poly(b).scaled(GaussRat(2)));
    CHECK(p.substitute(a, Poly(0)) == Poly(b));
    CHECK(p.substitute(b, Poly(1)) == Poly(a) * Poly(a) + Poly(1));
}

TEST_CASE("coefficients_in splits by powers") {
    Symbol a = sym("pa"), b = sym("pb");
    Poly p = Poly(a) * Poly(a) * Poly(b) + Poly(a) + Poly(3);
    auto parts = p.coefficients_in(a);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == Poly(3));
    CHECK(parts[1] == Poly(1));
    CHECK(parts[2] == Poly(b));
}

TEST_CASE("gaussian rational arithmetic") {
    GaussRat i = GaussRat::i();
    CHECK(i * i == GaussRat(-1));
    CHECK(GaussRat::i_pow(4) == GaussRat(1));
    CHECK(GaussRat::i_pow(6) == GaussRat(-1));
    CHECK((GaussRat(1) + i) * (GaussRat(1) - i) == GaussRat(2));
    CHECK((GaussRat(1) / (GaussRat(1) + i)) == GaussRat(mpq_class(1, 2), mpq_class(-1, 2)));
}
