#include <doctest.h>

#include <random>

#include "corolla/corolla_poly.hpp"
#include "corolla/expression.hpp"
#include "corolla/numeric.hpp"
#include "support/oracles.hpp"

using namespace corolla;
using namespace corolla::testing;

namespace {

Expression frac(Poly num, std::vector<std::pair<Poly, unsigned>> den) {
    Term t;
    t.coeff = Coefficient::over(std::move(num), std::move(den));
    return Expression::from_terms({t});
}

}  // namespace

TEST_CASE("simple pole residue") {
    Symbol a1 = sym("A1"), a2 = sym("A2");
    // Res_{A1=0} 1/(A1 (A1+A2)) = 1/A2
    Expression e = frac(Poly(1), {{Poly(a1), 1}, {Poly(a1) + Poly(a2), 1}});
    Expression want = frac(Poly(1), {{Poly(a2), 1}});
    CHECK(e.laurent_coefficient(a1, -1) == want);
    // no pole, no residue
    Expression f = frac(Poly(1), {{Poly(a1) + Poly(a2), 1}});
    CHECK(f.laurent_coefficient(a1, -1).is_zero());
    // regular part at zero
    CHECK(f.laurent_coefficient(a1, 0) == frac(Poly(1), {{Poly(a2), 1}}));
}

TEST_CASE("second order pole against the exponential") {
    Symbol a1 = sym("A1"), a2 = sym("A2"), c = sym("c");
    // exp(-c A1 A2/(A1+A2)) / A1^2: residue = coefficient of A1 in the
    // analytic part = -c (the exponent's series starts at c A1)
    QuadricArg q;
    q.num = Poly(c) * Poly(a1) * Poly(a2);
    q.den = Poly(a1) + Poly(a2);
    Term t;
    t.coeff = Coefficient::over(Poly(1), {{Poly(a1), 2}});
    t.exponential = q;
    Expression e = Expression::from_terms({t});
    Expression res = e.laurent_coefficient(a1, -1);
    REQUIRE(res.size() == 1);
    CHECK(res.terms()[0].coeff.num == Poly(GaussRat(-1)) * Poly(c));
    // exp(0) absorbed: the surviving factor carries no exponential
    CHECK_FALSE(res.terms()[0].exponential.has_value());
}

TEST_CASE("series coefficients match the contour oracle") {
    std::mt19937 rng(41);
    Symbol x = sym("Ax"), y = sym("Ay"), z = sym("Az");
    for (int trial = 0; trial < 12; ++trial) {
        std::uniform_int_distribution<int> cd(1, 3), pd(0, 3);
        unsigned pole = static_cast<unsigned>(pd(rng));
        Poly num = Poly(y).scaled(GaussRat(cd(rng))) + Poly(x).scaled(GaussRat(cd(rng)));
        Poly reg = Poly(y) + Poly(x).scaled(GaussRat(cd(rng))) + Poly(cd(rng));
        QuadricArg q;
        q.num = Poly(x) * Poly(y).scaled(GaussRat(cd(rng)));
        q.den = Poly(x) + Poly(y) + Poly(z);
        q.affine = Poly(x).scaled(GaussRat(cd(rng), 3));
        Term t;
        t.coeff = Coefficient::over(num, {{Poly(x), pole}, {reg, 1}});
        t.exponential = q;
        Expression e = Expression::from_terms({t});

        std::map<Symbol, std::complex<double>> base{{y, 1.3}, {z, 0.8}};
        for (int order = -static_cast<int>(pole); order <= 2; ++order) {
            Expression coeff = e.laurent_coefficient(x, order);
            NumericContext ctx;
            ctx.symbol_values = base;
            std::complex<double> algebraic = coeff.is_zero() ? 0.0 : eval(coeff, ctx);
            auto f = [&](std::complex<double> xv) {
                NumericContext c2;
                c2.symbol_values = base;
                c2.symbol_values[x] = xv;
                return eval(e, c2);
            };
            std::complex<double> numeric = contour_laurent_coefficient(f, order);
            CHECK(std::abs(algebraic - numeric) < 1e-7 * std::max(1.0, std::abs(numeric)));
        }
    }
}

TEST_CASE("laurent errors") {
    Symbol a1 = sym("A1"), a2 = sym("A2");
    // essential singularity: exp argument with a pole at A1 = 0
    QuadricArg q;
    q.num = Poly(a2);
    q.den = Poly(a1);
    Term t;
    t.coeff = Coefficient(1);
    t.exponential = q;
    Expression e = Expression::from_terms({t});
    CHECK_THROWS_AS(e.laurent_coefficient(a1, 0), UnsupportedExpansion);
    // denominator factor vanishing at zero but not a pure power
    Expression f = frac(Poly(1), {{Poly(a1) * Poly(a2) + Poly(a1) * Poly(a1), 1}});
    CHECK_THROWS_AS(f.laurent_coefficient(a1, -1), UnsupportedExpansion);
}

TEST_CASE("res and reg compose over several symbols") {
    Symbol a1 = sym("A1"), a2 = sym("A2"), a3 = sym("A3");
    // 1/(A1 A2 (A1+A2+A3)): iterated residue over {A1, A2} leaves 1/A3
    Expression e =
        frac(Poly(1), {{Poly(a1), 1}, {Poly(a2), 1}, {Poly(a1) + Poly(a2) + Poly(a3), 1}});
    auto [res, reg] = laurent_res_reg(e, {a1, a2});
    CHECK(res == frac(Poly(1), {{Poly(a3), 1}}));
    // iterated constant terms: coeff_{A1^0} gives -1/(A2 (A2+A3)^2), whose
    // coeff_{A2^0} is +2/A3^3
    CHECK(reg == frac(Poly(2), {{Poly(a3), 3}}));
}
