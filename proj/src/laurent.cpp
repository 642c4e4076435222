#include <algorithm>

#include "corolla/expression.hpp"

namespace corolla {

namespace {

/// Truncated power series in one expansion symbol; entries are rational
/// coefficients in the remaining variables.
struct Series {
    std::vector<Coefficient> c;  // c[j] multiplies x^j

    static Series zero(size_t n) {
        Series s;
        s.c.assign(n + 1, Coefficient());
        return s;
    }
    static Series of_poly(const Poly& p, Symbol x, size_t n) {
        Series s = zero(n);
        auto parts = p.coefficients_in(x);
        for (size_t j = 0; j < parts.size() && j <= n; ++j) s.c[j] = Coefficient(parts[j]);
        return s;
    }
    Series times(const Series& o) const {
        size_t n = c.size() - 1;
        Series r = zero(n);
        for (size_t i = 0; i <= n; ++i) {
            if (c[i].is_zero()) continue;
            for (size_t j = 0; i + j <= n; ++j) {
                if (o.c[j].is_zero()) continue;
                r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
            }
        }
        return r;
    }
    Series plus(const Series& o) const {
        Series r = *this;
        for (size_t j = 0; j < r.c.size(); ++j) r.c[j] = r.c[j] + o.c[j];
        return r;
    }
};

/// Series of 1 / f^m around x = 0; requires f(0) != 0.
Series inverse_series(const Poly& f, unsigned m, Symbol x, size_t n) {
    auto parts = f.coefficients_in(x);
    const Poly& f0 = parts[0];
    Series g = Series::zero(n);
    g.c[0] = Coefficient::over(Poly(1), {{f0, 1}});
    for (size_t k = 1; k <= n; ++k) {
        Coefficient acc;
        for (size_t j = 1; j <= k && j < parts.size(); ++j)
            acc = acc + Coefficient(parts[j]) * g.c[k - j];
        g.c[k] = (-acc).divided_by(f0);
    }
    Series r = g;
    for (unsigned i = 1; i < m; ++i) r = r.times(g);
    return r;
}

/// Series of exp(-w) where w has no constant term.
Series exp_series(const Series& w, size_t n) {
    Series acc = Series::zero(n);
    acc.c[0] = Coefficient(1);
    Series pow = acc;
    GaussRat factorial(1);
    for (size_t k = 1; k <= n; ++k) {
        pow = pow.times(w);
        factorial *= GaussRat(static_cast<long>(k));
        GaussRat scale = GaussRat(k % 2 == 0 ? 1 : -1) / factorial;
        for (size_t j = 0; j <= n; ++j) acc.c[j] = acc.c[j] + pow.c[j].scaled(scale);
    }
    return acc;
}

constexpr unsigned kMaxPoleOrder = 4;

}  // namespace

Expression Expression::laurent_coefficient(Symbol x, int order) const {
    const Poly x_poly(x);
    std::vector<Term> out;
    for (const Term& t : terms_) {
        unsigned pole = 0;
        std::vector<std::pair<Poly, unsigned>> regular, untouched;
        for (auto& [base, exp] : t.coeff.den) {
            if (base == x_poly) {
                pole += exp;
            } else if (!base.contains(x)) {
                untouched.push_back({base, exp});
            } else if (base.coefficients_in(x)[0].is_zero()) {
                throw UnsupportedExpansion(
                    "denominator factor vanishes at " + SymbolTable::instance().symbol_name(x) +
                    " = 0 but is not a pure power of it");
            } else {
                regular.push_back({base, exp});
            }
        }
        if (pole > kMaxPoleOrder)
            throw UnsupportedExpansion("pole order exceeds supported expansion depth");
        int need = order + static_cast<int>(pole);
        if (need < 0) continue;
        size_t n = static_cast<size_t>(need);

        Series s = Series::of_poly(t.coeff.num, x, n);
        for (auto& [base, exp] : regular) s = s.times(inverse_series(base, exp, x, n));

        std::optional<QuadricArg> base_exp;
        if (t.exponential) {
            const QuadricArg& q = *t.exponential;
            QuadricArg q0;
            q0.num = q.num.coefficients_in(x)[0];
            q0.den = q.den.coefficients_in(x)[0];
            q0.affine = q.affine.coefficients_in(x)[0];
            if (!q.num.is_zero() && q0.den.is_zero())
                throw UnsupportedExpansion("essential singularity: exponential argument has a pole");
            q0.normalize();
            Series arg = Series::of_poly(q.affine, x, n);
            if (!q.num.is_zero())
                arg = arg.plus(Series::of_poly(q.num, x, n).times(inverse_series(q.den, 1, x, n)));
            arg.c[0] = Coefficient();  // constant part lives in the retained exponential
            s = s.times(exp_series(arg, n));
            if (!q0.is_trivial()) base_exp = std::move(q0);
        }

        Coefficient c = s.c[n];
        if (c.is_zero()) continue;
        for (auto& [base, exp] : untouched) c.push_den(base, exp);
        c.reduce();
        Term r;
        r.coeff = std::move(c);
        r.tensors = t.tensors;
        r.exponential = std::move(base_exp);
        out.push_back(std::move(r));
    }
    return from_terms(std::move(out));
}

Expression Expression::residue(const std::vector<Symbol>& xs) const {
    Expression e = *this;
    for (Symbol x : xs) e = e.laurent_coefficient(x, -1);
    return e;
}

Expression Expression::regular_part_at_zero(const std::vector<Symbol>& xs) const {
    Expression e = *this;
    for (Symbol x : xs) e = e.laurent_coefficient(x, 0);
    return e;
}

}  // namespace corolla
