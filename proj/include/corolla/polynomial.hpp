#pragma once

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "corolla/rational.hpp"
#include "corolla/symbols.hpp"

namespace corolla {

/// Exponent vector, sparse and sorted by symbol id; exponents are >= 1.
struct Monomial {
    std::vector<std::pair<Symbol, unsigned>> factors;

    static Monomial unit() { return {}; }
    static Monomial of(Symbol s, unsigned e = 1) {
        Monomial m;
        if (e > 0) m.factors.push_back({s, e});
        return m;
    }

    bool is_unit() const { return factors.empty(); }
    unsigned degree() const {
        unsigned d = 0;
        for (auto& [s, e] : factors) d += e;
        return d;
    }
    unsigned exponent_of(Symbol s) const {
        for (auto& [t, e] : factors)
            if (t == s) return e;
        return 0;
    }

    Monomial times(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    /// Requires this->divides(o).
    Monomial quotient_into(const Monomial& o) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors == b.factors; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    /// Lex order: the smaller symbol id is the more significant variable.
    friend bool operator<(const Monomial& a, const Monomial& b);
};

/// Sparse multivariate polynomial over Q(i) with exact arithmetic.
class Poly {
public:
    Poly() = default;
    Poly(long n) { add_term(Monomial::unit(), GaussRat(n)); }
    Poly(const GaussRat& c) { add_term(Monomial::unit(), c); }
    Poly(Symbol s) { add_term(Monomial::of(s), GaussRat(1)); }
    Poly(const Monomial& m, const GaussRat& c) { add_term(m, c); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
    }
    GaussRat constant_value() const {
        if (terms_.empty()) return GaussRat(0);
        auto it = terms_.find(Monomial::unit());
        return it == terms_.end() ? GaussRat(0) : it->second;
    }
    size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, GaussRat>& terms() const { return terms_; }

    void add_term(const Monomial& m, const GaussRat& c);

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }
    Poly scaled(const GaussRat& c) const;
    Poly pow(unsigned k) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b);

    /// Leading term in the monomial order (largest monomial).
    std::pair<Monomial, GaussRat> leading() const;

    /// Exact multivariate division; nullopt when the remainder is nonzero.
    std::optional<Poly> try_divide(const Poly& divisor) const;

    Poly derivative(Symbol s) const;
    Poly substitute(Symbol s, const Poly& value) const;
    /// Coefficients of x^0, x^1, ... (x absent from the results).
    std::vector<Poly> coefficients_in(Symbol x) const;
    unsigned degree_in(Symbol x) const;
    unsigned total_degree() const;
    /// -1 when not homogeneous, else the common total degree.
    int homogeneous_degree() const;

    std::set<Symbol> symbols() const;
    bool contains(Symbol s) const;

    std::complex<double> eval(const std::map<Symbol, std::complex<double>>& values) const;
    GaussRat eval_exact(const std::map<Symbol, GaussRat>& values) const;

private:
    std::map<Monomial, GaussRat> terms_;
};

}  // namespace corolla
