#include "corolla/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace corolla {

Monomial Monomial::times(const Monomial& o) const {
    Monomial r;
    r.factors.reserve(factors.size() + o.factors.size());
    size_t i = 0, j = 0;
    while (i < factors.size() || j < o.factors.size()) {
        if (j == o.factors.size() || (i < factors.size() && factors[i].first < o.factors[j].first)) {
            r.factors.push_back(factors[i++]);
        } else if (i == factors.size() || o.factors[j].first < factors[i].first) {
            r.factors.push_back(o.factors[j++]);
        } else {
            r.factors.push_back({factors[i].first, factors[i].second + o.factors[j].second});
            ++i, ++j;
        }
    }
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    size_t j = 0;
    for (auto& [s, e] : factors) {
        while (j < o.factors.size() && o.factors[j].first < s) ++j;
        if (j == o.factors.size() || o.factors[j].first != s || o.factors[j].second < e) return false;
    }
    return true;
}

Monomial Monomial::quotient_into(const Monomial& o) const {
    Monomial r;
    size_t i = 0;
    for (auto& [s, e] : o.factors) {
        unsigned sub = 0;
        while (i < factors.size() && factors[i].first < s) ++i;
        if (i < factors.size() && factors[i].first == s) sub = factors[i].second;
        if (e > sub) r.factors.push_back({s, e - sub});
    }
    return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
    size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (i == a.factors.size()) return true;   // b has a variable a lacks: b larger
        if (j == b.factors.size()) return false;  // a larger
        Symbol sa = a.factors[i].first, sb = b.factors[j].first;
        if (sa < sb) return false;  // a has the more significant variable
        if (sb < sa) return true;
        if (a.factors[i].second != b.factors[j].second)
            return a.factors[i].second < b.factors[j].second;
        ++i, ++j;
    }
    return false;
}

void Poly::add_term(const Monomial& m, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

Poly Poly::operator-() const {
    Poly r;
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
    return r;
}

Poly Poly::scaled(const GaussRat& c) const {
    Poly r;
    if (c.is_zero()) return r;
    for (auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly acc(1), base = *this;
    for (; k; k >>= 1) {
        if (k & 1) acc *= base;
        if (k > 1) base *= base;
    }
    return acc;
}

bool operator<(const Poly& a, const Poly& b) {
    return std::lexicographical_compare(
        a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
        [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first < y.first;
            return x.second < y.second;
        });
}

std::pair<Monomial, GaussRat> Poly::leading() const {
    if (terms_.empty()) throw std::logic_error("leading() of zero polynomial");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
}

std::optional<Poly> Poly::try_divide(const Poly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly rem = *this, quot;
    auto [dm, dc] = divisor.leading();
    while (!rem.is_zero()) {
        auto [rm, rc] = rem.leading();
        if (!dm.divides(rm)) return std::nullopt;
        Monomial qm = dm.quotient_into(rm);
        GaussRat qc = rc / dc;
        quot.add_term(qm, qc);
        rem -= divisor * Poly(qm, qc);
    }
    return quot;
}

Poly Poly::derivative(Symbol s) const {
    Poly r;
    for (auto& [m, c] : terms_) {
        unsigned e = m.exponent_of(s);
        if (e == 0) continue;
        Monomial dm;
        for (auto& [t, k] : m.factors) {
            if (t == s) {
                if (k > 1) dm.factors.push_back({t, k - 1});
            } else {
                dm.factors.push_back({t, k});
            }
        }
        r.add_term(dm, c * GaussRat(static_cast<long>(e)));
    }
    return r;
}

Poly Poly::substitute(Symbol s, const Poly& value) const {
    Poly r;
    for (auto& [m, c] : terms_) {
        unsigned e = m.exponent_of(s);
        Monomial rest;
        for (auto& [t, k] : m.factors)
            if (t != s) rest.factors.push_back({t, k});
        Poly term(rest, c);
        if (e > 0) term *= value.pow(e);
        r += term;
    }
    return r;
}

std::vector<Poly> Poly::coefficients_in(Symbol x) const {
    std::vector<Poly> out;
    for (auto& [m, c] : terms_) {
        unsigned e = m.exponent_of(x);
        Monomial rest;
        for (auto& [t, k] : m.factors)
            if (t != x) rest.factors.push_back({t, k});
        if (out.size() <= e) out.resize(e + 1);
        out[e].add_term(rest, c);
    }
    if (out.empty()) out.resize(1);
    return out;
}

unsigned Poly::degree_in(Symbol x) const {
    unsigned d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.exponent_of(x));
    return d;
}

unsigned Poly::total_degree() const {
    unsigned d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

int Poly::homogeneous_degree() const {
    int d = -1;
    for (auto& [m, c] : terms_) {
        if (d == -1) d = static_cast<int>(m.degree());
        else if (d != static_cast<int>(m.degree())) return -1;
    }
    return d;
}

std::set<Symbol> Poly::symbols() const {
    std::set<Symbol> out;
    for (auto& [m, c] : terms_)
        for (auto& [s, e] : m.factors) out.insert(s);
    return out;
}

bool Poly::contains(Symbol s) const {
    for (auto& [m, c] : terms_)
        if (m.exponent_of(s) > 0) return true;
    return false;
}

std::complex<double> Poly::eval(const std::map<Symbol, std::complex<double>>& values) const {
    std::complex<double> sum = 0;
    for (auto& [m, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (auto& [s, e] : m.factors) {
            auto it = values.find(s);
            if (it == values.end())
                throw std::out_of_range("no numeric value for symbol " +
                                        SymbolTable::instance().symbol_name(s));
            for (unsigned k = 0; k < e; ++k) t *= it->second;
        }
        sum += t;
    }
    return sum;
}

GaussRat Poly::eval_exact(const std::map<Symbol, GaussRat>& values) const {
    GaussRat sum(0);
    for (auto& [m, c] : terms_) {
        GaussRat t = c;
        for (auto& [s, e] : m.factors) {
            auto it = values.find(s);
            if (it == values.end())
                throw std::out_of_range("no exact value for symbol " +
                                        SymbolTable::instance().symbol_name(s));
            t *= it->second.pow(e);
        }
        sum += t;
    }
    return sum;
}

}  // namespace corolla
