#include "corolla/expression.hpp"

#include <algorithm>

namespace corolla {

void QuadricArg::normalize() {
    if (num.is_zero()) {
        den = Poly(1);
    } else {
        auto [lm, lc] = den.leading();
        if (!lc.is_one()) {
            GaussRat inv = lc.inverse();
            den = den.scaled(inv);
            num = num.scaled(inv);
        }
    }
    if (den.is_zero()) throw MalformedExpression("zero denominator in exponential argument");
}

QuadricArg QuadricArg::plus(const QuadricArg& o) const {
    QuadricArg r;
    r.affine = affine + o.affine;
    if (num.is_zero()) {
        r.num = o.num;
        r.den = o.den;
    } else if (o.num.is_zero()) {
        r.num = num;
        r.den = den;
    } else if (den == o.den) {
        r.num = num + o.num;
        r.den = den;
    } else {
        r.num = num * o.den + o.num * den;
        r.den = den * o.den;
    }
    r.normalize();
    return r;
}

Coefficient Coefficient::over(Poly n, std::vector<std::pair<Poly, unsigned>> d) {
    Coefficient c(std::move(n));
    for (auto& [base, exp] : d) c.push_den(std::move(base), exp);
    c.reduce();
    return c;
}

void Coefficient::push_den(Poly base, unsigned exp) {
    if (exp == 0) return;
    if (base.is_zero()) throw MalformedExpression("zero denominator factor");
    if (base.is_constant()) {
        num = num.scaled(base.constant_value().inverse().pow(exp));
        return;
    }
    auto [lm, lc] = base.leading();
    if (!lc.is_one()) {
        base = base.scaled(lc.inverse());
        num = num.scaled(lc.inverse().pow(exp));
    }
    for (auto& [b, e] : den) {
        if (b == base) {
            e += exp;
            return;
        }
    }
    den.push_back({std::move(base), exp});
    std::sort(den.begin(), den.end(), [](const auto& x, const auto& y) {
        return x.first < y.first;
    });
}

void Coefficient::reduce() {
    if (num.is_zero()) {
        den.clear();
        return;
    }
    for (auto& [base, exp] : den) {
        while (exp > 0) {
            auto q = num.try_divide(base);
            if (!q) break;
            num = std::move(*q);
            --exp;
        }
    }
    den.erase(std::remove_if(den.begin(), den.end(), [](const auto& f) { return f.second == 0; }),
              den.end());
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    Coefficient r(a.num * b.num);
    for (auto& [base, exp] : a.den) r.push_den(base, exp);
    for (auto& [base, exp] : b.den) r.push_den(base, exp);
    r.reduce();
    return r;
}

Coefficient operator+(const Coefficient& a, const Coefficient& b) {
    // Common denominator: union of factors at their maximal exponents.
    std::map<Poly, unsigned> common;
    for (auto& [base, exp] : a.den) common[base] = std::max(common[base], exp);
    for (auto& [base, exp] : b.den) common[base] = std::max(common[base], exp);
    auto lift = [&common](const Coefficient& c) {
        Poly n = c.num;
        for (auto& [base, exp] : common) {
            unsigned have = 0;
            for (auto& [b2, e2] : c.den)
                if (b2 == base) have = e2;
            if (exp > have) n *= base.pow(exp - have);
        }
        return n;
    };
    Coefficient r(lift(a) + lift(b));
    for (auto& [base, exp] : common) r.push_den(base, exp);
    r.reduce();
    return r;
}

Coefficient Coefficient::operator-() const {
    Coefficient r = *this;
    r.num = -r.num;
    return r;
}

Coefficient Coefficient::scaled(const GaussRat& c) const {
    Coefficient r = *this;
    r.num = r.num.scaled(c);
    if (r.num.is_zero()) r.den.clear();
    return r;
}

Coefficient Coefficient::divided_by(const Poly& p) const {
    Coefficient r = *this;
    r.push_den(p, 1);
    r.reduce();
    return r;
}

std::optional<Coefficient> Coefficient::try_divide_num(const Poly& p) const {
    if (p.is_constant()) return scaled(p.constant_value().inverse());
    auto q = num.try_divide(p);
    if (!q) return std::nullopt;
    Coefficient r = *this;
    r.num = std::move(*q);
    return r;
}

void Routing::set(Slot s, std::vector<std::pair<Slot, GaussRat>> combo) {
    std::map<Slot, GaussRat> collect;
    for (auto& [t, c] : combo) {
        auto [it, fresh] = collect.emplace(t, c);
        if (!fresh) it->second += c;
    }
    std::vector<std::pair<Slot, GaussRat>> out;
    for (auto& [t, c] : collect)
        if (!c.is_zero()) out.push_back({t, c});
    map_[s] = std::move(out);
}

const std::vector<std::pair<Slot, GaussRat>>& Routing::at(Slot s) const {
    auto it = map_.find(s);
    if (it == map_.end())
        throw IncompleteRouting("no routing for momentum slot " +
                                SymbolTable::instance().slot_name(s));
    return it->second;
}

namespace {

struct TermKey {
    const std::vector<TensorAtom>* tensors;
    const std::optional<QuadricArg>* exponential;
    friend bool operator<(const TermKey& x, const TermKey& y) {
        if (*x.tensors != *y.tensors)
            return std::lexicographical_compare(x.tensors->begin(), x.tensors->end(),
                                                y.tensors->begin(), y.tensors->end());
        bool xe = x.exponential->has_value(), ye = y.exponential->has_value();
        if (xe != ye) return xe < ye;
        if (!xe) return false;
        return **x.exponential < **y.exponential;
    }
};

}  // namespace

Expression Expression::from_terms(std::vector<Term> terms) {
    std::map<std::pair<std::vector<TensorAtom>, std::optional<QuadricArg>>, Coefficient> merged;
    for (auto& t : terms) {
        if (t.coeff.is_zero()) continue;
        std::sort(t.tensors.begin(), t.tensors.end());
        if (t.exponential) {
            t.exponential->normalize();
            if (t.exponential->is_trivial()) t.exponential.reset();
        }
        auto key = std::make_pair(std::move(t.tensors), std::move(t.exponential));
        auto [it, fresh] = merged.emplace(std::move(key), t.coeff);
        if (!fresh) it->second = it->second + t.coeff;
    }
    Expression e;
    for (auto& [key, coeff] : merged) {
        Coefficient c = coeff;
        c.reduce();
        if (c.is_zero()) continue;
        Term t;
        t.coeff = std::move(c);
        t.tensors = key.first;
        t.exponential = key.second;
        e.terms_.push_back(std::move(t));
    }
    return e;
}

Expression Expression::from_coefficient(Coefficient c) {
    Term t;
    t.coeff = std::move(c);
    return from_terms({std::move(t)});
}

Expression operator+(const Expression& a, const Expression& b) {
    std::vector<Term> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return Expression::from_terms(std::move(all));
}

Expression operator-(const Expression& a, const Expression& b) {
    std::vector<Term> all = a.terms_;
    for (auto t : b.terms_) {
        t.coeff = -t.coeff;
        all.push_back(std::move(t));
    }
    return Expression::from_terms(std::move(all));
}

Expression operator*(const Expression& a, const Expression& b) {
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (auto& ta : a.terms_) {
        for (auto& tb : b.terms_) {
            Term t;
            t.coeff = ta.coeff * tb.coeff;
            t.tensors = ta.tensors;
            t.tensors.insert(t.tensors.end(), tb.tensors.begin(), tb.tensors.end());
            if (ta.exponential && tb.exponential)
                t.exponential = ta.exponential->plus(*tb.exponential);
            else if (ta.exponential)
                t.exponential = ta.exponential;
            else if (tb.exponential)
                t.exponential = tb.exponential;
            out.push_back(std::move(t));
        }
    }
    return Expression::from_terms(std::move(out));
}

Expression Expression::scaled(const GaussRat& c) const {
    std::vector<Term> out = terms_;
    for (auto& t : out) t.coeff = t.coeff.scaled(c);
    return from_terms(std::move(out));
}

bool operator==(const Expression& a, const Expression& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i) {
        const Term& x = a.terms_[i];
        const Term& y = b.terms_[i];
        if (!(x.coeff == y.coeff) || x.tensors != y.tensors || x.exponential != y.exponential)
            return false;
    }
    return true;
}

namespace {

/// One contraction pass over a single term's tensor list.  Returns true if
/// a repeated index was resolved (term mutated in place).
bool contract_once(Term& t) {
    // occurrences: index -> list of (atom position, which index slot 0/1)
    std::map<Index, std::vector<std::pair<size_t, int>>> occ;
    for (size_t i = 0; i < t.tensors.size(); ++i) {
        const TensorAtom& a = t.tensors[i];
        if (a.kind == TensorAtom::Kind::metric) {
            occ[a.a].push_back({i, 0});
            occ[a.b].push_back({i, 1});
        } else if (a.kind == TensorAtom::Kind::mom) {
            occ[a.a].push_back({i, 0});
        }
    }
    for (auto& [index, places] : occ) {
        if (places.size() < 2) continue;
        if (places.size() > 2)
            throw MalformedExpression("Lorentz index " +
                                      SymbolTable::instance().index_name(index) +
                                      " occurs more than twice in one term");
        auto [i, si] = places[0];
        auto [j, sj] = places[1];
        TensorAtom x = t.tensors[i], y = t.tensors[j];
        auto erase_two = [&](size_t p, size_t q) {
            t.tensors.erase(t.tensors.begin() + std::max(p, q));
            t.tensors.erase(t.tensors.begin() + std::min(p, q));
        };
        if (i == j) {
            // eta^{mu mu} = spacetime dimension
            t.tensors.erase(t.tensors.begin() + i);
            t.coeff = t.coeff.scaled(GaussRat(4));
            return true;
        }
        if (x.kind == TensorAtom::Kind::metric && y.kind == TensorAtom::Kind::metric) {
            Index other_x = (si == 0) ? x.b : x.a;
            Index other_y = (sj == 0) ? y.b : y.a;
            erase_two(i, j);
            t.tensors.push_back(TensorAtom::metric(other_x, other_y));
            return true;
        }
        if (x.kind == TensorAtom::Kind::metric && y.kind == TensorAtom::Kind::mom) {
            Index other = (si == 0) ? x.b : x.a;
            erase_two(i, j);
            t.tensors.push_back(TensorAtom::mom(y.slot, other));
            return true;
        }
        if (x.kind == TensorAtom::Kind::mom && y.kind == TensorAtom::Kind::metric) {
            Index other = (sj == 0) ? y.b : y.a;
            erase_two(i, j);
            t.tensors.push_back(TensorAtom::mom(x.slot, other));
            return true;
        }
        // mom · mom -> scalar product in the coefficient
        erase_two(i, j);
        t.coeff = t.coeff * Coefficient(Poly(dot(x.slot, y.slot)));
        return true;
    }
    return false;
}

}  // namespace

Expression Expression::contract_indices() const {
    std::vector<Term> out;
    for (Term t : terms_) {
        while (contract_once(t)) {
        }
        out.push_back(std::move(t));
    }
    return from_terms(std::move(out));
}

namespace {

/// d poly / d xi_slot^index: chain rule through dot symbols.  Each result
/// entry is (poly factor, emitted momentum atom).
std::vector<std::pair<Poly, TensorAtom>> differentiate_poly(const Poly& p, Slot s, Index mu) {
    std::vector<std::pair<Poly, TensorAtom>> out;
    auto& table = SymbolTable::instance();
    for (Symbol x : p.symbols()) {
        auto pair = table.dot_slots(x);
        if (!pair) continue;
        auto [u, v] = *pair;
        Poly d = p.derivative(x);
        if (d.is_zero()) continue;
        if (u == s && v == s) {
            out.push_back({d.scaled(GaussRat(2)), TensorAtom::mom(s, mu)});
        } else if (u == s) {
            out.push_back({d, TensorAtom::mom(v, mu)});
        } else if (v == s) {
            out.push_back({d, TensorAtom::mom(u, mu)});
        }
    }
    return out;
}

}  // namespace

Expression Expression::differentiate(Slot s, Index mu) const {
    std::vector<Term> out;
    for (const Term& t : terms_) {
        // derivative of the coefficient numerator
        for (auto& [factor, atom] : differentiate_poly(t.coeff.num, s, mu)) {
            Term d;
            d.coeff = t.coeff;
            d.coeff.num = factor;
            d.coeff.reduce();
            d.tensors = t.tensors;
            d.tensors.push_back(atom);
            d.exponential = t.exponential;
            out.push_back(std::move(d));
        }
        for (auto& [base, exp] : t.coeff.den)
            if (!differentiate_poly(base, s, mu).empty())
                throw MalformedExpression("momentum-dependent denominator in differentiate");
        // derivative of momentum-component atoms
        for (size_t i = 0; i < t.tensors.size(); ++i) {
            const TensorAtom& a = t.tensors[i];
            if (a.kind != TensorAtom::Kind::mom || a.slot != s) continue;
            Term d;
            d.coeff = t.coeff;
            d.tensors = t.tensors;
            d.tensors.erase(d.tensors.begin() + i);
            d.tensors.push_back(TensorAtom::metric(a.a, mu));
            d.exponential = t.exponential;
            out.push_back(std::move(d));
        }
        // derivative of the exponential: -(d arg) exp(arg)
        if (t.exponential) {
            const QuadricArg& q = *t.exponential;
            if (!q.den.is_zero())
                for (auto& [factor, atom] : differentiate_poly(q.den, s, mu))
                    throw MalformedExpression("momentum-dependent exponential denominator");
            for (auto& [factor, atom] : differentiate_poly(q.num, s, mu)) {
                Term d;
                d.coeff = t.coeff * Coefficient::over(-factor, {{q.den, 1}});
                d.tensors = t.tensors;
                d.tensors.push_back(atom);
                d.exponential = t.exponential;
                out.push_back(std::move(d));
            }
            for (auto& [factor, atom] : differentiate_poly(q.affine, s, mu)) {
                Term d;
                d.coeff = t.coeff * Coefficient(-factor);
                d.tensors = t.tensors;
                d.tensors.push_back(atom);
                d.exponential = t.exponential;
                out.push_back(std::move(d));
            }
        }
    }
    return from_terms(std::move(out));
}

namespace {

/// Substitute dot symbols bilinearly through a routing.
Poly route_poly(const Poly& p, const Routing& routing) {
    auto& table = SymbolTable::instance();
    Poly result = p;
    for (Symbol x : p.symbols()) {
        auto pair = table.dot_slots(x);
        if (!pair) continue;
        auto [u, v] = *pair;
        const auto& cu = routing.at(u);
        const auto& cv = routing.at(v);
        Poly expanded;
        for (auto& [su, ru] : cu)
            for (auto& [sv, rv] : cv) expanded += Poly(dot(su, sv)).scaled(ru * rv);
        result = result.substitute(x, expanded);
    }
    return result;
}

}  // namespace

Expression Expression::substitute_momenta(const Routing& routing) const {
    std::vector<Term> out;
    for (const Term& t : terms_) {
        Term base;
        base.coeff = t.coeff;
        base.coeff.num = route_poly(t.coeff.num, routing);
        for (auto& [b, e] : base.coeff.den)
            b = route_poly(b, routing);
        base.coeff.reduce();
        if (t.exponential) {
            QuadricArg q;
            q.num = route_poly(t.exponential->num, routing);
            q.den = route_poly(t.exponential->den, routing);
            q.affine = route_poly(t.exponential->affine, routing);
            base.exponential = std::move(q);
        }
        // expand each momentum atom into its routed combination
        std::vector<Term> partial{base};
        for (const TensorAtom& a : t.tensors) {
            if (a.kind != TensorAtom::Kind::mom) {
                for (auto& p : partial) p.tensors.push_back(a);
                continue;
            }
            const auto& combo = routing.at(a.slot);
            std::vector<Term> next;
            for (auto& p : partial) {
                for (auto& [target, r] : combo) {
                    Term n = p;
                    n.coeff = n.coeff.scaled(r);
                    n.tensors.push_back(TensorAtom::mom(target, a.a));
                    next.push_back(std::move(n));
                }
            }
            partial = std::move(next);
        }
        for (auto& p : partial) out.push_back(std::move(p));
    }
    return from_terms(std::move(out));
}

std::optional<Expression> Expression::try_divide(const Expression& divisor) const {
    if (divisor.terms_.size() != 1) return std::nullopt;
    const Term& d = divisor.terms_[0];
    std::vector<Term> out;
    for (Term t : terms_) {
        // tensors of the divisor must appear verbatim
        for (const TensorAtom& a : d.tensors) {
            auto it = std::find(t.tensors.begin(), t.tensors.end(), a);
            if (it == t.tensors.end()) return std::nullopt;
            t.tensors.erase(it);
        }
        if (d.exponential) {
            if (!t.exponential || !(*t.exponential == *d.exponential)) return std::nullopt;
            t.exponential.reset();
        }
        auto q = t.coeff.try_divide_num(d.coeff.num);
        if (!q) return std::nullopt;
        t.coeff = std::move(*q);
        for (auto& [base, exp] : d.coeff.den) t.coeff.num *= base.pow(exp);
        t.coeff.reduce();
        out.push_back(std::move(t));
    }
    return from_terms(std::move(out));
}

std::set<Slot> Expression::slots() const {
    std::set<Slot> out;
    auto& table = SymbolTable::instance();
    auto scan_poly = [&](const Poly& p) {
        for (Symbol s : p.symbols())
            if (auto pair = table.dot_slots(s)) {
                out.insert(pair->first);
                out.insert(pair->second);
            }
    };
    for (const Term& t : terms_) {
        scan_poly(t.coeff.num);
        for (auto& [b, e] : t.coeff.den) scan_poly(b);
        for (const TensorAtom& a : t.tensors)
            if (a.kind == TensorAtom::Kind::mom) out.insert(a.slot);
        if (t.exponential) {
            scan_poly(t.exponential->num);
            scan_poly(t.exponential->den);
            scan_poly(t.exponential->affine);
        }
    }
    return out;
}

std::set<Index> Expression::free_indices() const {
    std::set<Index> out;
    for (const Term& t : terms_) {
        std::map<Index, int> count;
        for (const TensorAtom& a : t.tensors) {
            if (a.kind == TensorAtom::Kind::metric) {
                ++count[a.a];
                ++count[a.b];
            } else if (a.kind == TensorAtom::Kind::mom) {
                ++count[a.a];
            }
        }
        for (auto& [i, c] : count)
            if (c == 1) out.insert(i);
    }
    return out;
}

}  // namespace corolla
