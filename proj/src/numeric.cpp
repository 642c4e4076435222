#include "corolla/numeric.hpp"

#include <stdexcept>

namespace corolla {

namespace {

std::complex<double> eval_symbol(Symbol s, const NumericContext& ctx) {
    auto it = ctx.symbol_values.find(s);
    if (it != ctx.symbol_values.end()) return it->second;
    if (auto pair = SymbolTable::instance().dot_slots(s)) {
        auto u = ctx.slot_vectors.find(pair->first);
        auto v = ctx.slot_vectors.find(pair->second);
        if (u == ctx.slot_vectors.end() || v == ctx.slot_vectors.end())
            throw std::out_of_range("no vector assigned for slot in dot product " +
                                    SymbolTable::instance().symbol_name(s));
        std::complex<double> sum = 0;
        for (int k = 0; k < 4; ++k) sum += u->second[k] * v->second[k];
        return sum;
    }
    throw std::out_of_range("no numeric value for symbol " +
                            SymbolTable::instance().symbol_name(s));
}

std::complex<double> eval_poly(const Poly& p, const NumericContext& ctx) {
    std::complex<double> sum = 0;
    for (auto& [m, c] : p.terms()) {
        std::complex<double> t = c.to_complex();
        for (auto& [s, e] : m.factors) {
            std::complex<double> v = eval_symbol(s, ctx);
            for (unsigned k = 0; k < e; ++k) t *= v;
        }
        sum += t;
    }
    return sum;
}

int component(Index i, const NumericContext& ctx) {
    auto it = ctx.index_components.find(i);
    if (it == ctx.index_components.end())
        throw std::out_of_range("no component assigned for free index " +
                                SymbolTable::instance().index_name(i));
    return it->second;
}

}  // namespace

std::complex<double> eval(const Expression& e, const NumericContext& ctx) {
    std::complex<double> total = 0;
    for (const Term& t : e.terms()) {
        std::complex<double> v = eval_poly(t.coeff.num, ctx);
        for (auto& [base, exp] : t.coeff.den) {
            std::complex<double> d = eval_poly(base, ctx);
            for (unsigned k = 0; k < exp; ++k) v /= d;
        }
        for (const TensorAtom& a : t.tensors) {
            switch (a.kind) {
                case TensorAtom::Kind::metric:
                    v *= (component(a.a, ctx) == component(a.b, ctx)) ? 1.0 : 0.0;
                    break;
                case TensorAtom::Kind::mom: {
                    auto it = ctx.slot_vectors.find(a.slot);
                    if (it == ctx.slot_vectors.end())
                        throw std::out_of_range("no vector assigned for slot " +
                                                SymbolTable::instance().slot_name(a.slot));
                    v *= it->second[component(a.a, ctx)];
                    break;
                }
                case TensorAtom::Kind::structure: {
                    auto it = ctx.symbol_values.find(a.token);
                    v *= (it == ctx.symbol_values.end()) ? 1.0 : it->second;
                    break;
                }
            }
        }
        if (t.exponential) {
            const QuadricArg& q = *t.exponential;
            std::complex<double> arg = eval_poly(q.affine, ctx);
            if (!q.num.is_zero()) arg += eval_poly(q.num, ctx) / eval_poly(q.den, ctx);
            v *= std::exp(-arg);
        }
        total += v;
    }
    return total;
}

}  // namespace corolla
