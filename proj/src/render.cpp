#include "corolla/render.hpp"

#include <sstream>

#include <json.hpp>

namespace corolla {

namespace {

using nlohmann::json;

std::string symbol_text(Symbol s) {
    auto& table = SymbolTable::instance();
    if (auto pair = table.dot_slots(s)) {
        const std::string& a = table.slot_name(pair->first);
        const std::string& b = table.slot_name(pair->second);
        if (a == b) return a + "^2";
        return "(" + a + "." + b + ")";
    }
    return table.symbol_name(s);
}

std::string monomial_text(const Monomial& m, Format f) {
    auto& table = SymbolTable::instance();
    std::string out;
    for (auto& [s, e] : m.factors) {
        if (!out.empty()) out += (f == Format::latex) ? " " : "*";
        std::string name = (f == Format::latex) ? table.symbol_latex(s) : symbol_text(s);
        if (e > 1) {
            bool wrap = f == Format::latex && name.find(' ') != std::string::npos;
            if (wrap) name = "(" + name + ")";
            name += "^" + ((f == Format::latex && e > 9) ? "{" + std::to_string(e) + "}"
                                                         : std::to_string(e));
        }
        out += name;
    }
    return out;
}

std::string gauss_text(const GaussRat& c) { return c.str(); }

std::string poly_text(const Poly& p, Format f) {
    if (p.is_zero()) return "0";
    std::string out;
    // leading monomial first
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        GaussRat coeff = c;
        std::string sep;
        if (!out.empty()) {
            if (coeff.is_real() && cmp(coeff.re(), 0) < 0) {
                sep = " - ";
                coeff = -coeff;
            } else {
                sep = " + ";
            }
        }
        std::string body = monomial_text(m, f);
        std::string cs;
        if (!coeff.is_one() || body.empty()) cs = gauss_text(coeff);
        std::string glue = (!cs.empty() && !body.empty()) ? (f == Format::latex ? " " : "*") : "";
        out += sep + cs + glue + body;
    }
    return out;
}

std::string paren(const std::string& s, bool need) { return need ? "(" + s + ")" : s; }

std::string coefficient_text(const Coefficient& c, Format f, bool has_more_factors) {
    bool latex = f == Format::latex;
    std::string num = poly_text(c.num, f);
    if (c.den.empty()) {
        return paren(num, has_more_factors && c.num.term_count() > 1);
    }
    std::string den;
    for (auto& [base, exp] : c.den) {
        if (!den.empty()) den += latex ? " " : "*";
        bool wrap = latex ? (exp > 1 && base.term_count() > 1)
                          : (base.term_count() > 1 || exp > 1);
        std::string b = paren(poly_text(base, f), wrap);
        if (exp > 1) b += "^" + std::to_string(exp);
        den += b;
    }
    if (latex) return "\\frac{" + num + "}{" + den + "}";
    return paren(num, c.num.term_count() > 1) + "/" + paren(den, c.den.size() > 1);
}

std::string tensor_text(const TensorAtom& a, Format f) {
    auto& table = SymbolTable::instance();
    bool latex = f == Format::latex;
    switch (a.kind) {
        case TensorAtom::Kind::metric:
            if (latex)
                return "\\eta^{" + table.index_latex(a.a) + " " + table.index_latex(a.b) + "}";
            return "eta[" + table.index_name(a.a) + "," + table.index_name(a.b) + "]";
        case TensorAtom::Kind::mom:
            if (latex) return table.slot_latex(a.slot) + "^{" + table.index_latex(a.a) + "}";
            return table.slot_name(a.slot) + "[" + table.index_name(a.a) + "]";
        case TensorAtom::Kind::structure:
            return table.symbol_name(a.token);
    }
    return {};
}

std::string exp_text(const QuadricArg& q, Format f) {
    bool latex = f == Format::latex;
    std::string arg;
    if (!q.num.is_zero()) {
        if (latex)
            arg += "-\\frac{" + poly_text(q.num, f) + "}{" + poly_text(q.den, f) + "}";
        else
            arg += "-" + paren(poly_text(q.num, f), q.num.term_count() > 1) + "/" +
                   paren(poly_text(q.den, f), true);
    }
    if (!q.affine.is_zero()) {
        arg += " - " + paren(poly_text(q.affine, f), q.affine.term_count() > 1 && !latex);
    }
    if (arg.empty()) arg = "0";
    if (latex) return "e^{" + arg + "}";
    return "exp(" + arg + ")";
}

std::string term_text(const Term& t, Format f) {
    bool latex = f == Format::latex;
    std::string mul = latex ? " " : "*";
    bool more = !t.tensors.empty() || t.exponential.has_value();
    std::string out = coefficient_text(t.coeff, f, more);
    bool coeff_is_one = t.coeff.is_one();
    if (coeff_is_one && more) out.clear();
    for (const TensorAtom& a : t.tensors) {
        if (!out.empty()) out += mul;
        out += tensor_text(a, f);
    }
    if (t.exponential) {
        if (!out.empty()) out += mul;
        out += exp_text(*t.exponential, f);
    }
    return out;
}

json poly_json(const Poly& p) {
    json terms = json::array();
    for (auto& [m, c] : p.terms()) {
        json mono = json::array();
        for (auto& [s, e] : m.factors)
            mono.push_back({SymbolTable::instance().symbol_name(s), e});
        terms.push_back({{"re", c.re().get_str()}, {"im", c.im().get_str()}, {"mono", mono}});
    }
    return terms;
}

Poly poly_from_json(const json& j) {
    auto& table = SymbolTable::instance();
    Poly p;
    for (auto& t : j) {
        GaussRat c(mpq_class(t.at("re").get<std::string>()),
                   mpq_class(t.at("im").get<std::string>()));
        Monomial m;
        for (auto& f : t.at("mono")) {
            std::string name = f.at(0).get<std::string>();
            unsigned e = f.at(1).get<unsigned>();
            auto dotpos = name.find('.');
            Symbol s = (dotpos == std::string::npos)
                           ? table.symbol(name)
                           : table.dot(table.slot(name.substr(0, dotpos)),
                                       table.slot(name.substr(dotpos + 1)));
            m.factors.push_back({s, e});
        }
        std::sort(m.factors.begin(), m.factors.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        p.add_term(m, c);
    }
    return p;
}

json term_json(const Term& t) {
    auto& table = SymbolTable::instance();
    json out;
    out["num"] = poly_json(t.coeff.num);
    json den = json::array();
    for (auto& [base, exp] : t.coeff.den) den.push_back({{"base", poly_json(base)}, {"exp", exp}});
    out["den"] = den;
    json tensors = json::array();
    for (const TensorAtom& a : t.tensors) {
        switch (a.kind) {
            case TensorAtom::Kind::metric:
                tensors.push_back({{"kind", "metric"},
                                   {"i", table.index_name(a.a)},
                                   {"j", table.index_name(a.b)}});
                break;
            case TensorAtom::Kind::mom:
                tensors.push_back({{"kind", "mom"},
                                   {"slot", table.slot_name(a.slot)},
                                   {"index", table.index_name(a.a)}});
                break;
            case TensorAtom::Kind::structure:
                tensors.push_back({{"kind", "color"}, {"token", table.symbol_name(a.token)}});
                break;
        }
    }
    out["tensors"] = tensors;
    if (t.exponential) {
        out["exp"] = {{"num", poly_json(t.exponential->num)},
                      {"den", poly_json(t.exponential->den)},
                      {"affine", poly_json(t.exponential->affine)}};
    }
    return out;
}

}  // namespace

std::string render(const Poly& p, Format f) {
    if (f == Format::json) return render(Expression::from_poly(p), Format::json);
    return poly_text(p, f);
}

std::string render(const Expression& e, Format f) {
    if (f == Format::json) {
        json out;
        json terms = json::array();
        for (const Term& t : e.terms()) terms.push_back(term_json(t));
        out["terms"] = terms;
        return out.dump(2);
    }
    if (e.is_zero()) return "0";
    std::string out;
    for (const Term& t : e.terms()) {
        if (!out.empty()) out += " + ";
        out += term_text(t, f);
    }
    return out;
}

Expression parse_expression_json(const std::string& text) {
    auto& table = SymbolTable::instance();
    json j = json::parse(text);
    std::vector<Term> terms;
    for (auto& jt : j.at("terms")) {
        Term t;
        t.coeff.num = poly_from_json(jt.at("num"));
        for (auto& d : jt.at("den"))
            t.coeff.push_den(poly_from_json(d.at("base")), d.at("exp").get<unsigned>());
        for (auto& a : jt.at("tensors")) {
            std::string kind = a.at("kind").get<std::string>();
            if (kind == "metric")
                t.tensors.push_back(TensorAtom::metric(table.index(a.at("i").get<std::string>()),
                                                       table.index(a.at("j").get<std::string>())));
            else if (kind == "mom")
                t.tensors.push_back(TensorAtom::mom(table.slot(a.at("slot").get<std::string>()),
                                                    table.index(a.at("index").get<std::string>())));
            else if (kind == "color")
                t.tensors.push_back(
                    TensorAtom::structure(table.symbol(a.at("token").get<std::string>())));
            else
                throw MalformedExpression("unknown tensor kind in JSON: " + kind);
        }
        if (jt.contains("exp")) {
            QuadricArg q;
            q.num = poly_from_json(jt.at("exp").at("num"));
            q.den = poly_from_json(jt.at("exp").at("den"));
            q.affine = poly_from_json(jt.at("exp").at("affine"));
            t.exponential = std::move(q);
        }
        terms.push_back(std::move(t));
    }
    return Expression::from_terms(std::move(terms));
}

Format parse_format(const std::string& name) {
    if (name == "text") return Format::text;
    if (name == "latex") return Format::latex;
    if (name == "json") return Format::json;
    throw std::invalid_argument("unknown format: " + name);
}

}  // namespace corolla
