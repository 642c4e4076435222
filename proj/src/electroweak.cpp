#include "corolla/electroweak.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace corolla {

namespace {

bool is_charged(const std::string& base) { return base == "W" || base == "phi"; }
bool is_scalar(const std::string& base) {
    return base == "h" || base == "phi" || base == "phiZ";
}

/// Label as seen incoming at a vertex: neutral labels verbatim, charged
/// ones signed by the flow direction relative to the vertex.
std::string incoming_label(const FeynmanGraph& g, int edge, int vertex, const std::string& base,
                           int orient) {
    if (!is_charged(base)) return base;
    // orient +1: positive charge flows tail -> head
    int inc = g.incidence(vertex, edge);  // +1 at head / attachment
    bool entering = (inc > 0) == (orient > 0);
    return base + (entering ? "+" : "-");
}

Expression parse_coupling(const std::string& text, int lineno) {
    // product grammar: factor (*|/ factor)*, factor = i | -i | -1 | int[/int]
    // | name | sin(tW) | cos(tW), optionally ^k; parentheses around a
    // leading group are tolerated: (g/cos(tW))*mZ
    Coefficient acc(1);
    size_t pos = 0;
    bool dividing = false;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    std::function<void(size_t)> parse_chunk = [&](size_t end) {
        while (pos < end) {
            skip_ws();
            if (pos >= end) break;
            char c = text[pos];
            if (c == '*') {
                dividing = false;
                ++pos;
                continue;
            }
            if (c == '/') {
                dividing = true;
                ++pos;
                continue;
            }
            if (c == '(') {
                size_t depth = 1, j = pos + 1;
                while (j < end && depth) {
                    if (text[j] == '(') ++depth;
                    if (text[j] == ')') --depth;
                    ++j;
                }
                if (depth) throw RuleParseError(lineno, "unbalanced parentheses");
                bool outer_div = dividing;
                dividing = false;
                size_t save = pos;
                pos = save + 1;
                if (outer_div) {
                    // divide by a whole group: parse it separately
                    Coefficient outer = acc;
                    acc = Coefficient(1);
                    parse_chunk(j - 1);
                    Coefficient group = acc;
                    acc = outer;
                    for (auto& [b, e] : group.den) acc = acc * Coefficient(b.pow(e));
                    acc.push_den(group.num, 1);
                    acc.reduce();
                } else {
                    parse_chunk(j - 1);
                }
                pos = j;
                dividing = false;
                continue;
            }
            // read a token up to an operator
            size_t j = pos;
            int depth = 0;
            while (j < end) {
                char d = text[j];
                if (d == '(') ++depth;
                if (d == ')') --depth;
                if (depth == 0 && (d == '*' || d == '/' || std::isspace(static_cast<unsigned char>(d))))
                    break;
                ++j;
            }
            std::string token = text.substr(pos, j - pos);
            pos = j;
            unsigned exponent = 1;
            auto caret = token.find('^');
            if (caret != std::string::npos) {
                exponent = static_cast<unsigned>(std::stoul(token.substr(caret + 1)));
                token.erase(caret);
            }
            Poly factor;
            if (token == "i") {
                factor = Poly(GaussRat::i());
            } else if (token == "-i") {
                factor = Poly(-GaussRat::i());
            } else if (token == "sin(tW)") {
                factor = Poly(SymbolTable::instance().symbol("sin_tW", "\\sin\\theta_W"));
            } else if (token == "cos(tW)") {
                factor = Poly(SymbolTable::instance().symbol("cos_tW", "\\cos\\theta_W"));
            } else if (!token.empty() &&
                       (std::isdigit(static_cast<unsigned char>(token[0])) || token[0] == '-')) {
                auto slash = token.find('/');
                long num = std::stol(token.substr(0, slash));
                long den = slash == std::string::npos ? 1 : std::stol(token.substr(slash + 1));
                factor = Poly(GaussRat(num, den));
            } else if (!token.empty()) {
                factor = Poly(sym(token));
            } else {
                throw RuleParseError(lineno, "empty factor in coupling expression");
            }
            Poly powered = factor.pow(exponent);
            if (dividing) {
                if (powered.is_constant())
                    acc = acc.scaled(powered.constant_value().inverse());
                else
                    acc.push_den(powered, 1);
                acc.reduce();
                dividing = false;
            } else {
                acc = acc * Coefficient(powered);
            }
        }
    };
    parse_chunk(text.size());
    return Expression::from_coefficient(acc);
}

}  // namespace

CouplingRules CouplingRules::parse(const std::string& text) {
    CouplingRules out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "rule") {
            int valence;
            std::string labels_token;
            if (!(ls >> valence >> labels_token))
                throw RuleParseError(lineno, "expected: rule <valence> <labels> = <coupling>");
            std::vector<std::string> labels;
            std::string cur;
            for (char c : labels_token) {
                if (c == ',') {
                    labels.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            labels.push_back(cur);
            if (static_cast<int>(labels.size()) != valence)
                throw RuleParseError(lineno, "label count does not match the stated valence");
            std::string eq;
            if (!(ls >> eq) || eq != "=") throw RuleParseError(lineno, "expected '='");
            std::string rest;
            std::getline(ls, rest);
            std::sort(labels.begin(), labels.end());
            out.rules_[labels] = parse_coupling(rest, lineno);
        } else if (kw == "mass") {
            std::string label, symbol;
            if (!(ls >> label >> symbol))
                throw RuleParseError(lineno, "expected: mass <label> <symbol>");
            out.masses_[label] = sym(symbol);
        } else {
            throw RuleParseError(lineno, "unknown directive '" + kw + "'");
        }
    }
    return out;
}

CouplingRules CouplingRules::standard_model() {
    static const char* text = R"(
# Electroweak gauge sector (Feynman gauge); ghosts share these entries.
rule 3 W+,W-,Z = g*cos(tW)
rule 3 W+,W-,A = e
# Scalar boson couplings to gauge boson pairs.
rule 3 h,W+,W- = g*mW
rule 3 h,Z,Z = (g/cos(tW))*mZ
rule 3 phi+,W-,A = e*mW
rule 3 phi-,W+,A = e*mW
rule 3 phi+,W-,Z = g*mZ*sin(tW)^2
rule 3 phi-,W+,Z = g*mZ*sin(tW)^2
mass W mW
mass Z mZ
mass phi mW
mass phiZ mZ
mass h mh
)";
    return parse(text);
}

const Expression* CouplingRules::lookup(std::vector<std::string> labels) const {
    std::sort(labels.begin(), labels.end());
    auto it = rules_.find(labels);
    return it == rules_.end() ? nullptr : &it->second;
}

Poly CouplingRules::mass_squared(const std::string& base_label) const {
    auto it = masses_.find(base_label);
    if (it == masses_.end()) return Poly();
    return Poly(Monomial::of(it->second, 2), GaussRat(1));
}

std::vector<GaugeLabeling> gauge_boson_labelings(const FeynmanGraph& g) {
    g.require_valid();
    std::vector<GaugeLabeling> out;
    std::vector<EdgeLabeling> family;
    for (const TwoFactor& f : two_factors(g)) {
        std::vector<int> complement;
        for (int e = 0; e < g.edge_count(); ++e)
            if (std::find(f.edges.begin(), f.edges.end(), e) == f.edges.end())
                complement.push_back(e);
        // P_Z over the power set of the complement, in subset-mask order
        for (size_t mask = 0; mask < (size_t{1} << complement.size()); ++mask) {
            GaugeLabeling l;
            l.w_factor = f;
            for (size_t k = 0; k < complement.size(); ++k)
                (mask >> k & 1 ? l.z_edges : l.a_edges).push_back(complement[k]);
            out.push_back(std::move(l));
            EdgeLabeling lab = EdgeLabeling::untyped(g);
            for (int e : f.edges) lab.labels[e] = "W";
            for (int e : out.back().z_edges) lab.labels[e] = "Z";
            for (int e : out.back().a_edges) lab.labels[e] = "A";
            family.push_back(std::move(lab));
        }
    }
    SymIso si = symmetry_and_iso(g, family);
    for (size_t k = 0; k < out.size(); ++k) {
        out[k].sym = si.per_variant[k].first;
        out[k].iso = si.per_variant[k].second;
    }
    return out;
}

namespace {

/// Vertices adjacent to any of the given edges.
std::vector<char> adjacent_vertices(const FeynmanGraph& g, const std::vector<int>& edges) {
    std::vector<char> out(g.vertex_count(), 0);
    for (int e : edges)
        for (int v : g.endpoints(e)) out[v] = 1;
    return out;
}

Expression j_summand(const FeynmanGraph& g, const GaugeLabeling& l, bool with_ratio,
                     long sym_graph) {
    Symbol mW = sym("mW"), mZ = sym("mZ");
    auto z_vertices = adjacent_vertices(g, l.z_edges);
    int nz = static_cast<int>(std::count(z_vertices.begin(), z_vertices.end(), 1));
    int nv = g.vertex_count();
    GaussRat phase = GaussRat::i_pow(nv + g.internal_edge_count());
    Poly coupling =
        Poly(Monomial::of(sym("g"), static_cast<unsigned>(nz))
                 .times(Monomial::of(SymbolTable::instance().symbol("cos_tW", "\\cos\\theta_W"),
                                     static_cast<unsigned>(nz)))
                 .times(Monomial::of(sym("e"), static_cast<unsigned>(nv - nz))),
             phase);
    if (with_ratio) {
        coupling = coupling.scaled(GaussRat(sym_graph) / GaussRat(l.sym * l.iso));
    }
    QuadricArg arg;
    for (int e : l.w_factor.edges)
        arg.affine.add_term(Monomial::of(mW, 2).times(Monomial::of(g.schwinger(e))), GaussRat(1));
    for (int e : l.z_edges)
        arg.affine.add_term(Monomial::of(mZ, 2).times(Monomial::of(g.schwinger(e))), GaussRat(1));
    Term t;
    t.coeff = Coefficient(coupling);
    t.exponential = arg;
    return Expression::from_terms({t});
}

Expression j_factor_impl(const FeynmanGraph& g, bool with_ratio) {
    g.require_valid();
    if (!g.connected_on_internal()) throw DisconnectedGraph("j_factor: graph is disconnected");
    // QCD term: i^{internal} gs^{vertices} color(Gamma)
    Term qcd;
    qcd.coeff = Coefficient(
        Poly(Monomial::of(sym("gs"), static_cast<unsigned>(g.vertex_count())),
             GaussRat::i_pow(g.internal_edge_count())));
    qcd.tensors.push_back(TensorAtom::structure(default_color_token(g)));
    Expression out = Expression::from_terms({qcd});
    auto labelings = gauge_boson_labelings(g);
    long sym_graph = symmetry_factor(g);
    for (const GaugeLabeling& l : labelings) out += j_summand(g, l, with_ratio, sym_graph);
    return out;
}

}  // namespace

Expression j_factor(const FeynmanGraph& g) { return j_factor_impl(g, false); }
Expression j_factor_theorem_form(const FeynmanGraph& g) { return j_factor_impl(g, true); }

std::optional<std::pair<HalfEdge, HalfEdge>> h2_set(const FeynmanGraph& g, int edge,
                                                    const std::vector<int>& p_hg) {
    if (g.edge(edge).external) return std::nullopt;
    auto in_p = [&](int e) {
        return std::find(p_hg.begin(), p_hg.end(), e) != p_hg.end();
    };
    std::vector<HalfEdge> adjacent;
    for (int v : g.endpoints(edge))
        for (int e : g.incident_edges(v))
            if (e != edge) adjacent.push_back({v, e});
    if (adjacent.size() != 4) return std::nullopt;
    std::vector<HalfEdge> outside;
    int inside = 0;
    for (HalfEdge h : adjacent)
        if (in_p(h.edge)) ++inside;
        else outside.push_back(h);
    if (inside == 2 && outside.size() == 2) return std::make_pair(outside[0], outside[1]);
    return std::nullopt;
}

std::vector<int> shrink_candidates(const FeynmanGraph& g, const std::vector<int>& p_hg,
                                   const std::vector<Cycle>& ghost_tuple,
                                   const std::vector<int>& excluded) {
    auto in_p = [&](int e) { return std::find(p_hg.begin(), p_hg.end(), e) != p_hg.end(); };
    std::vector<char> ghost_vertex(g.vertex_count(), 0);
    for (const Cycle& c : ghost_tuple)
        for (int v : c.vertices) ghost_vertex[v] = 1;
    std::vector<char> excluded_vertex(g.vertex_count(), 0);
    for (int e : excluded)
        for (int v : g.endpoints(e)) excluded_vertex[v] = 1;
    std::vector<int> out;
    for (int e : p_hg) {
        if (g.edge(e).external) continue;
        bool blocked = false;
        for (int v : g.endpoints(e))
            if (ghost_vertex[v] || excluded_vertex[v]) blocked = true;
        if (blocked) continue;
        // the four adjacent half-edges; shrink needs 2 (on distinct edges)
        // or 4 of them on scalar candidates
        std::vector<HalfEdge> adjacent;
        for (int v : g.endpoints(e))
            for (int e2 : g.incident_edges(v))
                if (e2 != e) adjacent.push_back({v, e2});
        std::vector<int> inside_edges;
        for (HalfEdge h : adjacent)
            if (in_p(h.edge)) inside_edges.push_back(h.edge);
        if (inside_edges.size() == 4) {
            out.push_back(e);
        } else if (inside_edges.size() == 2 && inside_edges[0] != inside_edges[1]) {
            out.push_back(e);
        }
    }
    return out;
}

std::vector<ScalarSets> scalar_sets(const FeynmanGraph& g, const std::vector<Cycle>& ghost_tuple,
                                    const std::vector<int>& excluded) {
    g.require_valid();
    std::vector<int> allowed;
    for (int e = 0; e < g.edge_count(); ++e) {
        bool in_ghost = false;
        for (const Cycle& c : ghost_tuple)
            if (c.contains_edge(e)) in_ghost = true;
        if (!in_ghost) allowed.push_back(e);
    }
    std::vector<ScalarSets> out;
    for (size_t mask = 0; mask < (size_t{1} << allowed.size()); ++mask) {
        std::vector<int> p_hg;
        for (size_t k = 0; k < allowed.size(); ++k)
            if (mask >> k & 1) p_hg.push_back(allowed[k]);
        auto candidates = shrink_candidates(g, p_hg, ghost_tuple, excluded);
        // all pairwise non-adjacent subsets of the candidates
        std::vector<std::vector<int>> p4_sets;
        std::vector<int> chosen;
        std::function<void(size_t)> rec = [&](size_t next) {
            p4_sets.push_back(chosen);
            for (size_t k = next; k < candidates.size(); ++k) {
                bool adjacent = false;
                for (int c : chosen)
                    for (int v : g.endpoints(candidates[k]))
                        if (g.incident(v, c)) adjacent = true;
                if (adjacent) continue;
                chosen.push_back(candidates[k]);
                rec(k + 1);
                chosen.pop_back();
            }
        };
        rec(0);
        for (auto& p4 : p4_sets) {
            ScalarSets s;
            s.ghosts = ghost_tuple;
            s.p_hg = p_hg;
            s.p4 = p4;
            for (int e : p4)
                if (auto pair = h2_set(g, e, p_hg)) s.h2[e] = *pair;
            out.push_back(std::move(s));
        }
    }
    return out;
}

namespace {

struct OrientedAssignment {
    std::vector<std::string> base;
    std::vector<int> orient;
};

/// Constraint search over particle labels.  Ghost-cycle edges and other
/// non-scalar edges draw from {W, Z, A}; scalar candidates from
/// {h, phi, phiZ}; shrunk edges carry no label and their endpoints merge
/// into a 4-valent vertex that is checked against 4-valent rules.
std::vector<OrientedAssignment> solve_labelings(const FeynmanGraph& g, const ScalarSets& s,
                                                const CouplingRules& rules) {
    int ne = g.edge_count();
    auto is_shrunk = [&](int e) {
        return std::find(s.p4.begin(), s.p4.end(), e) != s.p4.end();
    };
    auto is_scalar_edge = [&](int e) {
        return std::find(s.p_hg.begin(), s.p_hg.end(), e) != s.p_hg.end();
    };
    // merged-vertex bookkeeping: representative vertex per shrink edge
    std::vector<int> merged_with(g.vertex_count(), -1);
    for (int e : s.p4) {
        auto ends = g.endpoints(e);
        merged_with[ends[0]] = ends[1];
        merged_with[ends[1]] = ends[0];
    }
    std::vector<OrientedAssignment> out;
    std::vector<std::string> base(ne);
    std::vector<int> orient(ne, 0);

    // canonical representative of a (possibly merged) vertex
    auto canonical = [&](int v) {
        return merged_with[v] >= 0 ? std::min(v, merged_with[v]) : v;
    };
    auto member_vertices = [&](int cv) {
        std::vector<int> vs{cv};
        if (merged_with[cv] >= 0) vs.push_back(merged_with[cv]);
        return vs;
    };
    auto vertex_complete = [&](int cv) {
        for (int v : member_vertices(cv))
            for (int e : g.incident_edges(v))
                if (!is_shrunk(e) && base[e].empty()) return false;
        return true;
    };
    auto vertex_ok = [&](int cv) {
        std::vector<std::string> labels;
        for (int v : member_vertices(cv))
            for (int e : g.incident_edges(v))
                if (!is_shrunk(e)) labels.push_back(incoming_label(g, e, v, base[e], orient[e]));
        return rules.lookup(std::move(labels)) != nullptr;
    };

    std::function<void(int)> rec = [&](int e) {
        while (e < ne && is_shrunk(e)) ++e;
        if (e == ne) {
            out.push_back({base, orient});
            return;
        }
        std::vector<std::pair<std::string, int>> options;
        if (is_scalar_edge(e))
            options = {{"h", 0}, {"phiZ", 0}, {"phi", +1}, {"phi", -1}};
        else
            options = {{"W", +1}, {"W", -1}, {"Z", 0}, {"A", 0}};
        for (auto& [b, o] : options) {
            base[e] = b;
            orient[e] = o;
            bool ok = true;
            for (int v : g.endpoints(e)) {
                int cv = canonical(v);
                if (vertex_complete(cv) && !vertex_ok(cv)) ok = false;
            }
            if (ok) rec(e + 1);
        }
        base[e].clear();
        orient[e] = 0;
    };
    rec(0);
    return out;
}

EdgeLabeling to_edge_labeling(const FeynmanGraph& g, const ScalarSets& s,
                              const ParticleLabeling& l) {
    EdgeLabeling lab = EdgeLabeling::untyped(g);
    for (int e = 0; e < g.edge_count(); ++e) {
        lab.labels[e] = l.base[e];
        for (const Cycle& c : s.ghosts)
            if (c.contains_edge(e)) lab.labels[e] = "c:" + lab.labels[e];
        if (std::find(s.p4.begin(), s.p4.end(), e) != s.p4.end()) lab.labels[e] = "<shrunk>";
    }
    return lab;
}

}  // namespace

std::vector<ParticleLabeling> enumerate_labelings(const FeynmanGraph& g, const ScalarSets& s,
                                                  const CouplingRules& rules) {
    g.require_valid();
    std::vector<ParticleLabeling> out;
    std::map<std::vector<std::string>, long> classes;  // base labels -> orientation count
    for (const OrientedAssignment& a : solve_labelings(g, s, rules)) ++classes[a.base];
    for (auto& [base, orientations] : classes) {
        ParticleLabeling l;
        l.base = base;
        l.orientations = orientations;
        out.push_back(std::move(l));
    }
    std::vector<EdgeLabeling> family;
    for (const ParticleLabeling& l : out) family.push_back(to_edge_labeling(g, s, l));
    SymIso si = symmetry_and_iso(g, family);
    for (size_t k = 0; k < out.size(); ++k) {
        out[k].sym = si.per_variant[k].first;
        out[k].iso = si.per_variant[k].second;
    }
    return out;
}

Expression coupling_product(const FeynmanGraph& g, const ParticleLabeling& l, const ScalarSets& s,
                            const CouplingRules& rules) {
    auto is_shrunk = [&](int e) {
        return std::find(s.p4.begin(), s.p4.end(), e) != s.p4.end();
    };
    // pick one consistent orientation to read the vertex rules
    std::vector<int> orient(g.edge_count(), 0);
    for (const auto& a : solve_labelings(g, s, rules))
        if (a.base == l.base) {
            orient = a.orient;
            break;
        }
    std::vector<int> merged_with(g.vertex_count(), -1);
    for (int e : s.p4) {
        auto ends = g.endpoints(e);
        merged_with[ends[0]] = ends[1];
        merged_with[ends[1]] = ends[0];
    }
    Expression product = Expression::one();
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (merged_with[v] >= 0 && merged_with[v] < v) continue;
        std::vector<std::string> labels;
        for (int e : g.incident_edges(v))
            if (!is_shrunk(e)) labels.push_back(incoming_label(g, e, v, l.base[e], orient[e]));
        if (merged_with[v] >= 0)
            for (int e : g.incident_edges(merged_with[v]))
                if (!is_shrunk(e))
                    labels.push_back(
                        incoming_label(g, e, merged_with[v], l.base[e], orient[e]));
        const Expression* rule = rules.lookup(labels);
        if (!rule) {
            std::string key;
            for (auto& x : labels) key += (key.empty() ? "" : ",") + x;
            throw MissingRule("no coupling rule for vertex {" + key + "}");
        }
        product *= *rule;
    }
    return product;
}

CorollaPolynomial corolla_ew(const FeynmanGraph& g, const CouplingRules& rules) {
    g.require_valid();
    if (!g.connected_on_internal()) throw DisconnectedGraph("corolla_ew: graph is disconnected");
    long sym_graph = symmetry_factor(g);
    GaussRat phase = GaussRat::i_pow(g.vertex_count() + g.internal_edge_count());
    CorollaPolynomial out;
    int loops = first_betti_number(g);
    for (int i = 0; i <= loops; ++i) {
        std::vector<std::vector<Cycle>> tuples;
        if (i == 0)
            tuples.push_back({});
        else
            tuples = disjoint_cycle_tuples(g, i);
        GaussRat sign(i % 2 == 0 ? 1 : -1);
        for (auto& tuple : tuples) {
            for (const ScalarSets& s : scalar_sets(g, tuple)) {
                auto labelings = enumerate_labelings(g, s, rules);
                if (labelings.empty()) continue;
                // scalar half-edge set S = P_HG^{1/2} \ P4^{1/2}
                auto in_S = [&](HalfEdge h) {
                    bool scalar =
                        std::find(s.p_hg.begin(), s.p_hg.end(), h.edge) != s.p_hg.end();
                    bool shrunk = std::find(s.p4.begin(), s.p4.end(), h.edge) != s.p4.end();
                    return scalar && !shrunk;
                };
                std::vector<char> ghost_vertex(g.vertex_count(), 0);
                for (const Cycle& c : tuple)
                    for (int v : c.vertices) ghost_vertex[v] = 1;
                auto scalar_vertex = adjacent_vertices(g, s.p_hg);

                // structural half-edge polynomial shared by all labelings
                CorollaPolynomial structural = CorollaPolynomial::unit(i);
                bool zero_term = false;
                for (const Cycle& c : tuple) {
                    CorollaPolynomial gc = ghost_cycle_polynomial(g, c);
                    CorollaPolynomial shifted;
                    for (auto& [key, coeff] : gc.terms()) shifted.add(0, key.second, coeff);
                    structural = structural * shifted;
                }
                for (int v = 0; v < g.vertex_count(); ++v)
                    if (!ghost_vertex[v] && !scalar_vertex[v])
                        structural = structural * vertex_polynomial(g, v);
                for (HalfEdge h : g.half_edges()) {
                    HalfEdge succ = g.successor(h), pred = g.predecessor(h);
                    if (in_S(h) && !in_S(succ) && !in_S(pred)) {
                        CorollaPolynomial b;
                        b.add(0, {{HalfEdgeVar::Kind::b, h}}, Expression::one());
                        structural = structural * b;
                    }
                    if (!in_S(h) && in_S(succ) && in_S(pred)) {
                        CorollaPolynomial a;
                        a.add(0, {{HalfEdgeVar::Kind::a_plus, h}}, Expression::one());
                        a.add(0, {{HalfEdgeVar::Kind::a_minus, h}}, Expression::one());
                        structural = structural * a;
                    }
                }
                for (int e : s.p4) {
                    auto it = s.h2.find(e);
                    if (it == s.h2.end()) {
                        zero_term = true;  // empty H2 product is 0 by convention
                        break;
                    }
                    CorollaPolynomial b;
                    b.add(0,
                          {{HalfEdgeVar::Kind::b, it->second.first},
                           {HalfEdgeVar::Kind::b, it->second.second}},
                          Expression::one());
                    structural = structural * b;
                }
                if (zero_term) continue;

                for (const ParticleLabeling& l : labelings) {
                    GaussRat ratio = GaussRat(sym_graph) / GaussRat(l.sym * l.iso);
                    Expression coupling = coupling_product(g, l, s, rules);
                    QuadricArg arg;
                    for (int e = 0; e < g.edge_count(); ++e) {
                        if (std::find(s.p4.begin(), s.p4.end(), e) != s.p4.end()) {
                            // shrink factor exp(+A_e xi_e^2)
                            arg.affine.add_term(
                                Monomial::of(g.schwinger(e))
                                    .times(Monomial::of(dot(g.momentum(e), g.momentum(e)))),
                                GaussRat(-1));
                        } else {
                            Poly m2 = rules.mass_squared(l.base[e]);
                            arg.affine += m2 * Poly(Monomial::of(g.schwinger(e)), GaussRat(1));
                        }
                    }
                    Term t;
                    t.coeff = Coefficient(Poly(sign * phase * ratio));
                    if (!arg.is_trivial()) t.exponential = arg;
                    Expression coeff = Expression::from_terms({t}) * coupling;
                    out += structural.scaled(coeff);
                }
            }
        }
    }
    return out;
}

Expression apply_ew(const FeynmanGraph& g, const CouplingRules& rules, const Routing& routing) {
    g.require_valid();
    if (!g.connected_on_internal()) throw DisconnectedGraph("apply_ew: graph is disconnected");
    ParametricIntegrand I = parametric_integrand(g);
    DifferentialOperator qcd = corolla_differential(g, corolla_qcd(g, default_color_token(g)));
    DifferentialOperator ew = corolla_differential(g, corolla_ew(g, rules));
    Expression total;
    for (const DifferentialOperator* op : {&qcd, &ew}) {
        for (const OperatorSummand& summand : op->summands) {
            Expression e = I.full;
            for (auto it = summand.derivatives.rbegin(); it != summand.derivatives.rend(); ++it)
                e = e.differentiate(it->first, it->second);
            Expression metrics = Expression::one();
            if (!summand.metrics.empty()) {
                Term t;
                t.coeff = Coefficient(1);
                t.tensors = summand.metrics;
                metrics = Expression::from_terms({t});
            }
            total += summand.prefactor * metrics * e;
        }
    }
    return total.contract_indices().substitute_momenta(routing);
}

}  // namespace corolla
