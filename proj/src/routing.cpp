#include "corolla/routing.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "corolla/enumerate.hpp"

namespace corolla {

namespace {

using Combo = std::map<Slot, GaussRat>;

void accumulate(Combo& into, const Combo& what, const GaussRat& scale) {
    for (auto& [s, c] : what) {
        auto [it, fresh] = into.emplace(s, c * scale);
        if (!fresh) it->second += c * scale;
    }
}

std::vector<std::pair<Slot, GaussRat>> to_entries(const Combo& combo) {
    std::vector<std::pair<Slot, GaussRat>> out;
    for (auto& [s, c] : combo)
        if (!c.is_zero()) out.push_back({s, c});
    return out;
}

}  // namespace

Routing automatic_routing(const FeynmanGraph& g) {
    g.require_valid();
    if (!g.connected_on_internal())
        throw DisconnectedGraph("automatic_routing: graph is disconnected");
    std::map<int, Combo> flow;  // per edge, in terms of independent q slots
    std::vector<int> externals;
    for (int e = 0; e < g.edge_count(); ++e)
        if (g.edge(e).external) externals.push_back(e);
    // all but the last external are independent; the last balances them
    for (size_t k = 0; k + 1 < externals.size(); ++k)
        flow[externals[k]] = {{slot("q" + g.edge(externals[k]).name), GaussRat(1)}};
    if (!externals.empty()) {
        Combo last;
        for (size_t k = 0; k + 1 < externals.size(); ++k)
            accumulate(last, flow[externals[k]], GaussRat(-1));
        flow[externals.back()] = std::move(last);
    }
    auto tree = spanning_trees(g).front();
    for (int e = 0; e < g.edge_count(); ++e)
        if (!g.edge(e).external && std::find(tree.begin(), tree.end(), e) == tree.end())
            flow[e] = {};
    // peel the tree: a vertex with a single unresolved edge determines it
    std::vector<char> resolved(g.edge_count(), 0);
    for (auto& [e, combo] : flow) resolved[e] = 1;
    for (bool progress = true; progress;) {
        progress = false;
        for (int v = 0; v < g.vertex_count(); ++v) {
            int open = -1, open_count = 0;
            for (int e : g.incident_edges(v))
                if (!resolved[e]) {
                    open = e;
                    ++open_count;
                }
            if (open_count != 1) continue;
            Combo sum;
            for (int e : g.incident_edges(v)) {
                if (e == open) continue;
                accumulate(sum, flow[e], GaussRat(static_cast<long>(g.incidence(v, e))));
            }
            Combo result;
            accumulate(result, sum, GaussRat(static_cast<long>(-g.incidence(v, open))));
            flow[open] = std::move(result);
            resolved[open] = 1;
            progress = true;
        }
    }
    Routing r;
    for (int e = 0; e < g.edge_count(); ++e) r.set(g.momentum(e), to_entries(flow[e]));
    return r;
}

Routing parse_routing(const std::string& text, const FeynmanGraph& g) {
    Routing r = automatic_routing(g);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw, edge_name, eq;
        if (!(ls >> kw)) continue;
        if (kw != "route") throw RoutingParseError(lineno, "expected 'route', got '" + kw + "'");
        if (!(ls >> edge_name >> eq) || eq != "=")
            throw RoutingParseError(lineno, "expected: route <edge-id> = <combination>");
        int e = g.edge_by_name(edge_name);
        if (e < 0) throw RoutingParseError(lineno, "unknown edge '" + edge_name + "'");
        Combo combo;
        GaussRat sign(1), coeff(1);
        bool have_coeff = false;
        std::string token;
        while (ls >> token) {
            if (token == "+") {
                sign = GaussRat(1);
            } else if (token == "-") {
                sign = GaussRat(-1);
            } else if (std::isdigit(static_cast<unsigned char>(token[0]))) {
                auto slash = token.find('/');
                long num = std::stol(token.substr(0, slash));
                long den = slash == std::string::npos ? 1 : std::stol(token.substr(slash + 1));
                coeff = GaussRat(num, den);
                have_coeff = true;
            } else if (token == "0") {
                have_coeff = true;
            } else {
                Combo unit{{slot(token), GaussRat(1)}};
                accumulate(combo, unit, sign * coeff);
                sign = GaussRat(1);
                coeff = GaussRat(1);
                have_coeff = false;
            }
        }
        if (have_coeff) throw RoutingParseError(lineno, "dangling coefficient in combination");
        r.set(g.momentum(e), to_entries(combo));
    }
    return r;
}

}  // namespace corolla
