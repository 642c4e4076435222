#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "corolla/corolla_poly.hpp"
#include "corolla/electroweak.hpp"
#include "corolla/enumerate.hpp"
#include "corolla/parametric.hpp"
#include "corolla/render.hpp"
#include "corolla/routing.hpp"

namespace {

using namespace corolla;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitComputation = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FeynmanGraph load_graph(const std::string& path) {
    FeynmanGraph g = FeynmanGraph::parse(read_file(path));
    g.require_valid();
    return g;
}

Routing load_routing(const FeynmanGraph& g, const std::string& path) {
    if (path.empty()) return automatic_routing(g);
    return parse_routing(read_file(path), g);
}

CouplingRules load_rules(const std::string& path) {
    if (path.empty()) return CouplingRules::standard_model();
    return CouplingRules::parse(read_file(path));
}

std::string edge_list(const FeynmanGraph& g, const std::vector<int>& edges) {
    std::string out = "{";
    for (size_t k = 0; k < edges.size(); ++k)
        out += (k ? "," : "") + g.edge(edges[k]).name;
    return out + "}";
}

void cmd_symanzik(const FeynmanGraph& g, Format f) {
    SymanzikPair s = symanzik_polynomials(g);
    std::cout << "psi = " << render(s.psi, f) << "\n";
    std::cout << "phi = " << render(s.phi, f) << "\n";
}

void cmd_integrand(const FeynmanGraph& g, Format f) {
    std::cout << render(parametric_integrand(g).full, f) << "\n";
}

std::string corolla_text(const FeynmanGraph& g, const CorollaPolynomial& c, Format f) {
    if (c.is_zero()) return "0";
    std::string out;
    auto& table = SymbolTable::instance();
    for (auto& [key, coeff] : c.terms()) {
        std::string mono;
        for (const HalfEdgeVar& v : key.second) {
            if (!mono.empty()) mono += (f == Format::latex) ? " " : "*";
            std::string he = "(" + g.vertex_name(v.h.vertex) + "," + g.edge(v.h.edge).name + ")";
            switch (v.kind) {
                case HalfEdgeVar::Kind::a_plus:
                    mono += (f == Format::latex) ? "a_{" + he + "+}" : "a+" + he;
                    break;
                case HalfEdgeVar::Kind::a_minus:
                    mono += (f == Format::latex) ? "a_{" + he + "-}" : "a-" + he;
                    break;
                case HalfEdgeVar::Kind::b:
                    mono += (f == Format::latex) ? "b_{" + he + "}" : "b" + he;
                    break;
            }
        }
        std::string cs = render(coeff, f == Format::json ? Format::text : f);
        std::string entry = (cs == "1") ? mono : cs + ((f == Format::latex) ? " " : "*") + mono;
        if (!out.empty()) out += " + ";
        out += entry;
    }
    (void)table;
    return out;
}

void cmd_enumerate(const FeynmanGraph& g) {
    auto trees = spanning_trees(g);
    std::cout << "spanning trees: " << trees.size() << "\n";
    for (auto& t : trees) std::cout << "  " << edge_list(g, t) << "\n";
    auto forests = spanning_2forests(g);
    std::cout << "spanning 2-forests: " << forests.size() << "\n";
    for (auto& fo : forests) std::cout << "  " << edge_list(g, fo.edges) << "\n";
    auto cycles = all_cycles(g);
    std::cout << "cycles: " << cycles.size() << "\n";
    for (auto& c : cycles) std::cout << "  " << edge_list(g, c.edges) << "\n";
    auto factors = two_factors(g);
    std::cout << "2-factors: " << factors.size() << "\n";
    for (auto& tf : factors) std::cout << "  " << edge_list(g, tf.edges) << "\n";
}

void cmd_ew_gauge(const FeynmanGraph& g, Format f) {
    auto labelings = gauge_boson_labelings(g);
    std::cout << "labelings: " << labelings.size() << "\n";
    for (auto& l : labelings) {
        std::cout << "  W=" << edge_list(g, l.w_factor.edges) << " Z=" << edge_list(g, l.z_edges)
                  << " A=" << edge_list(g, l.a_edges) << " sym=" << l.sym << " iso=" << l.iso
                  << "\n";
    }
    std::cout << "J = " << render(j_factor(g), f) << "\n";
}

void cmd_ew_scalar(const FeynmanGraph& g, const CouplingRules& rules, int ghost_order, Format f) {
    std::vector<std::vector<Cycle>> tuples;
    if (ghost_order == 0)
        tuples.push_back({});
    else
        tuples = disjoint_cycle_tuples(g, ghost_order);
    for (auto& tuple : tuples) {
        std::cout << "ghost cycles:";
        for (auto& c : tuple) std::cout << " " << edge_list(g, c.edges);
        if (tuple.empty()) std::cout << " none";
        std::cout << "\n";
        for (const ScalarSets& s : scalar_sets(g, tuple)) {
            std::cout << "  P_HG=" << edge_list(g, s.p_hg) << " P4=" << edge_list(g, s.p4);
            for (auto& [e, pair] : s.h2)
                std::cout << " H2(" << g.edge(e).name << ")={(" << g.vertex_name(pair.first.vertex)
                          << "," << g.edge(pair.first.edge).name << "),("
                          << g.vertex_name(pair.second.vertex) << ","
                          << g.edge(pair.second.edge).name << ")}";
            std::cout << "\n";
            for (const ParticleLabeling& l : enumerate_labelings(g, s, rules)) {
                std::cout << "    L:";
                for (int e = 0; e < g.edge_count(); ++e)
                    if (!l.base[e].empty())
                        std::cout << " " << g.edge(e).name << "=" << l.base[e];
                std::cout << " sym=" << l.sym << " iso=" << l.iso << " coupling="
                          << render(coupling_product(g, l, s, rules),
                                    f == Format::json ? Format::text : f)
                          << "\n";
            }
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corolla: Symanzik polynomials, Corolla polynomials and differentials,\n"
                 "and electroweak labelings over 3-regular scalar Feynman graphs"};
    app.require_subcommand(1);

    std::string graph_path, routing_path, rules_path, format_name = "text";
    int ghost_order = -1;
    std::vector<std::string> shrink_names;

    auto add_common = [&](CLI::App* cmd, bool with_routing = false, bool with_rules = false) {
        cmd->add_option("graph", graph_path, "graph file")->required();
        cmd->add_option("--format", format_name, "text|latex|json");
        if (with_routing) cmd->add_option("--routing", routing_path, "routing file");
        if (with_rules) cmd->add_option("--rules", rules_path, "coupling rule file");
        return cmd;
    };

    auto* symanzik = add_common(app.add_subcommand("symanzik", "print psi and phi"));
    auto* integrand = add_common(app.add_subcommand("integrand", "print I(Gamma)"));
    auto* corolla_cmd =
        add_common(app.add_subcommand("corolla", "print the Corolla polynomial C or C^i"));
    corolla_cmd->add_option("--ghost-order", ghost_order, "print C^i for this i");
    auto* diff = add_common(
        app.add_subcommand("diff", "print the gauge factor of D_QCD(Gamma) I(Gamma)"), true);
    auto* resreg =
        add_common(app.add_subcommand("resreg", "Res/Reg extraction over a shrink set"), true);
    resreg->add_option("--shrink", shrink_names, "internal edge ids to shrink");
    auto* ew_gauge =
        add_common(app.add_subcommand("ew-gauge", "print J and the gauge labeling table"));
    auto* ew_scalar = add_common(
        app.add_subcommand("ew-scalar", "print scalar sets and labelings with couplings"), false,
        true);
    ew_scalar->add_option("--ghost-order", ghost_order, "ghost loop count (default 0)");
    auto* ew_apply =
        add_common(app.add_subcommand("ew-apply", "print (D_QCD + D_EW) I(Gamma)"), true, true);
    auto* enumerate_cmd =
        add_common(app.add_subcommand("enumerate", "spanning structures with counts"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitUsage : 0;
    }

    try {
        Format f = parse_format(format_name);
        if (symanzik->parsed()) {
            cmd_symanzik(load_graph(graph_path), f);
        } else if (integrand->parsed()) {
            cmd_integrand(load_graph(graph_path), f);
        } else if (corolla_cmd->parsed()) {
            FeynmanGraph g = load_graph(graph_path);
            CorollaPolynomial c =
                ghost_order >= 0 ? corolla_summand(g, ghost_order) : corolla::corolla(g);
            std::cout << corolla_text(g, c, f) << "\n";
        } else if (diff->parsed()) {
            FeynmanGraph g = load_graph(graph_path);
            DifferentialOperator d =
                corolla_differential(g, corolla_qcd(g, default_color_token(g)));
            AppliedDifferential a = apply_differential(g, d, load_routing(g, routing_path));
            std::cout << render(a.gauge_factor, f) << "\n";
        } else if (resreg->parsed()) {
            FeynmanGraph g = load_graph(graph_path);
            DifferentialOperator d =
                corolla_differential(g, corolla_qcd(g, default_color_token(g)));
            AppliedDifferential a = apply_differential(g, d, load_routing(g, routing_path));
            std::vector<int> shrink;
            for (auto& name : shrink_names) {
                int e = g.edge_by_name(name);
                if (e < 0) throw std::runtime_error("unknown edge in --shrink: " + name);
                shrink.push_back(e);
            }
            std::cout << render(schwinger_res_reg(g, a.full, shrink), f) << "\n";
        } else if (ew_gauge->parsed()) {
            cmd_ew_gauge(load_graph(graph_path), f);
        } else if (ew_scalar->parsed()) {
            cmd_ew_scalar(load_graph(graph_path), load_rules(rules_path),
                          ghost_order < 0 ? 0 : ghost_order, f);
        } else if (ew_apply->parsed()) {
            FeynmanGraph g = load_graph(graph_path);
            std::cout << render(
                             apply_ew(g, load_rules(rules_path), load_routing(g, routing_path)), f)
                      << "\n";
        } else if (enumerate_cmd->parsed()) {
            cmd_enumerate(load_graph(graph_path));
        }
    } catch (const GraphParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const RoutingParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const RuleParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const GraphInvalid& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    return 0;
}
