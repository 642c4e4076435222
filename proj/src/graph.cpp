#include "corolla/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace corolla {

GraphInvalid::GraphInvalid(std::vector<Violation> v)
    : std::runtime_error([&v] {
          std::string msg = "invalid graph";
          for (auto& violation : v) msg += "; " + violation.message;
          return msg;
      }()),
      violations(std::move(v)) {}

int FeynmanGraph::add_vertex(const std::string& name) {
    vertex_names_.push_back(name);
    rotation_.emplace_back();
    return vertex_count() - 1;
}

int FeynmanGraph::add_internal_edge(const std::string& name, int tail, int head) {
    Edge e;
    e.name = name;
    e.tail = tail;
    e.head = head;
    edges_.push_back(std::move(e));
    ++internal_count_;
    return edge_count() - 1;
}

int FeynmanGraph::add_external_edge(const std::string& name, int attach) {
    Edge e;
    e.name = name;
    e.external = true;
    e.tail = attach;
    edges_.push_back(std::move(e));
    return edge_count() - 1;
}

void FeynmanGraph::set_rotation(int v, std::vector<int> edges) {
    rotation_[v] = std::move(edges);
}

void FeynmanGraph::finalize_rotations() {
    for (int v = 0; v < vertex_count(); ++v) {
        if (!rotation_[v].empty()) continue;
        for (int e = 0; e < edge_count(); ++e)
            if (incident(v, e)) rotation_[v].push_back(e);
    }
}

int FeynmanGraph::edge_by_name(const std::string& name) const {
    for (int e = 0; e < edge_count(); ++e)
        if (edges_[e].name == name) return e;
    return -1;
}

int FeynmanGraph::vertex_by_name(const std::string& name) const {
    for (int v = 0; v < vertex_count(); ++v)
        if (vertex_names_[v] == name) return v;
    return -1;
}

HalfEdge FeynmanGraph::successor(HalfEdge h) const {
    const auto& rot = rotation_[h.vertex];
    auto it = std::find(rot.begin(), rot.end(), h.edge);
    size_t pos = static_cast<size_t>(it - rot.begin());
    return {h.vertex, rot[(pos + 1) % rot.size()]};
}

HalfEdge FeynmanGraph::predecessor(HalfEdge h) const {
    const auto& rot = rotation_[h.vertex];
    auto it = std::find(rot.begin(), rot.end(), h.edge);
    size_t pos = static_cast<size_t>(it - rot.begin());
    return {h.vertex, rot[(pos + rot.size() - 1) % rot.size()]};
}

std::vector<HalfEdge> FeynmanGraph::half_edges() const {
    std::vector<HalfEdge> out;
    for (int v = 0; v < vertex_count(); ++v)
        for (int e : rotation_[v]) out.push_back({v, e});
    return out;
}

std::vector<HalfEdge> FeynmanGraph::half_edges_at(int v) const {
    std::vector<HalfEdge> out;
    for (int e : rotation_[v]) out.push_back({v, e});
    return out;
}

int FeynmanGraph::incidence(int v, int e) const {
    const Edge& ed = edges_[e];
    if (ed.external) return ed.tail == v ? +1 : 0;
    if (ed.head == v) return +1;
    if (ed.tail == v) return -1;
    return 0;
}

int FeynmanGraph::other_end(int e, int v) const {
    const Edge& ed = edges_[e];
    if (ed.external) return -1;
    return ed.tail == v ? ed.head : ed.tail;
}

std::vector<int> FeynmanGraph::endpoints(int e) const {
    const Edge& ed = edges_[e];
    if (ed.external) return {ed.tail};
    return {ed.tail, ed.head};
}

bool FeynmanGraph::connected_on_internal() const {
    if (vertex_count() == 0) return false;
    std::vector<char> seen(vertex_count(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e = 0; e < edge_count(); ++e) {
            if (edges_[e].external || !incident(v, e)) continue;
            int w = other_end(e, v);
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

Symbol FeynmanGraph::schwinger(int e) const { return sym("A" + edges_[e].name); }
Slot FeynmanGraph::momentum(int e) const { return slot("xi" + edges_[e].name); }
Index FeynmanGraph::lorentz(int e) const { return idx("mu" + edges_[e].name); }

std::vector<Violation> FeynmanGraph::validate() const {
    std::vector<Violation> out;
    for (int e = 0; e < edge_count(); ++e) {
        const Edge& ed = edges_[e];
        if (!ed.external && ed.tail == ed.head)
            out.push_back({Violation::Code::tadpole,
                           "edge " + ed.name + " is a self-loop at vertex " +
                               vertex_names_[ed.tail]});
    }
    for (int v = 0; v < vertex_count(); ++v) {
        int valence = 0;
        for (int e = 0; e < edge_count(); ++e)
            if (incident(v, e)) ++valence;
        if (valence != 3)
            out.push_back({Violation::Code::regularity,
                           "vertex " + vertex_names_[v] + " has valence " +
                               std::to_string(valence) + ", expected 3"});
        std::vector<int> incident_list;
        for (int e = 0; e < edge_count(); ++e)
            if (incident(v, e)) incident_list.push_back(e);
        std::vector<int> rot = rotation_[v];
        std::sort(rot.begin(), rot.end());
        if (rot != incident_list)
            out.push_back({Violation::Code::rotation,
                           "rotation at vertex " + vertex_names_[v] +
                               " does not list exactly the incident edges"});
    }
    return out;
}

void FeynmanGraph::require_valid() const {
    auto v = validate();
    if (!v.empty()) throw GraphInvalid(std::move(v));
}

FeynmanGraph FeynmanGraph::parse(const std::string& text) {
    FeynmanGraph g;
    std::map<std::string, int> vertices, edges;
    std::map<int, std::vector<std::string>> pending_rotations;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_directive = false;
    auto need_vertex = [&](const std::string& name) {
        auto it = vertices.find(name);
        if (it == vertices.end()) throw GraphParseError(lineno, "unknown vertex '" + name + "'");
        return it->second;
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        saw_directive = true;
        if (kind == "v") {
            std::string name;
            if (!(ls >> name)) throw GraphParseError(lineno, "expected: v <id>");
            if (vertices.count(name)) throw GraphParseError(lineno, "duplicate vertex '" + name + "'");
            vertices[name] = g.add_vertex(name);
        } else if (kind == "e") {
            std::string name, a, b;
            if (!(ls >> name >> a >> b)) throw GraphParseError(lineno, "expected: e <id> <start> <end>");
            if (edges.count(name)) throw GraphParseError(lineno, "duplicate edge '" + name + "'");
            edges[name] = g.add_internal_edge(name, need_vertex(a), need_vertex(b));
        } else if (kind == "x") {
            std::string name, a;
            if (!(ls >> name >> a)) throw GraphParseError(lineno, "expected: x <id> <vertex>");
            if (edges.count(name)) throw GraphParseError(lineno, "duplicate edge '" + name + "'");
            edges[name] = g.add_external_edge(name, need_vertex(a));
        } else if (kind == "rot") {
            std::string v;
            if (!(ls >> v)) throw GraphParseError(lineno, "expected: rot <vertex> <edges...>");
            int vi = need_vertex(v);
            std::vector<std::string> names;
            std::string e;
            while (ls >> e) names.push_back(e);
            if (names.size() != 3) throw GraphParseError(lineno, "rotation must list 3 edges");
            pending_rotations[vi] = std::move(names);
        } else if (kind == "mass") {
            std::string e, m;
            if (!(ls >> e >> m)) throw GraphParseError(lineno, "expected: mass <edge-id> <symbol>");
            auto it = edges.find(e);
            if (it == edges.end()) throw GraphParseError(lineno, "unknown edge '" + e + "'");
            g.set_mass(it->second, sym(m));
        } else {
            throw GraphParseError(lineno, "unknown directive '" + kind + "'");
        }
        std::string trailing;
        if (ls >> trailing) throw GraphParseError(lineno, "trailing tokens: '" + trailing + "'");
    }
    if (!saw_directive) throw GraphParseError(lineno == 0 ? 1 : lineno, "empty graph file");
    for (auto& [v, names] : pending_rotations) {
        std::vector<int> rot;
        for (auto& name : names) {
            auto it = edges.find(name);
            if (it == edges.end())
                throw GraphParseError(lineno, "rotation at '" + g.vertex_name(v) +
                                                  "' references unknown edge '" + name + "'");
            rot.push_back(it->second);
        }
        g.set_rotation(v, std::move(rot));
    }
    g.finalize_rotations();
    return g;
}

}  // namespace corolla
