#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "corolla/symbols.hpp"

namespace corolla {

struct GraphParseError : std::runtime_error {
    int line;
    GraphParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct Violation {
    enum class Code { regularity, tadpole, rotation, attachment, duplicate };
    Code code;
    std::string message;
};

struct GraphInvalid : std::runtime_error {
    std::vector<Violation> violations;
    explicit GraphInvalid(std::vector<Violation> v);
};

struct HalfEdge {
    int vertex;
    int edge;
    friend bool operator==(HalfEdge a, HalfEdge b) { return a.vertex == b.vertex && a.edge == b.edge; }
    friend bool operator!=(HalfEdge a, HalfEdge b) { return !(a == b); }
    friend bool operator<(HalfEdge a, HalfEdge b) {
        return std::pair(a.vertex, a.edge) < std::pair(b.vertex, b.edge);
    }
};

/// 3-regular scalar-QFT Feynman graph with explicit rotation system.
/// Internal edges are oriented tail -> head; an external edge stores its
/// unique attachment vertex in `tail`.
class FeynmanGraph {
public:
    struct Edge {
        std::string name;
        bool external = false;
        int tail = -1;
        int head = -1;  // -1 for external edges
        std::optional<Symbol> mass;
    };

    /// Line-based text format: `v`, `e`, `x`, `rot`, `mass` directives,
    /// '#' comments.  Throws GraphParseError; the result is validated.
    static FeynmanGraph parse(const std::string& text);

    std::vector<Violation> validate() const;
    void require_valid() const;

    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int internal_edge_count() const { return internal_count_; }
    int external_edge_count() const { return edge_count() - internal_count_; }
    const std::string& vertex_name(int v) const { return vertex_names_[v]; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_by_name(const std::string& name) const;
    int vertex_by_name(const std::string& name) const;

    /// Edges incident to v, in rotation order.
    const std::vector<int>& rotation(int v) const { return rotation_[v]; }
    HalfEdge successor(HalfEdge h) const;
    HalfEdge predecessor(HalfEdge h) const;
    std::vector<HalfEdge> half_edges() const;
    std::vector<HalfEdge> half_edges_at(int v) const;

    /// +1 if v is the head of e, -1 if the tail, 0 if not incident.
    /// External edges count +1 at their attachment vertex.
    int incidence(int v, int e) const;
    bool incident(int v, int e) const { return incidence(v, e) != 0; }
    int other_end(int e, int v) const;
    /// Vertices of an edge (one entry for external edges).
    std::vector<int> endpoints(int e) const;
    std::vector<int> incident_edges(int v) const { return rotation_[v]; }

    bool connected_on_internal() const;

    Symbol schwinger(int e) const;   // A_<name>
    Slot momentum(int e) const;      // xi<name>
    Index lorentz(int e) const;      // mu<name>
    /// Mass symbol, or nullopt for a massless edge.
    std::optional<Symbol> mass(int e) const { return edges_[e].mass; }

    /// Builder interface used by tests and generators.
    int add_vertex(const std::string& name);
    int add_internal_edge(const std::string& name, int tail, int head);
    int add_external_edge(const std::string& name, int attach);
    void set_mass(int e, Symbol m) { edges_[e].mass = m; }
    /// Rotation defaults to input incidence order when not set explicitly.
    void set_rotation(int v, std::vector<int> edges);
    void finalize_rotations();

private:
    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> rotation_;
    int internal_count_ = 0;
};

}  // namespace corolla
