#pragma once

#include <string>

#include "corolla/expression.hpp"
#include "corolla/graph.hpp"

namespace corolla {

struct RoutingParseError : std::runtime_error {
    int line;
    RoutingParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/// Spanning-tree routing of the physical external momenta: every external
/// edge except the last carries an independent slot q<name>, the last
/// balances them, internal non-tree edges carry zero and tree edges the
/// flow forced by conservation.
Routing automatic_routing(const FeynmanGraph& g);

/// `route <edge-id> = <combination>` lines override the automatic choice;
/// combinations are signed rational multiples of slot names, e.g.
/// `route 1 = q3 - 1/2 q4`.
Routing parse_routing(const std::string& text, const FeynmanGraph& g);

}  // namespace corolla
