#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corolla/automorphism.hpp"
#include "corolla/corolla_poly.hpp"
#include "corolla/enumerate.hpp"
#include "corolla/expression.hpp"
#include "corolla/graph.hpp"

namespace corolla {

struct RuleParseError : std::runtime_error {
    int line;
    RuleParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct MissingRule : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Data-driven vertex admissibility and coupling values.  Keys are sorted
/// multisets of particle labels as seen incoming at the vertex; charged
/// labels carry their sign (W+, W-, phi+, phi-).
class CouplingRules {
public:
    /// `rule <valence> <label>[,<label>...] = <coupling>` and
    /// `mass <label> <symbol>` lines; '#' comments.
    static CouplingRules parse(const std::string& text);
    /// Electroweak rules appearing in the source examples: WWZ, WWA and the
    /// four scalar-gauge-gauge couplings, with W/Z/Goldstone masses.
    static CouplingRules standard_model();

    const Expression* lookup(std::vector<std::string> labels) const;
    /// m^2 of a base label as a polynomial (zero for massless labels).
    Poly mass_squared(const std::string& base_label) const;
    bool empty() const { return rules_.empty(); }
    const std::map<std::vector<std::string>, Expression>& rules() const { return rules_; }

private:
    std::map<std::vector<std::string>, Expression> rules_;
    std::map<std::string, Symbol> masses_;
};

struct GaugeLabeling {
    TwoFactor w_factor;
    std::vector<int> z_edges;
    std::vector<int> a_edges;
    long sym = 1;
    long iso = 1;
};

std::vector<GaugeLabeling> gauge_boson_labelings(const FeynmanGraph& g);

/// J(Gamma; m_W, m_Z) in the simplified (ratio-free) form.
Expression j_factor(const FeynmanGraph& g);
/// The theorem form carrying sym(Gamma)/(sym iso) per summand.
Expression j_factor_theorem_form(const FeynmanGraph& g);

/// Scalar candidate structure for one ghost tuple: a Higgs/Goldstone edge
/// set, one admissible shrink set, and the gauge half-edge pairs of the
/// shrink edges.
struct ScalarSets {
    std::vector<Cycle> ghosts;
    std::vector<int> p_hg;
    std::vector<int> p4;
    std::map<int, std::pair<HalfEdge, HalfEdge>> h2;
};

/// The two adjacent half-edges outside p_hg when exactly two of the four
/// are outside; nullopt otherwise (covers the 4-scalar case).
std::optional<std::pair<HalfEdge, HalfEdge>> h2_set(const FeynmanGraph& g, int edge,
                                                    const std::vector<int>& p_hg);

/// All P_H/G over the ghost complement with their admissible shrink sets.
/// `excluded` reserves edges that may never shrink (fermion hook; empty
/// in this boson-only setting).
std::vector<ScalarSets> scalar_sets(const FeynmanGraph& g, const std::vector<Cycle>& ghost_tuple,
                                    const std::vector<int>& excluded = {});
/// The admissible shrink candidates alone (powerset generator support).
std::vector<int> shrink_candidates(const FeynmanGraph& g, const std::vector<int>& p_hg,
                                   const std::vector<Cycle>& ghost_tuple,
                                   const std::vector<int>& excluded = {});

struct ParticleLabeling {
    std::vector<std::string> base;  // per edge: W/Z/A/h/phi/phiZ, "" for shrunk edges
    long orientations = 1;          // consistent charge orientations of this class
    long sym = 1;
    long iso = 1;
};

std::vector<ParticleLabeling> enumerate_labelings(const FeynmanGraph& g, const ScalarSets& s,
                                                  const CouplingRules& rules);

Expression coupling_product(const FeynmanGraph& g, const ParticleLabeling& l, const ScalarSets& s,
                            const CouplingRules& rules);

/// C_EW as displayed, with the global i^{vertices + internal edges} phase
/// of the J-factor convention applied to every summand.
CorollaPolynomial corolla_ew(const FeynmanGraph& g, const CouplingRules& rules);

/// (D_QCD + D_EW) I(Gamma), contracted and substituted.
Expression apply_ew(const FeynmanGraph& g, const CouplingRules& rules, const Routing& routing);

}  // namespace corolla
