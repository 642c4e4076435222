#pragma once

#include <map>

#include "corolla/enumerate.hpp"
#include "corolla/expression.hpp"
#include "corolla/graph.hpp"
#include "corolla/parametric.hpp"

namespace corolla {

/// Half-edge variable of the Corolla ring: a_{h+}, a_{h-} or b_h, flavored
/// by its base half-edge.
struct HalfEdgeVar {
    enum class Kind { a_plus, a_minus, b };
    Kind kind;
    HalfEdge h;

    friend bool operator==(const HalfEdgeVar& x, const HalfEdgeVar& y) {
        return x.kind == y.kind && x.h == y.h;
    }
    friend bool operator<(const HalfEdgeVar& x, const HalfEdgeVar& y) {
        return std::tuple(x.h, static_cast<int>(x.kind)) <
               std::tuple(y.h, static_cast<int>(y.kind));
    }
};

using CorollaMonomial = std::vector<HalfEdgeVar>;  // sorted

/// Polynomial in half-edge variables with Expression-valued coefficients;
/// terms carry their ghost degree.
class CorollaPolynomial {
public:
    using Key = std::pair<int, CorollaMonomial>;

    void add(int ghost_degree, CorollaMonomial m, Expression coeff);
    const std::map<Key, Expression>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    CorollaPolynomial& operator+=(const CorollaPolynomial& o);
    CorollaPolynomial scaled(const Expression& factor) const;
    CorollaPolynomial scaled(const GaussRat& factor) const;
    /// Graded product (ghost degrees add, monomials concatenate).
    friend CorollaPolynomial operator*(const CorollaPolynomial& x, const CorollaPolynomial& y);
    static CorollaPolynomial unit(int ghost_degree = 0);

private:
    std::map<Key, Expression> terms_;
};

/// V_v = sum_{h at v} b_h (a_{h+} + a_{h-}).
CorollaPolynomial vertex_polynomial(const FeynmanGraph& g, int v);
/// G_C = sum_{k in {+,-}} prod_{v in C} a_{h(C,v) k}.
CorollaPolynomial ghost_cycle_polynomial(const FeynmanGraph& g, const Cycle& c);

CorollaPolynomial corolla_summand(const FeynmanGraph& g, int i);
/// C = sum_i (-1)^i C^i, the i = 0 term included.
CorollaPolynomial corolla(const FeynmanGraph& g);
/// C_QCD = i^{internal edges} gs^{vertices} color(Gamma) C.
CorollaPolynomial corolla_qcd(const FeynmanGraph& g, Symbol color_token);
Symbol default_color_token(const FeynmanGraph& g);

struct OperatorSummand {
    Expression prefactor;  // corolla coefficient times the signed 1/(2A_e) factors
    std::vector<std::pair<Slot, Index>> derivatives;
    std::vector<TensorAtom> metrics;
    int ghost_degree = 0;
};

struct DifferentialOperator {
    std::vector<OperatorSummand> summands;
};

/// a_{h k} -> -k eps_{h k} (2 A_{e(h_k)})^{-1} d/d xi_{e(h_k)}^{mu_{e(h)}},
/// b_h -> eta^{mu(e(h+)) mu(e(h-))}, with eps read from the incidence
/// matrix at the half-edge's vertex.
DifferentialOperator corolla_differential(const FeynmanGraph& g, const CorollaPolynomial& c);

struct AppliedDifferential {
    Expression full;          // D (P·body), contracted and substituted
    Expression gauge_factor;  // (D body)/body, the exponential divided out
    Expression p_remainder;   // parts where a derivative hit P; zero per the theory
};

AppliedDifferential apply_differential(const FeynmanGraph& g, const DifferentialOperator& d,
                                       const Routing& routing);

/// (iterated residue, iterated constant term) at A = 0 over the listed
/// Schwinger symbols.
std::pair<Expression, Expression> laurent_res_reg(const Expression& e,
                                                  const std::vector<Symbol>& edge_symbols);

/// Residue over the shrink set then regular part at zero over all other
/// edge parameters: the 4-valent sector obtained by shrinking.
Expression schwinger_res_reg(const FeynmanGraph& g, const Expression& e,
                             const std::vector<int>& shrink_edges);

}  // namespace corolla
