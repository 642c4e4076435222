#pragma once

#include "corolla/enumerate.hpp"
#include "corolla/expression.hpp"
#include "corolla/graph.hpp"

namespace corolla {

struct SymanzikPair {
    Poly psi;
    Poly phi;  // quadratic in momentum slots via dot symbols
};

struct ParametricIntegrand {
    Expression prefactor;  // alpha * P_Gamma (alpha is the unit)
    Expression body;       // exp(-phi/psi - q) / psi^2
    Expression full;       // prefactor * body
};

/// psi = sum over spanning trees of prod_{e not in T} A_e (internal edges).
Poly first_symanzik(const FeynmanGraph& g);
/// phi = sum over spanning 2-forests of (sum tau(e) xi_e)^2 prod A_e.
Poly second_symanzik(const FeynmanGraph& g);
SymanzikPair symanzik_polynomials(const FeynmanGraph& g);

/// q = sum_ext xi_e^2 A_e + sum_all m_e^2 A_e.
Poly reduced_quadric(const FeynmanGraph& g);
/// P = prod_ext (xi_e^2 + m_e^2).
Poly external_propagators(const FeynmanGraph& g);

ParametricIntegrand parametric_integrand(const FeynmanGraph& g);

}  // namespace corolla
