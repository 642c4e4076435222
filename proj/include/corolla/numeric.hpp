#pragma once

#include <array>
#include <complex>
#include <map>

#include "corolla/expression.hpp"

namespace corolla {

/// Point at which an expression is evaluated numerically.  Dot symbols are
/// derived from the slot vectors (Euclidean metric); structure tokens
/// evaluate to 1 unless overridden via symbol_values.
struct NumericContext {
    std::map<Symbol, std::complex<double>> symbol_values;
    std::map<Slot, std::array<std::complex<double>, 4>> slot_vectors;
    std::map<Index, int> index_components;  // assignment for free indices
};

std::complex<double> eval(const Expression& e, const NumericContext& ctx);

}  // namespace corolla
