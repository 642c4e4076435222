#pragma once

#include <string>

#include "corolla/expression.hpp"

namespace corolla {

enum class Format { text, latex, json };

std::string render(const Expression& e, Format f);
std::string render(const Poly& p, Format f);

/// Inverse of render(..., Format::json).
Expression parse_expression_json(const std::string& text);

Format parse_format(const std::string& name);

}  // namespace corolla
